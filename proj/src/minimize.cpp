#include "mriu/minimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <omp.h>

#include "mriu/errors.hpp"
#include "mriu/random.hpp"

namespace mriu {

LocalUnitarySet LocalUnitarySet::identity(const Dims& dims) {
  LocalUnitarySet u;
  for (auto d : dims) {
    u.factors.push_back(ComplexMatrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)));
  }
  return u;
}

double LocalUnitarySet::unitarity_residual() const {
  double r = 0.0;
  for (const auto& f : factors) r = std::max(r, mriu::unitarity_residual(f));
  return r;
}

StateTensor apply_local(const LocalUnitarySet& u, const StateTensor& c) {
  if (u.factors.size() != c.order()) throw DimensionError("local unitary set arity mismatch");
  StateTensor out = c;
  for (std::size_t k = 0; k < c.order(); ++k) out = kmode_product(u.factors[k], out, k);
  return out;
}

ComplexMatrix unitary_mapping_to_e0(const Eigen::VectorXcd& v) {
  const double nv = v.norm();
  if (!(nv > 0.0)) throw DomainError("cannot map the zero vector");
  const auto d = v.size();
  // Columns of Q span C^d with Q(:,0) proportional to v; Q^dagger maps v onto e_0.
  ComplexMatrix m = ComplexMatrix::Identity(d, d);
  m.col(0) = v / nv;
  Eigen::HouseholderQR<ComplexMatrix> qr(m);
  ComplexMatrix q = qr.householderQ();
  const Complex r00 = qr.matrixQR()(0, 0);
  q.col(0) *= r00 / std::abs(r00);  // restore the exact phase of v
  return q.adjoint();
}

namespace {

struct Walker {
  const StateTensor& c;
  RenyiOrder q;
  const RiuOptions& opts;
  std::vector<Complex> cur, trial;
  std::vector<double> probs;
  ComplexMatrix step;

  Walker(const StateTensor& t, RenyiOrder order, const RiuOptions& o)
      : c(t), q(order), opts(o), cur(t.size()), trial(t.size()), probs(t.size()) {}

  double objective(std::span<const Complex> v) {
    squared_moduli(v, probs);
    return renyi(probs, q);
  }

  // Returns (best value, converged); factors are updated in place.
  std::pair<double, bool> run(LocalUnitarySet& u, RngStream& rng) {
    const StateTensor start = apply_local(u, c);
    std::copy(start.coeffs().begin(), start.coeffs().end(), cur.begin());
    double f = objective(cur);
    double eps = opts.eps_start;
    int rejections = 0;
    const std::size_t n = c.order();
    for (int s = 0; s < opts.max_steps; ++s) {
      if (eps < opts.eps_min) return {f, true};
      const std::size_t k = n == 1 ? 0 : rng.index(n);
      unitary_step_into(c.dims()[k], eps, rng, step);
      kmode_apply(step, cur, trial, c.dims(), k);
      const double g = objective(trial);
      if (g < f) {
        std::swap(cur, trial);
        u.factors[k] = step * u.factors[k];
        f = g;
        rejections = 0;
      } else if (++rejections >= opts.plateau) {
        eps *= opts.decay;
        rejections = 0;
      }
    }
    return {f, eps < opts.eps_min};
  }
};

}  // namespace

RiuResult riu_minimize(const StateTensor& c, RenyiOrder q, const RiuOptions& opts) {
  RiuResult result;
  result.q = q;
  if (q.value() == 0.0) {
    ParafacOptions po = opts.parafac;
    po.seed = opts.seed;
    po.stream = opts.stream;
    const auto est = rank_estimate(c, 1e-6, po);
    result.value = std::log(static_cast<double>(std::max<std::size_t>(est.rank, 1)));
    result.optimizer = LocalUnitarySet::identity(c.dims());
    result.trace = {result.value};
    result.converged = !est.heuristic;
    return result;
  }

  const int starts = std::max(1, opts.restarts);
  const RngStream master(opts.seed, opts.stream);
  std::vector<LocalUnitarySet> sets(static_cast<std::size_t>(starts));
  std::vector<double> values(static_cast<std::size_t>(starts));
  std::vector<char> converged(static_cast<std::size_t>(starts));

  // Structured starts are built serially: they involve decompositions with
  // their own deterministic streams.
  sets[0] = LocalUnitarySet::identity(c.dims());
  if (starts > 1) {
    const auto h = hosvd(c);
    for (const auto& f : h.factors) sets[1].factors.push_back(f.adjoint());
  }
  if (starts > 2) {
    ParafacOptions po = opts.parafac;
    po.seed = master.substream(0x5EED).seed();
    po.stream = opts.stream;
    const CPModel m = parafac_als(c, 1, po);
    for (std::size_t k = 0; k < c.order(); ++k) {
      sets[2].factors.push_back(unitary_mapping_to_e0(m.factors[k].col(0)));
    }
  }

#pragma omp parallel for schedule(dynamic) if (!omp_in_parallel() && starts > 1)
  for (int s = 0; s < starts; ++s) {
    RngStream rng = master.substream(static_cast<std::uint64_t>(s));
    auto& u = sets[static_cast<std::size_t>(s)];
    if (s >= 3) {
      for (auto d : c.dims()) u.factors.push_back(haar_unitary(d, rng));
    }
    Walker w(c, q, opts);
    const auto [v, conv] = w.run(u, rng);
    values[static_cast<std::size_t>(s)] = v;
    converged[static_cast<std::size_t>(s)] = conv ? 1 : 0;
  }

  std::size_t best = 0;
  for (std::size_t s = 1; s < values.size(); ++s) {
    if (values[s] < values[best]) best = s;
  }
  result.optimizer = std::move(sets[best]);
  // Recompute from the factors so the value matches the returned optimizer exactly.
  std::vector<double> p(c.size());
  const StateTensor t = apply_local(result.optimizer, c);
  squared_moduli(t.coeffs(), p);
  result.value = renyi(p, q);
  result.trace = std::move(values);
  result.converged = converged[best] != 0;
  return result;
}

bool is_permutation_invariant(const StateTensor& c, double tol) {
  const std::size_t n = c.order();
  // Adjacent transpositions generate S_n.
  for (std::size_t a = 0; a + 1 < n; ++a) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::swap(perm[a], perm[a + 1]);
    if (c.dims()[a] != c.dims()[a + 1]) return false;
    if (frobenius_distance(c, permute_axes(c, perm)) > tol) return false;
  }
  return true;
}

SymmetricResult riu_symmetric(const StateTensor& c, RenyiOrder q) {
  for (auto d : c.dims()) {
    if (d != 2) throw DomainError("riu_symmetric needs a qubit state");
  }
  if (!is_permutation_invariant(c)) throw DomainError("riu_symmetric needs a permutation-invariant state");

  const std::size_t n = c.order();
  std::vector<Complex> a(c.size()), b(c.size());
  std::vector<double> probs(c.size());
  auto f = [&](double p) {
    const ComplexMatrix u = u_p(std::clamp(p, 0.0, 1.0));
    std::copy(c.coeffs().begin(), c.coeffs().end(), a.begin());
    for (std::size_t k = 0; k < n; ++k) {
      kmode_apply(u, a, b, c.dims(), k);
      std::swap(a, b);
    }
    squared_moduli(a, probs);
    return renyi(probs, q);
  };

  constexpr int kGrid = 1000;
  double best_p = 0.0;
  double best_v = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kGrid; ++i) {
    const double p = static_cast<double>(i) / kGrid;
    const double v = f(p);
    if (v < best_v) {
      best_v = v;
      best_p = p;
    }
  }

  double lo = std::max(0.0, best_p - 1.0 / kGrid);
  double hi = std::min(1.0, best_p + 1.0 / kGrid);
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - invphi * (hi - lo);
  double x2 = lo + invphi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > 1e-8) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = f(x2);
    }
  }
  const double pm = 0.5 * (lo + hi);
  const double vm = f(pm);
  if (vm < best_v) return {vm, pm};
  return {best_v, best_p};
}

SeparableOverlap lambda_max_sep(const StateTensor& c, const RiuOptions& opts) {
  c.require_normalized();
  const RiuResult r = riu_minimize(c, RenyiOrder::infinity(), opts);
  SeparableOverlap out;
  out.lambda_max = std::min(1.0, std::exp(-r.value));
  out.geometric = 1.0 - out.lambda_max;
  out.fubini_study = std::acos(std::sqrt(out.lambda_max));
  ParafacOptions po = opts.parafac;
  po.seed = RngStream(opts.seed, opts.stream).substream(0x5EED).seed();
  po.stream = opts.stream;
  out.parafac_overlap = closest_product_state(c, po).overlap;
  return out;
}

AnalyticValue analytic_riu(std::string_view name, RenyiOrder order) {
  const double q = order.value();
  const bool inf = order.is_infinite();
  const std::string s(name);
  auto missing = [&]() {
    return DomainError("no closed form recorded for " + s + " at q = " + order.to_string());
  };
  if (s == "GHZ" || s == "GHZ4") {
    if (q == 0.0 && s == "GHZ4") throw missing();
    return {std::log(2.0), false};
  }
  if (s == "W") {
    if (q == 0.0 || q == 1.0) return {std::log(3.0), false};
    if (inf) return {-std::log(4.0 / 9.0), false};
    throw missing();
  }
  if (s == "D(4,2)") {
    if (inf) return {-std::log(3.0 / 8.0), false};
    if (q == 1.0) return {std::log(8.0 / std::sqrt(3.0)), false};
    if (q > 0.0) {
      const double arg = std::pow(2.0, 1.0 - 3.0 * q) * std::pow(3.0, -q) * (3.0 + std::pow(3.0, 2.0 * q));
      return {std::log(arg) / (1.0 - q), false};
    }
    throw missing();
  }
  if (s == "HD") {
    // Attained in the HD basis itself: p = (1/6 x4, 1/3).
    if (inf) return {std::log(3.0), false};
    if (q == 1.0) return {std::log(6.0) - std::log(2.0) / 3.0, false};
    if (q > 0.0) return {std::log((4.0 + std::pow(2.0, q)) / std::pow(6.0, q)) / (1.0 - q), false};
    throw missing();
  }
  if (s == "C1" || s == "C2" || s == "C3") {
    if (q > 0.0) return {std::log(4.0), true};
    throw missing();
  }
  if (s == "HS") {
    if (q == 2.0) return {std::log(6.0), false};
    if (inf) return {-std::log(2.0 / 9.0), true};
    throw missing();
  }
  if (s == "Phi4") {
    if (inf) return {-std::log(1.0 / 3.0), false};
    throw missing();
  }
  throw missing();
}

}  // namespace mriu

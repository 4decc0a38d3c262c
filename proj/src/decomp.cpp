#include "mriu/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <omp.h>

#include "mriu/errors.hpp"

namespace mriu {

namespace {

// Digits of every flat index, laid out as digits[flat * n + axis].
std::vector<std::size_t> digit_table(const Dims& dims) {
  const std::size_t n = dims.size();
  const std::size_t total = dims_product(dims);
  std::vector<std::size_t> table(total * n);
  std::vector<std::size_t> idx(n, 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::copy(idx.begin(), idx.end(), table.begin() + static_cast<std::ptrdiff_t>(flat * n));
    for (std::size_t l = n; l-- > 0;) {
      if (++idx[l] < dims[l]) break;
      idx[l] = 0;
    }
  }
  return table;
}

struct AlsWorkspace {
  const StateTensor& c;
  std::vector<std::size_t> digits;
  double norm;

  explicit AlsWorkspace(const StateTensor& t)
      : c(t), digits(digit_table(t.dims())), norm(frobenius(t)) {}

  std::size_t order() const { return c.order(); }

  // M(i_k, r) = sum over the other digits of C_i prod_{l != k} conj(A_l(i_l, r))
  ComplexMatrix contract_except(const std::vector<ComplexMatrix>& a, std::size_t k) const {
    const std::size_t n = order();
    const auto rank = a[0].cols();
    ComplexMatrix m = ComplexMatrix::Zero(a[k].rows(), rank);
    for (std::size_t flat = 0; flat < c.size(); ++flat) {
      const Complex v = c[flat];
      if (v == Complex(0.0)) continue;
      const std::size_t* dg = digits.data() + flat * n;
      for (Eigen::Index r = 0; r < rank; ++r) {
        Complex prod = v;
        for (std::size_t l = 0; l < n; ++l) {
          if (l != k) prod *= std::conj(a[l](static_cast<Eigen::Index>(dg[l]), r));
        }
        m(static_cast<Eigen::Index>(dg[k]), r) += prod;
      }
    }
    return m;
  }

  double residual(const std::vector<ComplexMatrix>& a) const {
    const std::size_t n = order();
    const auto rank = a[0].cols();
    double s = 0.0;
    for (std::size_t flat = 0; flat < c.size(); ++flat) {
      const std::size_t* dg = digits.data() + flat * n;
      Complex model = 0.0;
      for (Eigen::Index r = 0; r < rank; ++r) {
        Complex prod = 1.0;
        for (std::size_t l = 0; l < n; ++l) prod *= a[l](static_cast<Eigen::Index>(dg[l]), r);
        model += prod;
      }
      s += std::norm(c[flat] - model);
    }
    return std::sqrt(s);
  }
};

// Column norms pushed onto the last factor; the model is unchanged.
void balance_columns(std::vector<ComplexMatrix>& a) {
  const std::size_t n = a.size();
  for (Eigen::Index r = 0; r < a[0].cols(); ++r) {
    for (std::size_t l = 0; l + 1 < n; ++l) {
      const double nr = a[l].col(r).norm();
      if (nr > 0.0) {
        a[l].col(r) /= nr;
        a[n - 1].col(r) *= nr;
      }
    }
  }
}

double max_weight(const std::vector<ComplexMatrix>& a) {
  double w = 0.0;
  for (Eigen::Index r = 0; r < a[0].cols(); ++r) {
    double prod = 1.0;
    for (const auto& f : a) prod *= f.col(r).norm();
    w = std::max(w, prod);
  }
  return w;
}

CPModel to_model(const AlsWorkspace& ws, std::vector<ComplexMatrix> a, CPModel run) {
  const std::size_t n = a.size();
  const auto rank = a[0].cols();
  std::vector<double> weights(static_cast<std::size_t>(rank), 1.0);
  for (Eigen::Index r = 0; r < rank; ++r) {
    for (std::size_t l = 0; l < n; ++l) {
      const double nr = a[l].col(r).norm();
      weights[static_cast<std::size_t>(r)] *= nr;
      if (nr > 0.0) {
        a[l].col(r) /= nr;
      } else {
        a[l].col(r).setZero();
        a[l](0, r) = 1.0;
      }
    }
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(rank));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    return weights[static_cast<std::size_t>(x)] > weights[static_cast<std::size_t>(y)];
  });
  run.rank = static_cast<std::size_t>(rank);
  run.weights.clear();
  run.factors.assign(n, ComplexMatrix());
  for (std::size_t l = 0; l < n; ++l) run.factors[l].resize(a[l].rows(), rank);
  for (Eigen::Index j = 0; j < rank; ++j) {
    const auto src = order[static_cast<std::size_t>(j)];
    run.weights.push_back(weights[static_cast<std::size_t>(src)]);
    for (std::size_t l = 0; l < n; ++l) run.factors[l].col(j) = a[l].col(src);
  }
  run.residual = frobenius_distance(ws.c, cp_reconstruct(run, ws.c.dims()));
  return run;
}

CPModel run_als(const AlsWorkspace& ws, std::vector<ComplexMatrix> a, const ParafacOptions& opts) {
  const std::size_t n = ws.order();
  CPModel run;
  const double scale = std::max(ws.norm, std::numeric_limits<double>::min());
  double prev = ws.residual(a);
  for (int it = 1; it <= opts.max_iters; ++it) {
    for (std::size_t k = 0; k < n; ++k) {
      const auto rank = a[k].cols();
      ComplexMatrix gram = ComplexMatrix::Ones(rank, rank);
      for (std::size_t l = 0; l < n; ++l) {
        if (l == k) continue;
        // Gamma(s, r) = sum_i A_l(i, s) conj(A_l(i, r))
        gram = gram.cwiseProduct(a[l].transpose() * a[l].conjugate());
      }
      const ComplexMatrix m = ws.contract_except(a, k);
      a[k] = m * gram.completeOrthogonalDecomposition().pseudoInverse();
    }
    balance_columns(a);
    const double res = ws.residual(a);
    run.residual_trace.push_back(res);
    run.iterations = it;
    if (max_weight(a) > opts.divergence_factor * scale) {
      run.degenerate = true;
      break;
    }
    if (std::abs(prev - res) <= opts.tol * scale || res <= opts.tol * scale) {
      run.converged = true;
      break;
    }
    prev = res;
  }
  return to_model(ws, std::move(a), std::move(run));
}

std::vector<ComplexMatrix> random_factors(const Dims& dims, std::size_t rank, RngStream& rng) {
  std::vector<ComplexMatrix> a;
  for (auto d : dims) {
    ComplexMatrix f(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(rank));
    for (Eigen::Index r = 0; r < f.cols(); ++r)
      for (Eigen::Index i = 0; i < f.rows(); ++i) f(i, r) = rng.complex_normal();
    a.push_back(std::move(f));
  }
  return a;
}

std::vector<ComplexMatrix> hosvd_factors(const StateTensor& c, std::size_t rank, RngStream& rng) {
  const auto h = hosvd(c);
  std::vector<ComplexMatrix> a;
  for (std::size_t l = 0; l < c.order(); ++l) {
    const auto d = static_cast<Eigen::Index>(c.dims()[l]);
    ComplexMatrix f(d, static_cast<Eigen::Index>(rank));
    for (Eigen::Index r = 0; r < f.cols(); ++r) {
      if (r < d) {
        f.col(r) = h.factors[l].col(r);
      } else {
        for (Eigen::Index i = 0; i < d; ++i) f(i, r) = rng.complex_normal();
      }
    }
    a.push_back(std::move(f));
  }
  // Seed the weights from the core's diagonal so the first sweep starts near the HOSVD fit.
  const std::size_t n = c.order();
  for (Eigen::Index r = 0; r < static_cast<Eigen::Index>(rank); ++r) {
    bool diag = true;
    std::vector<std::size_t> idx(n);
    for (std::size_t l = 0; l < n; ++l) {
      idx[l] = static_cast<std::size_t>(r);
      diag = diag && static_cast<std::size_t>(r) < c.dims()[l];
    }
    if (diag) a[n - 1].col(r) *= h.core.at(idx);
  }
  return a;
}

}  // namespace

HosvdResult hosvd(const StateTensor& c) {
  HosvdResult out;
  StateTensor core = c;
  for (std::size_t k = 0; k < c.order(); ++k) {
    const ComplexMatrix m = unfold(c, k);
    Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU);
    if (svd.info() != Eigen::Success) throw NumericalError("hosvd: SVD did not converge");
    const auto d = m.rows();
    std::vector<double> sv(static_cast<std::size_t>(d), 0.0);
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
      sv[static_cast<std::size_t>(i)] = svd.singularValues()(i);
    }
    out.factors.push_back(svd.matrixU());
    out.kmode_sv.push_back(std::move(sv));
    core = kmode_product(out.factors.back().adjoint(), core, k);
  }
  out.core = std::move(core);
  return out;
}

StateTensor hosvd_reconstruct(const HosvdResult& h) {
  StateTensor c = h.core;
  for (std::size_t k = 0; k < h.factors.size(); ++k) c = kmode_product(h.factors[k], c, k);
  return c;
}

StateTensor cp_reconstruct(const CPModel& m, const Dims& dims) {
  if (m.factors.size() != dims.size()) throw DimensionError("CP model order mismatch");
  auto out = StateTensor::zeros(dims);
  const auto table = digit_table(dims);
  const std::size_t n = dims.size();
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    Complex s = 0.0;
    for (std::size_t r = 0; r < m.rank; ++r) {
      Complex prod = m.weights[r];
      for (std::size_t l = 0; l < n; ++l) {
        prod *= m.factors[l](static_cast<Eigen::Index>(table[flat * n + l]), static_cast<Eigen::Index>(r));
      }
      s += prod;
    }
    out[flat] = s;
  }
  return out;
}

CPModel parafac_als_from(const StateTensor& c, std::vector<ComplexMatrix> init,
                         const ParafacOptions& opts) {
  if (init.size() != c.order()) throw DimensionError("need one initial factor per axis");
  for (std::size_t l = 0; l < init.size(); ++l) {
    if (static_cast<std::size_t>(init[l].rows()) != c.dims()[l] || init[l].cols() != init[0].cols()) {
      throw DimensionError("initial factor shape mismatch");
    }
  }
  AlsWorkspace ws(c);
  return run_als(ws, std::move(init), opts);
}

CPModel parafac_als(const StateTensor& c, std::size_t rank, const ParafacOptions& opts) {
  if (rank == 0) throw DomainError("PARAFAC rank must be >= 1");
  const AlsWorkspace ws(c);
  const RngStream master(opts.seed, opts.stream);
  const int starts = 1 + std::max(0, opts.restarts);
  std::vector<CPModel> runs(static_cast<std::size_t>(starts));

#pragma omp parallel for schedule(dynamic) if (!omp_in_parallel() && starts > 1)
  for (int s = 0; s < starts; ++s) {
    RngStream rng = master.substream(static_cast<std::uint64_t>(s));
    auto init = s == 0 ? hosvd_factors(c, rank, rng) : random_factors(c.dims(), rank, rng);
    runs[static_cast<std::size_t>(s)] = run_als(ws, std::move(init), opts);
    runs[static_cast<std::size_t>(s)].start_index = s;
  }

  std::size_t best = 0;
  auto better = [](const CPModel& x, const CPModel& y) {
    if (x.degenerate != y.degenerate) return !x.degenerate;
    return x.residual < y.residual;
  };
  for (std::size_t s = 1; s < runs.size(); ++s) {
    if (better(runs[s], runs[best])) best = s;
  }
  return std::move(runs[best]);
}

ProductApprox closest_product_state(const StateTensor& c, const ParafacOptions& opts) {
  c.require_normalized();
  const CPModel m = parafac_als(c, 1, opts);
  ProductApprox out;
  auto state = StateTensor::zeros(c.dims());
  for (std::size_t l = 0; l < c.order(); ++l) out.factors.emplace_back(m.factors[l].col(0));
  CPModel unit = m;
  unit.weights = {1.0};
  out.state = cp_reconstruct(unit, c.dims());
  out.overlap = std::min(1.0, std::norm(inner(c, out.state)));
  out.residual = m.residual;
  return out;
}

std::size_t max_tensor_rank(const Dims& dims) {
  std::size_t total = dims_product(dims);
  std::size_t removable = 0;
  for (auto d : dims) removable += d * (d - 1) / 2;
  return total > removable ? total - removable : 1;
}

RankEstimate rank_estimate(const StateTensor& c, double tol, const ParafacOptions& opts) {
  if (!(tol > 0.0)) throw DomainError("rank tolerance must be positive");
  const double scale = frobenius(c);
  const std::size_t rmax = max_tensor_rank(c.dims());
  RankEstimate out{rmax, std::numeric_limits<double>::infinity(), true};
  if (scale == 0.0) return {0, 0.0, false};
  for (std::size_t r = 1; r <= rmax; ++r) {
    const CPModel m = parafac_als(c, r, opts);
    if (m.degenerate) continue;
    const double spread = m.weights.back() > 0.0 ? m.weights.front() / m.weights.back()
                                                  : std::numeric_limits<double>::infinity();
    if (spread > 1e6) continue;
    if (m.residual <= tol * scale) return {r, m.residual, false};
    if (r == rmax) out.residual = m.residual;
  }
  return out;
}

}  // namespace mriu

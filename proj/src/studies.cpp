#include "mriu/studies.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <ostream>

#include <json.hpp>

#include "mriu/decomp.hpp"
#include "mriu/errors.hpp"
#include "mriu/invariants.hpp"
#include "mriu/moments.hpp"
#include "mriu/random.hpp"

namespace mriu {

namespace {

// Runs f(i) for i in [0, n). Each index owns its output slot, so the result
// is independent of scheduling. The lowest-index exception is rethrown.
template <typename F>
void for_trials(std::size_t n, Execution exec, F&& f) {
  if (exec == Execution::Serial) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::exception_ptr first;
  std::size_t first_index = n;
  std::mutex m;
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      f(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard lock(m);
      if (static_cast<std::size_t>(i) < first_index) {
        first_index = static_cast<std::size_t>(i);
        first = std::current_exception();
      }
    }
  }
  if (first) std::rethrow_exception(first);
}

double max_prob(std::span<const Complex> c) {
  double m = 0.0;
  for (const auto& z : c) m = std::max(m, std::norm(z));
  return m;
}

double renyi_of(const StateTensor& c, RenyiOrder q) {
  std::vector<double> p(c.size());
  squared_moduli(c.coeffs(), p);
  return renyi(p, q);
}

double quantile_sorted(const std::vector<double>& s, double f) {
  const double pos = f * static_cast<double>(s.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, s.size() - 1);
  return s[lo] + (pos - static_cast<double>(lo)) * (s[hi] - s[lo]);
}

RngStream trial_stream(std::uint64_t seed, std::uint64_t stream, std::size_t i) {
  return RngStream(seed, stream).substream(i);
}

}  // namespace

Statistic parse_statistic(const std::string& name) {
  if (name == "raw") return Statistic::RenyiRaw;
  if (name == "hosvd") return Statistic::RenyiHosvd;
  if (name == "riu") return Statistic::RenyiRiu;
  if (name == "tangle") return Statistic::Tangle;
  if (name == "tangle2") return Statistic::TangleSq;
  if (name == "hyperT") return Statistic::HyperT;
  if (name == "lambda_max") return Statistic::LambdaMax;
  throw DomainError("unknown statistic '" + name + "'");
}

std::string to_string(Statistic s) {
  switch (s) {
    case Statistic::RenyiRaw: return "raw";
    case Statistic::RenyiHosvd: return "hosvd";
    case Statistic::RenyiRiu: return "riu";
    case Statistic::Tangle: return "tangle";
    case Statistic::TangleSq: return "tangle2";
    case Statistic::HyperT: return "hyperT";
    case Statistic::LambdaMax: return "lambda_max";
  }
  return "unknown";
}

std::vector<HistogramBin> histogram(const std::vector<double>& values, std::size_t bins) {
  if (values.empty()) return {};
  std::vector<double> s = values;
  std::sort(s.begin(), s.end());
  double lo = s.front();
  double hi = s.back();
  if (hi - lo <= 0.0) {
    lo -= 0.5;
    hi += 0.5;
    bins = 1;
  } else if (bins == 0) {
    const double iqr = quantile_sorted(s, 0.75) - quantile_sorted(s, 0.25);
    const double h = 2.0 * iqr / std::cbrt(static_cast<double>(s.size()));
    bins = h > 0.0 ? static_cast<std::size_t>(std::ceil((hi - lo) / h)) : 1;
    bins = std::clamp<std::size_t>(bins, 1, 1000);
  }
  const double width = (hi - lo) / static_cast<double>(bins);
  std::vector<HistogramBin> out(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    out[b].left = lo + static_cast<double>(b) * width;
    out[b].right = b + 1 == bins ? hi : lo + static_cast<double>(b + 1) * width;
  }
  for (double v : s) {
    auto b = static_cast<std::size_t>((v - lo) / width);
    out[std::min(b, bins - 1)].count++;
  }
  const auto n = static_cast<double>(s.size());
  for (auto& b : out) b.density = static_cast<double>(b.count) / (n * (b.right - b.left));
  return out;
}

double EnsembleReport::standard_error() const {
  return samples > 1 ? stddev / std::sqrt(static_cast<double>(samples - 1)) : 0.0;
}

EnsembleReport summarize(std::string statistic, std::vector<double> values, std::uint64_t seed,
                         std::size_t bins) {
  EnsembleReport r;
  r.statistic = std::move(statistic);
  r.samples = values.size();
  r.seed = seed;
  if (!values.empty()) {
    const auto n = static_cast<double>(values.size());
    double s1 = 0.0, s2 = 0.0;
    for (double v : values) {
      s1 += v;
      s2 += v * v;
    }
    r.mean = s1 / n;
    r.second_moment = s2 / n;
    r.stddev = std::sqrt(std::max(0.0, r.second_moment - r.mean * r.mean));
  }
  r.histogram = histogram(values, bins);
  r.values = std::move(values);
  return r;
}

EnsembleReport ensemble_stat(const EnsembleConfig& cfg, Execution exec) {
  if (cfg.samples == 0) throw DomainError("samples must be >= 1");
  const Dims dims(cfg.n, cfg.d);
  const bool qubits3 = cfg.n == 3 && cfg.d == 2;
  const bool qubits4 = cfg.n == 4 && cfg.d == 2;
  if ((cfg.statistic == Statistic::Tangle || cfg.statistic == Statistic::TangleSq) && !qubits3) {
    throw DomainError("tangle statistics need n = 3, d = 2");
  }
  if (cfg.statistic == Statistic::HyperT && !qubits4) throw DomainError("hyperT needs n = 4, d = 2");

  std::vector<double> values(cfg.samples);
  for_trials(cfg.samples, exec, [&](std::size_t i) {
    RngStream rng = trial_stream(cfg.seed, 0, i);
    const StateTensor c = haar_state(dims, rng);
    double v = 0.0;
    switch (cfg.statistic) {
      case Statistic::RenyiRaw: v = renyi_of(c, cfg.q); break;
      case Statistic::RenyiHosvd: v = renyi_of(hosvd(c).core, cfg.q); break;
      case Statistic::RenyiRiu: {
        RiuOptions o = cfg.riu;
        o.seed = cfg.seed;
        o.stream = i + 1;
        v = riu_minimize(c, cfg.q, o).value;
        break;
      }
      case Statistic::Tangle: v = tangle(c); break;
      case Statistic::TangleSq: v = std::pow(tangle(c), 2); break;
      case Statistic::HyperT: v = hyper_t(c); break;
      case Statistic::LambdaMax: v = max_prob(c.coeffs()); break;
    }
    values[i] = v;
  });
  std::string name = to_string(cfg.statistic);
  if (cfg.statistic == Statistic::RenyiRaw || cfg.statistic == Statistic::RenyiHosvd ||
      cfg.statistic == Statistic::RenyiRiu) {
    name += "_q" + cfg.q.to_string();
  }
  return summarize(std::move(name), std::move(values), cfg.seed, cfg.bins);
}

std::vector<RiuTableColumn> riu_table(std::size_t n, std::size_t d, const std::vector<RenyiOrder>& qs,
                                      std::size_t samples, const RiuOptions& opts, std::uint64_t seed,
                                      Execution exec) {
  if (samples == 0) throw DomainError("samples must be >= 1");
  const Dims dims(n, d);
  const std::size_t nq = qs.size();
  std::vector<double> raw(nq * samples), core(nq * samples), riu(nq * samples);
  for_trials(samples, exec, [&](std::size_t i) {
    RngStream rng = trial_stream(seed, 0, i);
    const StateTensor c = haar_state(dims, rng);
    const StateTensor a = hosvd(c).core;
    for (std::size_t j = 0; j < nq; ++j) {
      raw[j * samples + i] = renyi_of(c, qs[j]);
      core[j * samples + i] = renyi_of(a, qs[j]);
      RiuOptions o = opts;
      o.seed = seed;
      o.stream = i + 1;
      riu[j * samples + i] = riu_minimize(c, qs[j], o).value;
    }
  });
  std::vector<RiuTableColumn> out;
  auto slice = [&](const std::vector<double>& v, std::size_t j) {
    return std::vector<double>(v.begin() + static_cast<std::ptrdiff_t>(j * samples),
                               v.begin() + static_cast<std::ptrdiff_t>((j + 1) * samples));
  };
  for (std::size_t j = 0; j < nq; ++j) {
    const std::string tag = "_q" + qs[j].to_string();
    out.push_back({qs[j], summarize("raw" + tag, slice(raw, j), seed),
                   summarize("hosvd" + tag, slice(core, j), seed), summarize("riu" + tag, slice(riu, j), seed)});
  }
  return out;
}

double schmidt_bound(const StateTensor& c) {
  if (c.order() != 3) throw DimensionError("schmidt_bound needs a tripartite state");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < 3; ++k) {
    Eigen::JacobiSVD<ComplexMatrix> svd(unfold(c, k));
    const double s = svd.singularValues()(0);
    best = std::min(best, s * s);
  }
  return best;
}

LineFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("loglog_fit needs >= 2 matching points");
  const auto m = static_cast<double>(x.size());
  std::vector<double> lx(x.size()), ly(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0 && y[i] > 0.0)) throw DomainError("loglog_fit needs positive data");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / m;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  if (x.size() > 2) {
    double ssr = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) ssr += std::pow(ly[i] - f.intercept - f.slope * lx[i], 2);
    f.slope_se = std::sqrt(ssr / (m - 2.0) / sxx);
  }
  return f;
}

ScalingReport scaling_study(const ScalingConfig& cfg, Execution exec) {
  if (cfg.dmin < 2 || cfg.dmax < cfg.dmin) throw DomainError("scaling_study needs 2 <= dmin <= dmax");
  if (cfg.samples < 2) throw DomainError("scaling_study needs >= 2 samples per d");
  ScalingReport rep;
  rep.seed = cfg.seed;
  const std::size_t ns = cfg.samples;
  for (std::size_t d = cfg.dmin; d <= cfg.dmax; ++d) {
    const Dims dims(3, d);
    const bool with_lu = d <= cfg.lu_dmax;
    std::vector<double> lmax(ns), lh(ns), lp(ns), sb(ns), llu(with_lu ? ns : 0);
    std::vector<char> bad(ns, 0);
    for_trials(ns, exec, [&](std::size_t i) {
      RngStream rng = trial_stream(cfg.seed, d, i);
      const StateTensor c = haar_state(dims, rng);
      lmax[i] = max_prob(c.coeffs());
      lh[i] = max_prob(hosvd(c).core.coeffs());
      sb[i] = schmidt_bound(c);
      RiuOptions o = cfg.riu;
      o.parafac = cfg.parafac;
      o.seed = cfg.seed;
      o.stream = (static_cast<std::uint64_t>(d) << 32) | i;
      if (with_lu) {
        const auto sep = lambda_max_sep(c, o);
        lp[i] = sep.parafac_overlap;
        llu[i] = sep.lambda_max;
        bad[i] = (lp[i] > llu[i] + 1e-9 || llu[i] > sb[i] + 1e-6) ? 1 : 0;
      } else {
        ParafacOptions po = cfg.parafac;
        po.seed = RngStream(o.seed, o.stream).substream(0x5EED).seed();
        po.stream = o.stream;
        lp[i] = closest_product_state(c, po).overlap;
        bad[i] = lp[i] > sb[i] + 1e-6 ? 1 : 0;
      }
    });
    auto mean_se = [&](const std::vector<double>& v) {
      const auto s = summarize("", v, 0, 1);
      return std::pair{s.mean, s.standard_error()};
    };
    ScalingRecord r;
    r.d = d;
    std::tie(r.lambda_max, r.lambda_max_se) = mean_se(lmax);
    std::tie(r.lambda_h, r.lambda_h_se) = mean_se(lh);
    std::tie(r.lambda_p, r.lambda_p_se) = mean_se(lp);
    std::tie(r.schmidt, r.schmidt_se) = mean_se(sb);
    if (with_lu) {
      const auto [m, se] = mean_se(llu);
      r.lambda_lu = m;
      r.lambda_lu_se = se;
    }
    r.ordering_violations = static_cast<std::size_t>(std::count(bad.begin(), bad.end(), 1));
    rep.records.push_back(r);
  }
  std::vector<double> ds, a, h, p, s;
  for (const auto& r : rep.records) {
    ds.push_back(static_cast<double>(r.d));
    a.push_back(r.lambda_max);
    h.push_back(r.lambda_h);
    p.push_back(r.lambda_p);
    s.push_back(r.schmidt);
  }
  if (ds.size() >= 2) {
    rep.lambda_max_fit = loglog_fit(ds, a);
    rep.lambda_h_fit = loglog_fit(ds, h);
    rep.lambda_p_fit = loglog_fit(ds, p);
    rep.schmidt_fit = loglog_fit(ds, s);
  }
  return rep;
}

BetaFitReport beta_fit_report(const std::vector<double>& tau, std::size_t bins) {
  if (tau.size() < 1000) throw DomainError("beta_fit_report needs >= 1000 samples");
  const auto n = static_cast<double>(tau.size());
  double m1 = 0.0, m2 = 0.0;
  for (double t : tau) {
    m1 += t;
    m2 += t * t;
  }
  m1 /= n;
  m2 /= n;
  BetaFitReport r;
  std::tie(r.alpha_hat, r.beta_hat) = beta_fit(m1, m2);
  std::vector<double> tau2(tau.size());
  std::transform(tau.begin(), tau.end(), tau2.begin(), [](double t) { return t * t; });
  r.tau_hist = histogram(tau, bins);
  r.tau2_hist = histogram(tau2, bins);
  for (const auto& b : r.tau_hist) r.tau_density.push_back(beta_pdf(0.5 * (b.left + b.right), r.alpha_exact, r.beta_exact));
  for (const auto& b : r.tau2_hist) {
    const double x = 0.5 * (b.left + b.right);
    r.tau2_density.push_back(x > 0.0 && x <= 1.0 ? beta_pdf_tau2(x) : 0.0);
  }
  return r;
}

void write_histogram_csv(std::ostream& os, const std::vector<HistogramBin>& bins) {
  os << "bin_left,bin_right,count,density\n";
  os.precision(17);
  for (const auto& b : bins) os << b.left << ',' << b.right << ',' << b.count << ',' << b.density << '\n';
}

std::string report_to_json(const EnsembleReport& r, bool include_values) {
  nlohmann::json j;
  j["statistic"] = r.statistic;
  j["samples"] = r.samples;
  j["mean"] = r.mean;
  j["second_moment"] = r.second_moment;
  j["stddev"] = r.stddev;
  j["seed"] = r.seed;
  auto& h = j["histogram"] = nlohmann::json::array();
  for (const auto& b : r.histogram) h.push_back({b.left, b.right, b.count, b.density});
  if (include_values) j["values"] = r.values;
  return j.dump(2);
}

std::string scaling_to_json(const ScalingReport& r) {
  nlohmann::json j;
  j["seed"] = r.seed;
  auto& recs = j["records"] = nlohmann::json::array();
  for (const auto& x : r.records) {
    nlohmann::json e = {{"d", x.d},
                        {"lambda_max", x.lambda_max},
                        {"lambda_max_se", x.lambda_max_se},
                        {"lambda_h", x.lambda_h},
                        {"lambda_h_se", x.lambda_h_se},
                        {"lambda_p", x.lambda_p},
                        {"lambda_p_se", x.lambda_p_se},
                        {"schmidt_bound", x.schmidt},
                        {"schmidt_bound_se", x.schmidt_se},
                        {"ordering_violations", x.ordering_violations}};
    if (x.lambda_lu) {
      e["lambda_lu"] = *x.lambda_lu;
      e["lambda_lu_se"] = *x.lambda_lu_se;
    }
    recs.push_back(e);
  }
  auto fit = [](const LineFit& f) {
    return nlohmann::json{{"slope", f.slope}, {"slope_se", f.slope_se}, {"intercept", f.intercept}};
  };
  j["fits"] = {{"lambda_max", fit(r.lambda_max_fit)},
               {"lambda_h", fit(r.lambda_h_fit)},
               {"lambda_p", fit(r.lambda_p_fit)},
               {"schmidt_bound", fit(r.schmidt_fit)}};
  return j.dump(2);
}

void write_scaling_csv(std::ostream& os, const ScalingReport& r) {
  os << "d,lambda_max,lambda_h,lambda_p,lambda_lu,schmidt_bound,eg_max,eg_h,eg_p,eg_lu\n";
  os.precision(12);
  for (const auto& x : r.records) {
    os << x.d << ',' << x.lambda_max << ',' << x.lambda_h << ',' << x.lambda_p << ',';
    if (x.lambda_lu) os << *x.lambda_lu;
    os << ',' << x.schmidt << ',' << 1.0 - x.lambda_max << ',' << 1.0 - x.lambda_h << ',' << 1.0 - x.lambda_p
       << ',';
    if (x.lambda_lu) os << 1.0 - *x.lambda_lu;
    os << '\n';
  }
}

}  // namespace mriu

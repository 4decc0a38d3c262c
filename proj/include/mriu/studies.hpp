#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mriu/entropy.hpp"
#include "mriu/minimize.hpp"
#include "mriu/tensor.hpp"

namespace mriu {

enum class Execution { Parallel, Serial };

enum class Statistic {
  RenyiRaw,    ///< S_q of the state in the computational basis
  RenyiHosvd,  ///< S_q of the HOSVD core
  RenyiRiu,    ///< riu_minimize estimate
  Tangle,      ///< tau (3 qubits)
  TangleSq,    ///< tau^2
  HyperT,      ///< T (4 qubits)
  LambdaMax,   ///< largest component of p
};

/// Accepts raw, hosvd, riu, tangle, tangle2, hyperT, lambda_max.
Statistic parse_statistic(const std::string& name);
std::string to_string(Statistic s);

struct HistogramBin {
  double left = 0.0;
  double right = 0.0;
  std::size_t count = 0;
  double density = 0.0;
};

/// bins = 0 selects Freedman-Diaconis (capped at 1000 bins).
std::vector<HistogramBin> histogram(const std::vector<double>& values, std::size_t bins = 0);

struct EnsembleReport {
  std::string statistic;
  std::size_t samples = 0;
  double mean = 0.0;
  double second_moment = 0.0;
  double stddev = 0.0;
  std::vector<HistogramBin> histogram;
  std::uint64_t seed = 0;
  /// Per-trial values in trial order.
  std::vector<double> values;

  double standard_error() const;
};

/// Summary statistics and histogram of a sample.
EnsembleReport summarize(std::string statistic, std::vector<double> values, std::uint64_t seed,
                         std::size_t bins = 0);

struct EnsembleConfig {
  std::size_t n = 3;
  std::size_t d = 2;
  Statistic statistic = Statistic::RenyiRaw;
  RenyiOrder q{1.0};
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
  std::size_t bins = 0;
  /// Optimizer settings for RenyiRiu (seed/stream are set per trial).
  RiuOptions riu{};
};

/// Trial i draws its state from RngStream(seed, 0).substream(i), so results
/// do not depend on the execution mode or thread count.
EnsembleReport ensemble_stat(const EnsembleConfig& cfg, Execution exec = Execution::Parallel);

struct RiuTableColumn {
  RenyiOrder q{1.0};
  EnsembleReport raw;
  EnsembleReport hosvd;
  EnsembleReport riu;
};

/// Raw, HOSVD-core and RIU-minimized S_q on the same Haar states for every q.
std::vector<RiuTableColumn> riu_table(std::size_t n, std::size_t d, const std::vector<RenyiOrder>& qs,
                                      std::size_t samples, const RiuOptions& opts, std::uint64_t seed,
                                      Execution exec = Execution::Parallel);

/// min over the three cuts i|jk of the largest squared singular value of
/// unfold(C, i). Throws DimensionError unless C has 3 axes.
double schmidt_bound(const StateTensor& c);

struct ScalingRecord {
  std::size_t d = 0;
  double lambda_max = 0.0, lambda_max_se = 0.0;
  double lambda_h = 0.0, lambda_h_se = 0.0;
  double lambda_p = 0.0, lambda_p_se = 0.0;
  double schmidt = 0.0, schmidt_se = 0.0;
  std::optional<double> lambda_lu, lambda_lu_se;
  /// Samples violating lambda_P <= lambda_LU <= Schmidt bound + 1e-6.
  std::size_t ordering_violations = 0;
};

struct LineFit {
  double slope = 0.0;
  double slope_se = 0.0;
  double intercept = 0.0;
};

/// Unweighted least squares of log y against log x.
LineFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y);

struct ScalingReport {
  std::vector<ScalingRecord> records;
  LineFit lambda_max_fit, lambda_h_fit, lambda_p_fit, schmidt_fit;
  std::uint64_t seed = 0;
};

struct ScalingConfig {
  std::size_t dmin = 2;
  std::size_t dmax = 8;
  std::size_t samples = 2000;
  /// lambda_LU is computed for d <= lu_dmax (0 disables it).
  std::size_t lu_dmax = 3;
  ParafacOptions parafac{};
  RiuOptions riu{};
  std::uint64_t seed = 1;
};

/// Three-qudit ensembles for d in [dmin, dmax].
ScalingReport scaling_study(const ScalingConfig& cfg, Execution exec = Execution::Parallel);

struct BetaFitReport {
  double alpha_hat = 0.0;
  double beta_hat = 0.0;
  double alpha_exact = 31.0 / 17.0;
  double beta_exact = 62.0 / 17.0;
  std::vector<HistogramBin> tau_hist;
  std::vector<HistogramBin> tau2_hist;
  /// Analytic densities at the bin centres.
  std::vector<double> tau_density;
  std::vector<double> tau2_density;
};

/// Throws DomainError for fewer than 1000 samples or zero variance.
BetaFitReport beta_fit_report(const std::vector<double>& tau, std::size_t bins = 0);

/// bin_left,bin_right,count,density
void write_histogram_csv(std::ostream& os, const std::vector<HistogramBin>& bins);
std::string report_to_json(const EnsembleReport& r, bool include_values = false);
std::string scaling_to_json(const ScalingReport& r);
/// d,lambda_max,...,E_G proxies 1 - <lambda>
void write_scaling_csv(std::ostream& os, const ScalingReport& r);

}  // namespace mriu

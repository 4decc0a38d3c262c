#pragma once

#include <cstdint>
#include <vector>

#include "mriu/random.hpp"
#include "mriu/tensor.hpp"

namespace mriu {

struct HosvdResult {
  /// U^(k): left singular vectors of unfold(C, k), columns ordered by sigma.
  std::vector<ComplexMatrix> factors;
  /// A = C x_1 U^(1)^dagger x_2 ... x_n U^(n)^dagger.
  StateTensor core;
  /// sigma^(k), non-increasing, padded with zeros to length d_k.
  std::vector<std::vector<double>> kmode_sv;
};

/// Throws NumericalError if an SVD fails.
HosvdResult hosvd(const StateTensor& c);

/// Undo the core transform: C = A x_1 U^(1) ... x_n U^(n).
StateTensor hosvd_reconstruct(const HosvdResult& h);

struct ParafacOptions {
  int max_iters = 2000;
  /// Converged when the residual changes by less than tol * ||C|| per sweep.
  double tol = 1e-12;
  /// Random starts; one HOSVD-seeded start is always added.
  int restarts = 8;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  /// A run whose largest weight exceeds this multiple of ||C|| is flagged
  /// degenerate and stopped (diverging components, border-rank behavior).
  double divergence_factor = 1e3;
};

struct CPModel {
  std::size_t rank = 0;
  /// lambda, non-increasing.
  std::vector<double> weights;
  /// d_l x r, unit-norm columns.
  std::vector<ComplexMatrix> factors;
  /// d_P = || C - sum_k lambda_k u^(1)_k o ... o u^(n)_k ||
  double residual = 0.0;
  bool converged = false;
  bool degenerate = false;
  int iterations = 0;
  /// Residual after each sweep of the selected run.
  std::vector<double> residual_trace;
  /// Start that produced the model (0 = HOSVD-seeded).
  int start_index = 0;
};

/// Full tensor of a CP model.
StateTensor cp_reconstruct(const CPModel& m, const Dims& dims);

/// Alternating least squares, best of (1 HOSVD-seeded + opts.restarts random)
/// starts. Non-degenerate runs are preferred; ties go to the lowest start
/// index. Restarts run in parallel when called outside a parallel region.
CPModel parafac_als(const StateTensor& c, std::size_t rank, const ParafacOptions& opts = {});

/// One ALS run from explicit initial factors (d_l x r each). Exposed for
/// tests of per-sweep monotonicity.
CPModel parafac_als_from(const StateTensor& c, std::vector<ComplexMatrix> init,
                         const ParafacOptions& opts);

struct ProductApprox {
  StateTensor state;                     ///< |psi_P>, unit norm, fully separable
  std::vector<Eigen::VectorXcd> factors; ///< unit vectors, one per party
  double overlap = 0.0;                  ///< lambda_P = |<psi|psi_P>|^2
  double residual = 0.0;                 ///< rank-1 d_P
};

/// Rank-1 PARAFAC; requires a normalized state.
ProductApprox closest_product_state(const StateTensor& c, const ParafacOptions& opts = {});

/// prod d - sum d_k (d_k - 1) / 2
std::size_t max_tensor_rank(const Dims& dims);

struct RankEstimate {
  std::size_t rank = 0;
  double residual = 0.0;
  /// No r <= R_max reached the tolerance; rank reported as R_max.
  bool heuristic = false;
};

/// Smallest r <= R_max whose best non-degenerate ALS fit has d_P <= tol ||C||
/// and weight spread lambda_max / lambda_min <= 1e6.
RankEstimate rank_estimate(const StateTensor& c, double tol = 1e-6, const ParafacOptions& opts = {});

}  // namespace mriu

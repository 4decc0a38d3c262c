#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "mriu/decomp.hpp"
#include "mriu/entropy.hpp"
#include "mriu/tensor.hpp"

namespace mriu {

/// V_1 (x) ... (x) V_n, factor k acting on axis k.
struct LocalUnitarySet {
  std::vector<ComplexMatrix> factors;

  static LocalUnitarySet identity(const Dims& dims);
  /// Largest unitarity residual over the factors.
  double unitarity_residual() const;
};

/// Applies every factor as a k-mode product; throws DimensionError on shape mismatch.
StateTensor apply_local(const LocalUnitarySet& u, const StateTensor& c);

/// Random-walk schedule: each proposal left-multiplies one randomly chosen
/// factor by exp(i eps G). Improvements are accepted; after `plateau`
/// consecutive rejections eps shrinks by `decay`; the walk ends when eps
/// falls below eps_min or after max_steps proposals.
struct RiuOptions {
  int restarts = 16;
  int max_steps = 20000;
  double eps_start = 0.5;
  double eps_min = 1e-4;
  double decay = 0.95;
  int plateau = 50;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  /// Used for the product-state start and for the q = 0 rank route.
  ParafacOptions parafac{};
};

struct RiuResult {
  double value = 0.0;
  RenyiOrder q{1.0};
  LocalUnitarySet optimizer;
  /// Best value reached by each restart, in start order.
  std::vector<double> trace;
  bool converged = false;
};

/// Upper bound on min_{U_loc} S_q(p(U_loc C)). Starts, in order: identity,
/// HOSVD factors, the rank-1 PARAFAC product basis, then Haar-random factors
/// (total = opts.restarts, at least one). q = 0 returns log(rank_estimate).
/// Lowest value wins; ties go to the lowest start index.
RiuResult riu_minimize(const StateTensor& c, RenyiOrder q, const RiuOptions& opts = {});

struct SymmetricResult {
  double value = 0.0;
  double p = 1.0;
};

/// min over p in [0,1] of S_q(p(U(p)^{(x)n} C)): scan at step 1e-3, then
/// golden-section refinement to 1e-8. Requires an n-qubit state invariant
/// under all qubit permutations (DomainError otherwise).
SymmetricResult riu_symmetric(const StateTensor& c, RenyiOrder q);

bool is_permutation_invariant(const StateTensor& c, double tol = 1e-10);

struct SeparableOverlap {
  double lambda_max = 0.0;      ///< exp(-S_inf^RIU estimate)
  double geometric = 0.0;       ///< E_G = 1 - lambda_max
  double fubini_study = 0.0;    ///< arccos(sqrt(lambda_max))
  double parafac_overlap = 0.0; ///< lambda_P, a lower bound on lambda_max
};

SeparableOverlap lambda_max_sep(const StateTensor& c, const RiuOptions& opts = {});

/// Unitary whose first row is v^dagger (so V v = |v| e_0); v must be nonzero.
ComplexMatrix unitary_mapping_to_e0(const Eigen::VectorXcd& v);

struct AnalyticValue {
  double value = 0.0;
  /// Numerically supported conjecture rather than a derived closed form.
  bool conjecture = false;
};

/// Recorded closed forms: GHZ, GHZ4 (log 2 for q > 0), W (q = 1, inf),
/// D(4,2) (q > 0), HD (q > 0), C1-C3 (conjectured log 4), HS (q = 2, inf),
/// Phi4 (q = inf). Throws DomainError when no closed form is recorded.
AnalyticValue analytic_riu(std::string_view name, RenyiOrder q);

}  // namespace mriu

#pragma once

#include "mriu/tensor.hpp"

namespace mriu {

/// Cayley hyperdeterminant of a 2x2x2 tensor in its 12-monomial form,
/// normalized so that Det3(GHZ) = 1/4. Homogeneous of degree 4; no
/// normalization required. Throws DimensionError unless dims = (2,2,2).
Complex det3(const StateTensor& c);

/// tau = 4 |Det3(C)| for a normalized three-qubit state.
double tangle(const StateTensor& c);

/// Wootters concurrence max(0, mu1 - mu2 - mu3 - mu4) of a two-qubit density
/// matrix. Throws DomainError unless rho is Hermitian, PSD and unit-trace
/// (tolerance 1e-10).
double concurrence2(const ComplexMatrix& rho);

/// Reduced density matrix of axes (a, b), a < b, with the rest traced out.
ComplexMatrix pair_density(const StateTensor& c, std::size_t a, std::size_t b);

/// tau = C_{A,BC}^2 - C_{A,B}^2 - C_{A,C}^2 with C_{A,BC} = 2 sqrt(det rho_A).
double tangle_via_concurrence(const StateTensor& c);

/// Squared concurrences entering the identity above.
struct ConcurrenceSplit {
  double a_bc = 0.0;  ///< C_{A,BC}^2
  double a_b = 0.0;   ///< C_{A,B}^2
  double a_c = 0.0;   ///< C_{A,C}^2
};
ConcurrenceSplit concurrence_split(const StateTensor& c);

/// Four-qubit hyperdeterminant by Schlafli's construction: the discriminant
/// of the binary quartic Det3(y C_{ijk0} + x C_{ijk1}), divided by 64 so
/// that T(HD) = 1. Degree 24. Throws DimensionError unless dims = (2,2,2,2).
Complex det4(const StateTensor& c);

/// Normalization fixed by T(HD) = 2^6 3^9 |Det4(HD)| = 1.
inline constexpr double kDet4Scale = 1.0 / 64.0;

/// T = 2^6 3^9 |Det4(C)|; reported as 0 when |Det4| < 1e-14.
double hyper_t(const StateTensor& c);

/// Discriminant (4 I^3 - J^2) / 27 of a4 x^4 + a3 x^3 y + a2 x^2 y^2 + a1 x y^3 + a0 y^4.
Complex binary_quartic_discriminant(Complex a4, Complex a3, Complex a2, Complex a1, Complex a0);

}  // namespace mriu

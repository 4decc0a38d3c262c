#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "mriu/tensor.hpp"

namespace mriu {

using BigRational = mpq_class;

std::string to_string(const BigRational& r);

/// Exponents of a monomial prod z_i^{e_i} conj(z_i)^{ebar_i} over 8 amplitudes.
struct Exponents {
  std::array<std::uint8_t, 8> hol{};
  std::array<std::uint8_t, 8> anti{};

  friend bool operator==(const Exponents&, const Exponents&) = default;
  bool holomorphic() const;
  bool balanced() const { return hol == anti; }
};

struct ExponentsHash {
  std::size_t operator()(const Exponents& e) const noexcept;
};

/// Sparse polynomial in 8 complex amplitudes and their conjugates with exact
/// rational coefficients. Zero coefficients are never stored.
class MonomialPoly {
 public:
  using Terms = std::unordered_map<Exponents, BigRational, ExponentsHash>;

  MonomialPoly() = default;
  static MonomialPoly constant(const BigRational& c);
  /// z_i (or conj(z_i)).
  static MonomialPoly variable(std::size_t i, bool conjugate = false);

  const Terms& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  /// Total degree of the highest term (0 for the zero polynomial).
  int degree() const;

  void add_term(const Exponents& e, const BigRational& c);
  MonomialPoly& operator+=(const MonomialPoly& o);
  MonomialPoly& operator-=(const MonomialPoly& o);
  MonomialPoly& operator*=(const BigRational& s);
  friend MonomialPoly operator+(MonomialPoly a, const MonomialPoly& b) { return a += b; }
  friend MonomialPoly operator-(MonomialPoly a, const MonomialPoly& b) { return a -= b; }
  friend MonomialPoly operator*(const MonomialPoly& a, const MonomialPoly& b);
  friend MonomialPoly operator*(MonomialPoly a, const BigRational& s) { return a *= s; }
  friend bool operator==(const MonomialPoly& a, const MonomialPoly& b) { return a.terms_ == b.terms_; }

  MonomialPoly pow(unsigned k) const;
  /// Swaps holomorphic and anti-holomorphic exponents (coefficients are real).
  MonomialPoly conj() const;
  Complex evaluate(std::span<const Complex> z) const;

 private:
  Terms terms_;
};

/// <|psi_1|^{2p_1} ... |psi_d|^{2p_d}> over Haar-random unit vectors in C^d:
///   Gamma(d) prod Gamma(p_i + 1) / Gamma(sum p_i + d).
BigRational monomial_expectation(std::span<const unsigned> p, unsigned d);

/// Haar average of a polynomial in a random unit vector of C^8. Terms with
/// hol != anti vanish.
BigRational haar_expectation(const MonomialPoly& poly);

/// <P Q> for holomorphic P and anti-holomorphic Q, pairing only matching
/// exponents. Never forms the product polynomial.
BigRational haar_expectation_pair(const MonomialPoly& p, const MonomialPoly& q);

/// Det3 as an integer polynomial in the amplitudes, z_{4i+2j+k} = C_{ijk}.
MonomialPoly det3_poly();

inline constexpr int kMomentMandatoryMax = 3;
inline constexpr int kMomentMax = 6;

/// <tau^{2k}> = 16^k <Det3^k conj(Det3)^k>. k <= 3 always allowed; 4 <= k <= 6
/// requires allow_large. Det3^k has 12, 57, 176, 425, 876, 1617 terms for
/// k = 1..6, so even k = 6 needs well under 1 MB and runs in milliseconds.
/// Throws DomainError outside the range.
BigRational tangle_even_moment(int k, bool allow_large = false);

struct BetaParams {
  BigRational alpha;
  BigRational beta;
};

/// Moment-method fit: alpha = m (m (1 - m) / v - 1), beta = (1 - m)(...),
/// v = m2 - m1^2. Throws DomainError if v <= 0.
BetaParams beta_fit(const BigRational& m1, const BigRational& m2);
/// Floating-point variant for empirical moments.
std::pair<double, double> beta_fit(double m1, double m2);

/// E[x^m] = prod_{j<m} (alpha + j) / (alpha + beta + j).
BigRational beta_moment(const BetaParams& b, unsigned m);

/// Beta(alpha, beta; x) density.
double beta_pdf(double x, double alpha, double beta);

/// Density of tau^2 when tau ~ Beta(31/17, 62/17):
///   P(x) = Beta(31/17, 62/17; sqrt x) / (2 sqrt x). Throws DomainError unless 0 < x <= 1.
double beta_pdf_tau2(double x);

}  // namespace mriu

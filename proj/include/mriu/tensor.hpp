#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace mriu {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using Dims = std::vector<std::size_t>;

inline constexpr double kNormTol = 1e-10;

/// Coefficient tensor C of a pure state on d_1 x ... x d_n.
///
/// Coefficients are stored row-major with the last index varying fastest, so
/// the ket |i_1 ... i_n> (0-based digits) sits at flat offset
///   sum_k i_k * stride_k,  stride_{n-1} = 1,  stride_k = stride_{k+1} d_{k+1}.
/// Axes are 0-based throughout the library.
class StateTensor {
 public:
  StateTensor() = default;
  /// Throws DimensionError if coeffs.size() != prod(dims) or any dim is 0.
  StateTensor(Dims dims, std::vector<Complex> coeffs);

  static StateTensor zeros(Dims dims);
  /// Basis ket |digits>.
  static StateTensor basis(Dims dims, std::span<const std::size_t> digits);
  /// Throws NormalizationError unless | sum |C|^2 - 1 | <= kNormTol.
  static StateTensor checked_normalized(Dims dims, std::vector<Complex> coeffs);

  const Dims& dims() const noexcept { return dims_; }
  std::size_t order() const noexcept { return dims_.size(); }
  std::size_t size() const noexcept { return coeffs_.size(); }
  std::size_t stride(std::size_t axis) const;

  std::span<const Complex> coeffs() const noexcept { return coeffs_; }
  std::span<Complex> coeffs() noexcept { return coeffs_; }
  const Complex& operator[](std::size_t flat) const { return coeffs_[flat]; }
  Complex& operator[](std::size_t flat) { return coeffs_[flat]; }

  Complex& at(std::span<const std::size_t> digits);
  const Complex& at(std::span<const std::size_t> digits) const;

  std::size_t flat_index(std::span<const std::size_t> digits) const;
  std::vector<std::size_t> digits(std::size_t flat) const;

  double norm_squared() const noexcept;
  bool is_normalized(double tol = kNormTol) const noexcept;
  /// Copy scaled to unit norm; throws NormalizationError on the zero tensor.
  StateTensor normalized() const;
  /// Throws NormalizationError unless is_normalized().
  void require_normalized() const;

  friend bool operator==(const StateTensor&, const StateTensor&) = default;

 private:
  Dims dims_;
  std::vector<Complex> coeffs_;
};

std::size_t dims_product(const Dims& dims);

/// Probability vector p_mu = |C_mu|^2 of a normalized state.
class ProbVector {
 public:
  /// Throws NormalizationError if entries are negative or do not sum to 1.
  explicit ProbVector(std::vector<double> probs);

  std::span<const double> probs() const noexcept { return probs_; }
  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }

 private:
  std::vector<double> probs_;
};

/// k-th unfolding: d_k x (N / d_k). Entry (i_k, j) holds C_{i_1..i_n} with
///   j = sum_{l != k} i_l J_l,   J_l = prod_{m < l, m != k} d_m
/// (0-based form of the 1-based index map; the lowest remaining axis varies
/// fastest along a row).
ComplexMatrix unfold(const StateTensor& c, std::size_t axis);
/// Inverse of unfold.
StateTensor fold(const ComplexMatrix& m, std::size_t axis, const Dims& dims);

/// (U x_k C)_{..i'..} = sum_i U(i', i) C_{..i..}.
StateTensor kmode_product(const ComplexMatrix& u, const StateTensor& c, std::size_t axis);

/// Raw k-mode kernel on flat storage; `out` must not alias `in`.
void kmode_apply(const ComplexMatrix& u, std::span<const Complex> in, std::span<Complex> out,
                 const Dims& dims, std::size_t axis);

/// <A,B> = sum conj(A) B.
Complex inner(const StateTensor& a, const StateTensor& b);
double frobenius(const StateTensor& a);
double frobenius_distance(const StateTensor& a, const StateTensor& b);

/// Checked: throws NormalizationError on unnormalized input.
ProbVector prob_vector(const StateTensor& c);
/// |C_mu|^2 without normalization checks, written into `out`.
void squared_moduli(std::span<const Complex> c, std::span<double> out);

/// rho_k = C_(k) C_(k)^dagger.
ComplexMatrix reduced_density(const StateTensor& c, std::size_t axis);

/// Axis permutation: result axis a is input axis perm[a].
StateTensor permute_axes(const StateTensor& c, std::span<const std::size_t> perm);

}  // namespace mriu

#include "mriu/tensor.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "mriu/errors.hpp"

namespace mriu {

namespace {

void check_axis(const Dims& dims, std::size_t axis) {
  if (axis >= dims.size()) {
    throw AxisError("axis " + std::to_string(axis) + " out of range for order " +
                    std::to_string(dims.size()));
  }
}

void check_same_dims(const StateTensor& a, const StateTensor& b) {
  if (a.dims() != b.dims()) throw DimensionError("tensor dims differ");
}

}  // namespace

std::size_t dims_product(const Dims& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

StateTensor::StateTensor(Dims dims, std::vector<Complex> coeffs)
    : dims_(std::move(dims)), coeffs_(std::move(coeffs)) {
  if (dims_.empty()) throw DimensionError("tensor needs at least one axis");
  for (auto d : dims_) {
    if (d == 0) throw DimensionError("zero-sized axis");
  }
  if (coeffs_.size() != dims_product(dims_)) {
    throw DimensionError("coefficient count " + std::to_string(coeffs_.size()) +
                         " does not match prod(dims) " + std::to_string(dims_product(dims_)));
  }
}

StateTensor StateTensor::zeros(Dims dims) {
  const auto n = dims_product(dims);
  return StateTensor(std::move(dims), std::vector<Complex>(n));
}

StateTensor StateTensor::basis(Dims dims, std::span<const std::size_t> digits) {
  auto t = zeros(std::move(dims));
  t.at(digits) = 1.0;
  return t;
}

StateTensor StateTensor::checked_normalized(Dims dims, std::vector<Complex> coeffs) {
  StateTensor t(std::move(dims), std::move(coeffs));
  t.require_normalized();
  return t;
}

std::size_t StateTensor::stride(std::size_t axis) const {
  check_axis(dims_, axis);
  std::size_t s = 1;
  for (std::size_t k = dims_.size() - 1; k > axis; --k) s *= dims_[k];
  return s;
}

std::size_t StateTensor::flat_index(std::span<const std::size_t> digits) const {
  if (digits.size() != dims_.size()) throw DimensionError("index arity mismatch");
  std::size_t flat = 0;
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    if (digits[k] >= dims_[k]) throw AxisError("index digit out of range");
    flat = flat * dims_[k] + digits[k];
  }
  return flat;
}

std::vector<std::size_t> StateTensor::digits(std::size_t flat) const {
  std::vector<std::size_t> out(dims_.size());
  for (std::size_t k = dims_.size(); k-- > 0;) {
    out[k] = flat % dims_[k];
    flat /= dims_[k];
  }
  return out;
}

Complex& StateTensor::at(std::span<const std::size_t> digits) {
  return coeffs_[flat_index(digits)];
}

const Complex& StateTensor::at(std::span<const std::size_t> digits) const {
  return coeffs_[flat_index(digits)];
}

double StateTensor::norm_squared() const noexcept {
  double s = 0.0;
  for (const auto& c : coeffs_) s += std::norm(c);
  return s;
}

bool StateTensor::is_normalized(double tol) const noexcept {
  return std::abs(norm_squared() - 1.0) <= tol;
}

StateTensor StateTensor::normalized() const {
  const double n2 = norm_squared();
  if (!(n2 > 0.0) || !std::isfinite(n2)) throw NormalizationError("cannot normalize zero tensor");
  StateTensor out = *this;
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& c : out.coeffs_) c *= inv;
  return out;
}

void StateTensor::require_normalized() const {
  if (!is_normalized()) {
    throw NormalizationError("state not normalized: sum |C|^2 = " +
                             std::to_string(norm_squared()));
  }
}

ProbVector::ProbVector(std::vector<double> probs) : probs_(std::move(probs)) {
  double s = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0)) throw NormalizationError("negative or NaN probability");
    s += p;
  }
  if (std::abs(s - 1.0) > kNormTol) {
    throw NormalizationError("probabilities sum to " + std::to_string(s));
  }
}

ComplexMatrix unfold(const StateTensor& c, std::size_t axis) {
  const auto& dims = c.dims();
  check_axis(dims, axis);
  const std::size_t rows = dims[axis];
  const std::size_t cols = c.size() / rows;

  // J_l for every axis l != axis; the lowest remaining axis is fastest.
  std::vector<std::size_t> jstride(dims.size(), 0);
  std::size_t acc = 1;
  for (std::size_t l = 0; l < dims.size(); ++l) {
    if (l == axis) continue;
    jstride[l] = acc;
    acc *= dims[l];
  }

  ComplexMatrix m(rows, cols);
  std::vector<std::size_t> idx(dims.size(), 0);
  for (std::size_t flat = 0; flat < c.size(); ++flat) {
    std::size_t j = 0;
    for (std::size_t l = 0; l < dims.size(); ++l) j += idx[l] * jstride[l];
    m(idx[axis], j) = c[flat];
    for (std::size_t l = dims.size(); l-- > 0;) {
      if (++idx[l] < dims[l]) break;
      idx[l] = 0;
    }
  }
  return m;
}

StateTensor fold(const ComplexMatrix& m, std::size_t axis, const Dims& dims) {
  check_axis(dims, axis);
  const std::size_t n = dims_product(dims);
  if (static_cast<std::size_t>(m.rows()) != dims[axis] ||
      static_cast<std::size_t>(m.rows() * m.cols()) != n) {
    throw DimensionError("matrix shape does not match unfolding of dims");
  }
  std::vector<std::size_t> jstride(dims.size(), 0);
  std::size_t acc = 1;
  for (std::size_t l = 0; l < dims.size(); ++l) {
    if (l == axis) continue;
    jstride[l] = acc;
    acc *= dims[l];
  }
  auto out = StateTensor::zeros(dims);
  std::vector<std::size_t> idx(dims.size(), 0);
  for (std::size_t flat = 0; flat < n; ++flat) {
    std::size_t j = 0;
    for (std::size_t l = 0; l < dims.size(); ++l) j += idx[l] * jstride[l];
    out[flat] = m(idx[axis], j);
    for (std::size_t l = dims.size(); l-- > 0;) {
      if (++idx[l] < dims[l]) break;
      idx[l] = 0;
    }
  }
  return out;
}

void kmode_apply(const ComplexMatrix& u, std::span<const Complex> in, std::span<Complex> out,
                 const Dims& dims, std::size_t axis) {
  const std::size_t d = dims[axis];
  std::size_t inner_count = 1;
  for (std::size_t l = axis + 1; l < dims.size(); ++l) inner_count *= dims[l];
  const std::size_t outer_count = in.size() / (d * inner_count);
  const Complex* src = in.data();
  Complex* dst = out.data();
  for (std::size_t o = 0; o < outer_count; ++o) {
    const std::size_t base = o * d * inner_count;
    for (std::size_t ip = 0; ip < d; ++ip) {
      Complex* row = dst + base + ip * inner_count;
      for (std::size_t t = 0; t < inner_count; ++t) row[t] = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        const Complex w = u(ip, i);
        const Complex* col = src + base + i * inner_count;
        for (std::size_t t = 0; t < inner_count; ++t) row[t] += w * col[t];
      }
    }
  }
}

StateTensor kmode_product(const ComplexMatrix& u, const StateTensor& c, std::size_t axis) {
  check_axis(c.dims(), axis);
  const auto d = static_cast<Eigen::Index>(c.dims()[axis]);
  if (u.rows() != d || u.cols() != d) {
    throw DimensionError("k-mode factor must be " + std::to_string(d) + "x" + std::to_string(d));
  }
  auto out = StateTensor::zeros(c.dims());
  kmode_apply(u, c.coeffs(), out.coeffs(), c.dims(), axis);
  return out;
}

Complex inner(const StateTensor& a, const StateTensor& b) {
  check_same_dims(a, b);
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double frobenius(const StateTensor& a) { return std::sqrt(a.norm_squared()); }

double frobenius_distance(const StateTensor& a, const StateTensor& b) {
  check_same_dims(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s);
}

void squared_moduli(std::span<const Complex> c, std::span<double> out) {
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = std::norm(c[i]);
}

ProbVector prob_vector(const StateTensor& c) {
  c.require_normalized();
  std::vector<double> p(c.size());
  squared_moduli(c.coeffs(), p);
  return ProbVector(std::move(p));
}

ComplexMatrix reduced_density(const StateTensor& c, std::size_t axis) {
  const ComplexMatrix m = unfold(c, axis);
  return m * m.adjoint();
}

StateTensor permute_axes(const StateTensor& c, std::span<const std::size_t> perm) {
  const auto& dims = c.dims();
  if (perm.size() != dims.size()) throw DimensionError("permutation arity mismatch");
  std::vector<bool> seen(dims.size(), false);
  Dims new_dims(dims.size());
  for (std::size_t a = 0; a < perm.size(); ++a) {
    if (perm[a] >= dims.size() || seen[perm[a]]) throw DomainError("not a permutation");
    seen[perm[a]] = true;
    new_dims[a] = dims[perm[a]];
  }
  auto out = StateTensor::zeros(new_dims);
  std::vector<std::size_t> dst(dims.size());
  for (std::size_t flat = 0; flat < c.size(); ++flat) {
    const auto src = c.digits(flat);
    for (std::size_t a = 0; a < perm.size(); ++a) dst[a] = src[perm[a]];
    out.at(dst) = c[flat];
  }
  return out;
}

}  // namespace mriu

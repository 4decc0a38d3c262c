#include "mriu/invariants.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "mriu/errors.hpp"

namespace mriu {

namespace {

void require_dims(const StateTensor& c, std::size_t n) {
  if (c.order() != n || std::any_of(c.dims().begin(), c.dims().end(), [](auto d) { return d != 2; })) {
    throw DimensionError("expected a " + std::to_string(n) + "-qubit tensor");
  }
}

// a[4i + 2j + k] = C_{ijk}; works for any commutative ring T.
template <typename T>
T cayley(const std::array<T, 8>& a) {
  const T& a000 = a[0];
  const T& a001 = a[1];
  const T& a010 = a[2];
  const T& a011 = a[3];
  const T& a100 = a[4];
  const T& a101 = a[5];
  const T& a110 = a[6];
  const T& a111 = a[7];
  const T d1 = a000 * a000 * a111 * a111 + a001 * a001 * a110 * a110 + a010 * a010 * a101 * a101 +
               a100 * a100 * a011 * a011;
  const T d2 = a000 * a111 * a011 * a100 + a000 * a111 * a101 * a010 + a000 * a111 * a110 * a001 +
               a011 * a100 * a101 * a010 + a011 * a100 * a110 * a001 + a101 * a010 * a110 * a001;
  const T d3 = a000 * a110 * a101 * a011 + a111 * a001 * a010 * a100;
  return d1 - d2 * 2.0 + d3 * 4.0;
}

// Polynomial in x of degree <= 4 with complex coefficients (index = power).
struct Quartic {
  std::array<Complex, 5> c{};

  friend Quartic operator+(const Quartic& x, const Quartic& y) {
    Quartic r;
    for (int i = 0; i < 5; ++i) r.c[i] = x.c[i] + y.c[i];
    return r;
  }
  friend Quartic operator-(const Quartic& x, const Quartic& y) {
    Quartic r;
    for (int i = 0; i < 5; ++i) r.c[i] = x.c[i] - y.c[i];
    return r;
  }
  friend Quartic operator*(const Quartic& x, double s) {
    Quartic r;
    for (int i = 0; i < 5; ++i) r.c[i] = x.c[i] * s;
    return r;
  }
  friend Quartic operator*(const Quartic& x, const Quartic& y) {
    Quartic r;
    for (int i = 0; i < 5; ++i)
      for (int j = 0; i + j < 5; ++j) r.c[i + j] += x.c[i] * y.c[j];
    return r;
  }
};

}  // namespace

Complex det3(const StateTensor& c) {
  require_dims(c, 3);
  std::array<Complex, 8> a;
  std::copy(c.coeffs().begin(), c.coeffs().end(), a.begin());
  return cayley(a);
}

double tangle(const StateTensor& c) {
  require_dims(c, 3);
  c.require_normalized();
  return 4.0 * std::abs(det3(c));
}

namespace {

// rho = X X^dagger. The Wootters mu_i are the singular values of X^T (sy x sy) X,
// which avoids square roots of the near-zero eigenvalues of rho rho~.
double concurrence_from_factor(const ComplexMatrix& x) {
  ComplexMatrix yy = ComplexMatrix::Zero(4, 4);
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const ComplexMatrix m = x.transpose() * yy * x;
  const Eigen::VectorXd sv = Eigen::JacobiSVD<ComplexMatrix>(m).singularValues();
  double c = sv.size() > 0 ? sv(0) : 0.0;
  for (Eigen::Index i = 1; i < sv.size(); ++i) c -= sv(i);
  return std::max(0.0, c);
}

// Rows indexed by (i_a, i_b), columns by the remaining digits.
ComplexMatrix pair_factor(const StateTensor& c, std::size_t a, std::size_t b) {
  if (a >= b || b >= c.order()) throw AxisError("pair_density needs axes a < b < order");
  const auto da = static_cast<Eigen::Index>(c.dims()[a]);
  const auto db = static_cast<Eigen::Index>(c.dims()[b]);
  ComplexMatrix m = ComplexMatrix::Zero(da * db, static_cast<Eigen::Index>(c.size()) / (da * db));
  std::vector<Eigen::Index> fill(static_cast<std::size_t>(da * db), 0);
  for (std::size_t flat = 0; flat < c.size(); ++flat) {
    const auto dg = c.digits(flat);
    const auto row = static_cast<Eigen::Index>(dg[a]) * db + static_cast<Eigen::Index>(dg[b]);
    m(row, fill[static_cast<std::size_t>(row)]++) = c[flat];
  }
  return m;
}

}  // namespace

double concurrence2(const ComplexMatrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4) throw DomainError("two-qubit density matrix must be 4x4");
  constexpr double tol = 1e-10;
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol) throw DomainError("density matrix not Hermitian");
  if (std::abs(rho.trace() - Complex(1.0)) > tol) throw DomainError("density matrix trace != 1");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho);
  const Eigen::VectorXd ev = es.eigenvalues();
  if (ev.minCoeff() < -tol) throw DomainError("density matrix not positive semidefinite");
  // Eigenvalues at rounding level are dropped rather than square-rooted.
  const double cut = 1e-14 * ev.maxCoeff();
  Eigen::VectorXd w(4);
  for (int i = 0; i < 4; ++i) w(i) = ev(i) > cut ? std::sqrt(ev(i)) : 0.0;
  return concurrence_from_factor(es.eigenvectors() * w.asDiagonal());
}

ComplexMatrix pair_density(const StateTensor& c, std::size_t a, std::size_t b) {
  const ComplexMatrix m = pair_factor(c, a, b);
  return m * m.adjoint();
}

ConcurrenceSplit concurrence_split(const StateTensor& c) {
  require_dims(c, 3);
  c.require_normalized();
  ConcurrenceSplit s;
  const ComplexMatrix rho_a = reduced_density(c, 0);
  const double det = std::max(0.0, (rho_a(0, 0) * rho_a(1, 1) - rho_a(0, 1) * rho_a(1, 0)).real());
  s.a_bc = 4.0 * det;
  const double cab = concurrence_from_factor(pair_factor(c, 0, 1));
  const double cac = concurrence_from_factor(pair_factor(c, 0, 2));
  s.a_b = cab * cab;
  s.a_c = cac * cac;
  return s;
}

double tangle_via_concurrence(const StateTensor& c) {
  const auto s = concurrence_split(c);
  return s.a_bc - s.a_b - s.a_c;
}

Complex binary_quartic_discriminant(Complex a4, Complex a3, Complex a2, Complex a1, Complex a0) {
  const Complex i_inv = 12.0 * a4 * a0 - 3.0 * a3 * a1 + a2 * a2;
  const Complex j_inv = 72.0 * a4 * a2 * a0 + 9.0 * a3 * a2 * a1 - 27.0 * a4 * a1 * a1 -
                        27.0 * a0 * a3 * a3 - 2.0 * a2 * a2 * a2;
  return (4.0 * i_inv * i_inv * i_inv - j_inv * j_inv) / 27.0;
}

Complex det4(const StateTensor& c) {
  require_dims(c, 4);
  // Entry (ijk) of the slice pencil C_{ijk0} + x C_{ijk1}.
  std::array<Quartic, 8> pencil;
  for (std::size_t ijk = 0; ijk < 8; ++ijk) {
    pencil[ijk].c[0] = c[2 * ijk];
    pencil[ijk].c[1] = c[2 * ijk + 1];
  }
  const Quartic q = cayley(pencil);
  return kDet4Scale * binary_quartic_discriminant(q.c[4], q.c[3], q.c[2], q.c[1], q.c[0]);
}

double hyper_t(const StateTensor& c) {
  const double a = std::abs(det4(c));
  if (a < 1e-14) return 0.0;
  return 64.0 * 19683.0 * a;
}

}  // namespace mriu

#include "mriu/random.hpp"

#include <cmath>

#include "mriu/errors.hpp"

namespace mriu {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), engine_(splitmix64(splitmix64(seed) ^ splitmix64(~stream))) {}

RngStream RngStream::substream(std::uint64_t i) const {
  return RngStream(splitmix64(seed_ ^ splitmix64(stream_ + 0x632BE59BD9B4E019ull)), i);
}

double RngStream::uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

double RngStream::normal() { return normal_(engine_); }

Complex RngStream::complex_normal() {
  constexpr double s = 0.70710678118654752440;
  const double re = normal();
  const double im = normal();
  return {s * re, s * im};
}

std::size_t RngStream::index(std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
}

ComplexMatrix haar_unitary(std::size_t d, RngStream& rng) {
  if (d == 0) throw DomainError("haar_unitary: d must be >= 1");
  const auto n = static_cast<Eigen::Index>(d);
  ComplexMatrix z(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) z(i, j) = rng.complex_normal();
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double a = std::abs(r(j, j));
    const Complex phase = a > 0.0 ? r(j, j) / a : Complex(1.0);
    q.col(j) *= phase;
  }
  return q;
}

StateTensor haar_state(const Dims& dims, RngStream& rng) {
  auto t = StateTensor::zeros(dims);
  for (auto& c : t.coeffs()) c = rng.complex_normal();
  return t.normalized();
}

void unitary_step_into(std::size_t d, double eps, RngStream& rng, ComplexMatrix& out) {
  const auto n = static_cast<Eigen::Index>(d);
  out.resize(n, n);
  if (eps == 0.0) {
    out.setIdentity();
    return;
  }
  if (d == 2) {
    // H = (A + A^dagger)/2 = a0 I + ax sx + ay sy + az sz; draws in column-major order.
    Complex a[4];
    for (auto& z : a) z = rng.complex_normal();
    const double h11 = a[0].real();
    const double h22 = a[3].real();
    const Complex h12 = 0.5 * (a[2] + std::conj(a[1]));
    const double a0 = 0.5 * (h11 + h22);
    const double az = 0.5 * (h11 - h22);
    const double ax = h12.real();
    const double ay = -h12.imag();
    const double r = std::sqrt(ax * ax + ay * ay + az * az);
    const double scale = std::abs(a0) + r;
    if (!(scale > 0.0)) {
      out.setIdentity();
      return;
    }
    const double t0 = eps * a0 / scale;
    const double tr = eps * r / scale;
    const Complex g(std::cos(t0), std::sin(t0));
    const double c = std::cos(tr);
    const double s = r > 0.0 ? std::sin(tr) / r : 0.0;
    // exp(i tr n.sigma) = cos(tr) I + i sin(tr) n.sigma
    const Complex i(0.0, 1.0);
    out(0, 0) = g * Complex(c, s * az);
    out(1, 1) = g * Complex(c, -s * az);
    out(0, 1) = g * (i * s * Complex(ax, -ay));
    out(1, 0) = g * (i * s * Complex(ax, ay));
    return;
  }
  ComplexMatrix a(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) a(i, j) = rng.complex_normal();
  const ComplexMatrix h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double scale = std::max(std::abs(ev(0)), std::abs(ev(n - 1)));
  Eigen::VectorXcd phases(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double theta = scale > 0.0 ? eps * ev(i) / scale : 0.0;
    phases(i) = Complex(std::cos(theta), std::sin(theta));
  }
  const ComplexMatrix& v = es.eigenvectors();
  out.noalias() = v * phases.asDiagonal() * v.adjoint();
}

ComplexMatrix unitary_step(std::size_t d, double eps, RngStream& rng) {
  ComplexMatrix out;
  unitary_step_into(d, eps, rng, out);
  return out;
}

ComplexMatrix perturb_unitary(const ComplexMatrix& u, double eps, RngStream& rng) {
  if (eps == 0.0) return u;
  return u * unitary_step(static_cast<std::size_t>(u.rows()), eps, rng);
}

ComplexMatrix u_p(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("u_p: p must lie in [0,1]");
  const double a = std::sqrt(p);
  const double b = std::sqrt(1.0 - p);
  ComplexMatrix u(2, 2);
  u << a, b, -b, a;
  return u;
}

double unitarity_residual(const ComplexMatrix& u) {
  const ComplexMatrix e = u.adjoint() * u - ComplexMatrix::Identity(u.cols(), u.cols());
  return e.cwiseAbs().maxCoeff();
}

}  // namespace mriu

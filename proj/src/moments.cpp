#include "mriu/moments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mriu/errors.hpp"

namespace mriu {

std::string to_string(const BigRational& r) { return r.get_str(); }

bool Exponents::holomorphic() const {
  return std::all_of(anti.begin(), anti.end(), [](auto a) { return a == 0; });
}

std::size_t ExponentsHash::operator()(const Exponents& e) const noexcept {
  std::uint64_t h = 0, a = 0;
  for (std::size_t i = 0; i < 8; ++i) {
    h |= static_cast<std::uint64_t>(e.hol[i]) << (8 * i);
    a |= static_cast<std::uint64_t>(e.anti[i]) << (8 * i);
  }
  std::uint64_t x = h ^ (a * 0x9E3779B97F4A7C15ULL);
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdULL;
  x ^= x >> 33;
  return static_cast<std::size_t>(x);
}

MonomialPoly MonomialPoly::constant(const BigRational& c) {
  MonomialPoly p;
  p.add_term(Exponents{}, c);
  return p;
}

MonomialPoly MonomialPoly::variable(std::size_t i, bool conjugate) {
  if (i >= 8) throw DomainError("variable index must be < 8");
  Exponents e;
  (conjugate ? e.anti : e.hol)[i] = 1;
  MonomialPoly p;
  p.add_term(e, 1);
  return p;
}

int MonomialPoly::degree() const {
  int best = 0;
  for (const auto& [e, c] : terms_) {
    int d = 0;
    for (std::size_t i = 0; i < 8; ++i) d += e.hol[i] + e.anti[i];
    best = std::max(best, d);
  }
  return best;
}

void MonomialPoly::add_term(const Exponents& e, const BigRational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MonomialPoly& MonomialPoly::operator+=(const MonomialPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MonomialPoly& MonomialPoly::operator-=(const MonomialPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MonomialPoly& MonomialPoly::operator*=(const BigRational& s) {
  if (s == 0) {
    terms_.clear();
  } else {
    for (auto& [e, c] : terms_) c *= s;
  }
  return *this;
}

MonomialPoly operator*(const MonomialPoly& a, const MonomialPoly& b) {
  MonomialPoly out;
  out.terms_.reserve(a.size() * b.size());
  BigRational prod;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Exponents e;
      for (std::size_t i = 0; i < 8; ++i) {
        const int h = ea.hol[i] + eb.hol[i];
        const int an = ea.anti[i] + eb.anti[i];
        if (h > 255 || an > 255) throw DomainError("monomial exponent overflow");
        e.hol[i] = static_cast<std::uint8_t>(h);
        e.anti[i] = static_cast<std::uint8_t>(an);
      }
      prod = ca * cb;
      out.add_term(e, prod);
    }
  }
  return out;
}

MonomialPoly MonomialPoly::pow(unsigned k) const {
  MonomialPoly r = constant(1);
  for (unsigned i = 0; i < k; ++i) r = r * *this;
  return r;
}

MonomialPoly MonomialPoly::conj() const {
  MonomialPoly out;
  out.terms_.reserve(terms_.size());
  for (const auto& [e, c] : terms_) out.terms_.emplace(Exponents{e.anti, e.hol}, c);
  return out;
}

Complex MonomialPoly::evaluate(std::span<const Complex> z) const {
  if (z.size() != 8) throw DimensionError("MonomialPoly expects 8 amplitudes");
  Complex s = 0.0;
  for (const auto& [e, c] : terms_) {
    Complex m = c.get_d();
    for (std::size_t i = 0; i < 8; ++i) {
      for (int j = 0; j < e.hol[i]; ++j) m *= z[i];
      for (int j = 0; j < e.anti[i]; ++j) m *= std::conj(z[i]);
    }
    s += m;
  }
  return s;
}

namespace {

mpz_class factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

}  // namespace

BigRational monomial_expectation(std::span<const unsigned> p, unsigned d) {
  if (d == 0) throw DomainError("dimension must be >= 1");
  if (p.size() > d) throw DimensionError("more exponents than dimensions");
  unsigned total = 0;
  mpz_class num = factorial(d - 1);
  for (unsigned pi : p) {
    num *= factorial(pi);
    total += pi;
  }
  BigRational r(num, factorial(total + d - 1));
  r.canonicalize();
  return r;
}

BigRational haar_expectation(const MonomialPoly& poly) {
  BigRational s = 0;
  std::array<unsigned, 8> p{};
  for (const auto& [e, c] : poly.terms()) {
    if (!e.balanced()) continue;
    for (std::size_t i = 0; i < 8; ++i) p[i] = e.hol[i];
    s += c * monomial_expectation(p, 8);
  }
  return s;
}

BigRational haar_expectation_pair(const MonomialPoly& p, const MonomialPoly& q) {
  // Index q by its anti-holomorphic part; only q terms with matching anti
  // exponents and p terms with matching hol exponents survive.
  std::unordered_map<Exponents, BigRational, ExponentsHash> qa;
  for (const auto& [e, c] : q.terms()) {
    if (!std::all_of(e.hol.begin(), e.hol.end(), [](auto h) { return h == 0; })) {
      throw DomainError("haar_expectation_pair needs an anti-holomorphic right factor");
    }
    qa.emplace(Exponents{e.anti, {}}, c);
  }
  BigRational s = 0;
  std::array<unsigned, 8> pe{};
  for (const auto& [e, c] : p.terms()) {
    if (!e.holomorphic()) throw DomainError("haar_expectation_pair needs a holomorphic left factor");
    auto it = qa.find(e);
    if (it == qa.end()) continue;
    for (std::size_t i = 0; i < 8; ++i) pe[i] = e.hol[i];
    s += c * it->second * monomial_expectation(pe, 8);
  }
  return s;
}

MonomialPoly det3_poly() {
  auto z = [](std::size_t i) { return MonomialPoly::variable(i); };
  const auto a000 = z(0), a001 = z(1), a010 = z(2), a011 = z(3);
  const auto a100 = z(4), a101 = z(5), a110 = z(6), a111 = z(7);
  const MonomialPoly d1 = a000 * a000 * a111 * a111 + a001 * a001 * a110 * a110 +
                          a010 * a010 * a101 * a101 + a100 * a100 * a011 * a011;
  const MonomialPoly d2 = a000 * a111 * a011 * a100 + a000 * a111 * a101 * a010 +
                          a000 * a111 * a110 * a001 + a011 * a100 * a101 * a010 +
                          a011 * a100 * a110 * a001 + a101 * a010 * a110 * a001;
  const MonomialPoly d3 = a000 * a110 * a101 * a011 + a111 * a001 * a010 * a100;
  return d1 - d2 * BigRational(2) + d3 * BigRational(4);
}

BigRational tangle_even_moment(int k, bool allow_large) {
  if (k < 1 || k > kMomentMax) throw DomainError("tangle_even_moment supports 1 <= k <= 6");
  if (k > kMomentMandatoryMax && !allow_large) {
    throw DomainError("k > 3 is long-running; pass allow_large to opt in");
  }
  const MonomialPoly dk = det3_poly().pow(static_cast<unsigned>(k));
  BigRational scale = 1;
  for (int i = 0; i < k; ++i) scale *= 16;
  return scale * haar_expectation_pair(dk, dk.conj());
}

BetaParams beta_fit(const BigRational& m1, const BigRational& m2) {
  const BigRational v = m2 - m1 * m1;
  if (v <= 0) throw DomainError("beta_fit needs positive variance");
  const BigRational common = m1 * (1 - m1) / v - 1;
  return {m1 * common, (1 - m1) * common};
}

std::pair<double, double> beta_fit(double m1, double m2) {
  const double v = m2 - m1 * m1;
  if (!(v > 0.0)) throw DomainError("beta_fit needs positive variance");
  const double common = m1 * (1.0 - m1) / v - 1.0;
  return {m1 * common, (1.0 - m1) * common};
}

BigRational beta_moment(const BetaParams& b, unsigned m) {
  BigRational r = 1;
  for (unsigned j = 0; j < m; ++j) r *= (b.alpha + j) / (b.alpha + b.beta + j);
  return r;
}

double beta_pdf(double x, double alpha, double beta) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  const double log_b = std::lgamma(alpha) + std::lgamma(beta) - std::lgamma(alpha + beta);
  return std::exp((alpha - 1.0) * std::log(x) + (beta - 1.0) * std::log1p(-x) - log_b);
}

double beta_pdf_tau2(double x) {
  if (!(x > 0.0 && x <= 1.0)) throw DomainError("beta_pdf_tau2 needs 0 < x <= 1");
  const double t = std::sqrt(x);
  return beta_pdf(t, 31.0 / 17.0, 62.0 / 17.0) / (2.0 * t);
}

}  // namespace mriu

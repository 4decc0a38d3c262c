#include <doctest.h>

#include "mriu/catalog.hpp"
#include "mriu/decomp.hpp"
#include "mriu/errors.hpp"
#include "mriu/minimize.hpp"
#include "mriu/random.hpp"
#include "mriu/studies.hpp"
#include "oracles.hpp"

using namespace mriu;

namespace {

double entropy_of(const StateTensor& c, RenyiOrder q) {
  std::vector<double> p(c.size());
  squared_moduli(c.coeffs(), p);
  return renyi(p, q);
}

double d42_closed_form(double q) {
  return std::log(std::pow(2.0, 1.0 - 3.0 * q) * std::pow(3.0, -q) * (3.0 + std::pow(3.0, 2.0 * q))) / (1.0 - q);
}

}  // namespace

TEST_SUITE("riu") {

TEST_CASE("apply_local") {
  RngStream rng(1, 0);
  const auto c = haar_state({2, 3, 2}, rng);
  CHECK(apply_local(LocalUnitarySet::identity(c.dims()), c) == c);
  LocalUnitarySet u;
  for (auto d : c.dims()) u.factors.push_back(haar_unitary(d, rng));
  CHECK(std::abs(apply_local(u, c).norm_squared() - 1.0) < 1e-12);
  LocalUnitarySet up{{u_p(1.0), u_p(1.0), u_p(1.0)}};
  CHECK(apply_local(up, named_state("W")) == named_state("W"));
  LocalUnitarySet bad{{u_p(1.0)}};
  CHECK_THROWS_AS(apply_local(bad, c), DimensionError);

  const auto g = oracle::apply_all(oracle::haar_locals({2, 2, 2}, rng), named_state("GHZ"));
  int support = 0;
  for (const auto& z : g.coeffs()) support += std::norm(z) > 1e-12;
  CHECK(support > 2);
  RiuOptions o;
  o.seed = 1;
  o.restarts = 6;
  CHECK(riu_minimize(g, RenyiOrder::infinity(), o).value == doctest::Approx(std::log(2.0)).epsilon(1e-3));
}

TEST_CASE("result invariants and the upper-bound contract") {
  RngStream rng(2, 0);
  RiuOptions o;
  o.restarts = 4;
  for (int t = 0; t < 6; ++t) {
    const auto c = haar_state(t % 2 ? Dims{2, 2, 2} : Dims{2, 2, 2, 2}, rng);
    o.seed = static_cast<std::uint64_t>(t);
    for (double qv : {1.0, 2.0, 100.0}) {
      const RenyiOrder q(qv);
      const auto r = riu_minimize(c, q, o);
      CHECK(r.optimizer.unitarity_residual() < 1e-10);
      CHECK(std::abs(entropy_of(apply_local(r.optimizer, c), q) - r.value) < 1e-9);
      CHECK(r.value <= std::min(entropy_of(c, q), entropy_of(hosvd(c).core, q)) + 1e-9);
      CHECK(r.trace.size() == 4);
    }
  }
}

TEST_CASE("closed forms on GHZ and W") {
  RiuOptions o;
  o.seed = 3;
  for (double q : {0.5, 1.0, 2.0, 100.0}) {
    CHECK(std::abs(riu_minimize(named_state("GHZ"), RenyiOrder(q), o).value - std::log(2.0)) < 1e-3);
  }
  CHECK(std::abs(riu_minimize(named_state("W"), RenyiOrder(1.0), o).value - std::log(3.0)) < 1e-3);
  CHECK(riu_minimize(named_state("GHZ"), RenyiOrder(0.0), o).value == doctest::Approx(std::log(2.0)));
  CHECK(riu_minimize(named_state("W"), RenyiOrder(0.0), o).value == doctest::Approx(std::log(3.0)));
}

TEST_CASE("separable states reach zero") {
  RngStream rng(4, 0);
  RiuOptions o;
  o.seed = 4;
  o.restarts = 4;
  StateTensor c = qubit_ket("000");
  c = oracle::apply_all(oracle::haar_locals(c.dims(), rng), c);
  CHECK(riu_minimize(c, RenyiOrder(1.0), o).value <= 1e-4);
  CHECK(lambda_max_sep(c, o).lambda_max >= 1 - 1e-8);
}

TEST_CASE("estimate is LU invariant and monotone in q") {
  RngStream rng(5, 0);
  RiuOptions o;
  for (int t = 0; t < 3; ++t) {
    const auto c = haar_state({2, 2, 2}, rng);
    const auto v = oracle::apply_all(oracle::haar_locals(c.dims(), rng), c);
    o.seed = static_cast<std::uint64_t>(10 + t);
    double prev = std::numeric_limits<double>::infinity();
    for (double q : {0.5, 1.0, 2.0, 100.0}) {
      const double a = riu_minimize(c, RenyiOrder(q), o).value;
      const double b = riu_minimize(v, RenyiOrder(q), o).value;
      CHECK(std::abs(a - b) <= 2e-2);
      CHECK(a <= prev + 2e-2);
      prev = a;
    }
  }
}

TEST_CASE("lambda_max sandwich") {
  RngStream rng(6, 0);
  RiuOptions o;
  o.restarts = 4;
  for (int t = 0; t < 8; ++t) {
    const auto c = haar_state(t % 2 ? Dims{2, 2, 2} : Dims{3, 3, 3}, rng);
    o.seed = static_cast<std::uint64_t>(t);
    const auto s = lambda_max_sep(c, o);
    CHECK(s.parafac_overlap - 1e-6 <= s.lambda_max);
    CHECK(s.lambda_max <= schmidt_bound(c) + 1e-6);
    CHECK(s.geometric == doctest::Approx(1 - s.lambda_max));
    CHECK(std::cos(s.fubini_study) == doctest::Approx(std::sqrt(s.lambda_max)));
  }
  RiuOptions w;
  w.seed = 7;
  CHECK(std::abs(lambda_max_sep(named_state("W"), w).lambda_max - 4.0 / 9.0) < 1e-3);
}

TEST_CASE("q = 0 routes to the rank estimate") {
  RngStream rng(7, 0);
  RiuOptions o;
  o.seed = 7;
  for (int t = 0; t < 3; ++t) {
    const auto c = haar_state({2, 2, 2}, rng);
    const auto r = riu_minimize(c, RenyiOrder(0.0), o);
    CHECK(r.value <= std::log(5.0) + 1e-12);
  }
}

TEST_CASE("symmetric scan on D(4,2)") {
  const auto d = dicke_state(4, 2);
  for (double q : {2.0, 3.0, 5.0}) {
    const auto s = riu_symmetric(d, RenyiOrder(q));
    CHECK(std::abs(s.value - d42_closed_form(q)) < 1e-6);
    CHECK(std::abs(analytic_riu("D(4,2)", RenyiOrder(q)).value - d42_closed_form(q)) < 1e-12);
  }
  CHECK(std::abs(riu_symmetric(d, RenyiOrder::infinity()).value + std::log(3.0 / 8.0)) < 1e-6);
  CHECK(std::abs(riu_symmetric(d, RenyiOrder(1.0)).value - std::log(8.0 / std::sqrt(3.0))) < 1e-6);
  CHECK_THROWS_AS(riu_symmetric(named_state("HS"), RenyiOrder(2.0)), DomainError);
  CHECK_THROWS_AS(riu_symmetric(StateTensor::zeros({3, 3}), RenyiOrder(2.0)), DomainError);
}

TEST_CASE("recorded closed forms") {
  CHECK(analytic_riu("GHZ", RenyiOrder(7.3)).value == doctest::Approx(std::log(2.0)));
  CHECK(analytic_riu("D(4,2)", RenyiOrder(1.0)).value == doctest::Approx(1.530).epsilon(1e-3));
  CHECK(analytic_riu("W", RenyiOrder::infinity()).value == doctest::Approx(-std::log(4.0 / 9.0)));
  CHECK(analytic_riu("C1", RenyiOrder(2.0)).conjecture);
  CHECK_THROWS_AS(analytic_riu("W", RenyiOrder(2.0)), DomainError);
  CHECK_THROWS_AS(analytic_riu("unknown", RenyiOrder(2.0)), DomainError);
}

TEST_CASE("HD: symmetric scan and full minimization agree") {
  RiuOptions o;
  o.seed = 8;
  const auto hd = named_state("HD");
  for (double q : {1.0, 2.0, 5.0}) {
    const double sym = riu_symmetric(hd, RenyiOrder(q)).value;
    const double full = riu_minimize(hd, RenyiOrder(q), o).value;
    CHECK(std::abs(sym - full) < 1e-3);
    CHECK(std::abs(sym - analytic_riu("HD", RenyiOrder(q)).value) < 1e-6);
  }
}

TEST_CASE("unitary mapping onto e0") {
  RngStream rng(9, 0);
  for (std::size_t d : {2, 3, 5}) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(d));
    for (auto& z : v) z = rng.complex_normal();
    const auto m = unitary_mapping_to_e0(v);
    CHECK(unitarity_residual(m) < 1e-12);
    const Eigen::VectorXcd e = m * v;
    CHECK(std::abs(e(0) - v.norm()) < 1e-12);
    CHECK(e.tail(static_cast<Eigen::Index>(d) - 1).norm() < 1e-12);
  }
  Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(3);
  e1(1) = Complex(0, 1);
  CHECK(std::abs((unitary_mapping_to_e0(e1) * e1)(0) - 1.0) < 1e-12);
}

}  // TEST_SUITE

#include <doctest.h>

#include <algorithm>

#include "mriu/catalog.hpp"
#include "mriu/entropy.hpp"
#include "mriu/errors.hpp"
#include "mriu/random.hpp"

using namespace mriu;

namespace {

std::vector<double> random_probs(std::size_t n, RngStream& rng) {
  std::vector<double> p(n);
  double s = 0.0;
  for (auto& x : p) s += (x = -std::log(1.0 - rng.uniform()));
  for (auto& x : p) x /= s;
  return p;
}

const std::vector<double> kOrders{0.0, 0.5, 1.0, 2.0, 3.5, 100.0};

}  // namespace

TEST_SUITE("entropy") {

TEST_CASE("uniform vectors give log k for every q") {
  for (std::size_t k : {1, 2, 5, 8}) {
    const ProbVector p(std::vector<double>(k, 1.0 / static_cast<double>(k)));
    for (double q : kOrders) CHECK(renyi(p, RenyiOrder(q)) == doctest::Approx(std::log(static_cast<double>(k))));
    CHECK(renyi(p, RenyiOrder::infinity()) == doctest::Approx(std::log(static_cast<double>(k))));
  }
}

TEST_CASE("GHZ probabilities give log 2") {
  const auto p = prob_vector(named_state("GHZ"));
  for (double q : kOrders) CHECK(renyi(p, RenyiOrder(q)) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("collision entropy") {
  CHECK(renyi(ProbVector({0.5, 0.25, 0.25}), RenyiOrder(2.0)) == doctest::Approx(-std::log(3.0 / 8.0)));
}

TEST_CASE("orders and parsing") {
  CHECK_THROWS_AS(RenyiOrder(-1.0), DomainError);
  CHECK(RenyiOrder::parse("inf").is_infinite());
  CHECK(RenyiOrder::parse("2.5").value() == 2.5);
  CHECK_THROWS_AS(RenyiOrder::parse("abc"), DomainError);
}

TEST_CASE("limits at q = 1 and q = 0") {
  const ProbVector u(std::vector<double>(8, 0.125));
  const auto l = renyi_limits_check(u, 1.0);
  CHECK(l.below == doctest::Approx(std::log(8.0)).epsilon(1e-4));
  CHECK(l.above == doctest::Approx(std::log(8.0)).epsilon(1e-4));
  const auto w = renyi_limits_check(prob_vector(named_state("W")), 1.0);
  CHECK(w.limit == doctest::Approx(std::log(3.0)));
  CHECK(std::abs(w.below - std::log(3.0)) < 1e-3);
  RngStream rng(1, 0);
  for (int t = 0; t < 50; ++t) {
    const ProbVector p(random_probs(8, rng));
    const auto c = renyi_limits_check(p, 1.0);
    CHECK(c.below >= c.above);
  }
  const auto z = renyi_limits_check(ProbVector({0.5, 0.5, 0.0}), 0.0);
  CHECK(z.limit == doctest::Approx(std::log(2.0)));
}

TEST_CASE("monotone in q") {
  RngStream rng(2, 0);
  for (int t = 0; t < 1000; ++t) {
    const auto p = random_probs(1 + rng.index(16), rng);
    const double s0 = renyi(p, RenyiOrder(0.0));
    const double s1 = renyi(p, RenyiOrder(1.0));
    const double s2 = renyi(p, RenyiOrder(2.0));
    const double s100 = renyi(p, RenyiOrder(100.0));
    const double sinf = renyi(p, RenyiOrder::infinity());
    REQUIRE(s0 >= s1 - 1e-9);
    REQUIRE(s1 >= s2 - 1e-9);
    REQUIRE(s2 >= s100 - 1e-9);
    REQUIRE(s100 >= sinf - 1e-9);
  }
}

TEST_CASE("permutation invariance and delta vectors") {
  RngStream rng(3, 0);
  auto p = random_probs(10, rng);
  auto r = p;
  std::reverse(r.begin(), r.end());
  for (double q : kOrders) CHECK(renyi(p, RenyiOrder(q)) == doctest::Approx(renyi(r, RenyiOrder(q))).epsilon(1e-13));
  const std::vector<double> delta{0.0, 1.0, 0.0};
  for (double q : {0.5, 1.0, 2.0, 100.0}) CHECK(renyi(delta, RenyiOrder(q)) == 0.0);
  CHECK(renyi(delta, RenyiOrder::infinity()) == 0.0);
}

TEST_CASE("q = 100 is stable for tiny entries") {
  std::vector<double> p(16, 1e-300);
  p[0] = 1.0 - 15e-300;
  const double v = renyi(p, RenyiOrder(100.0));
  CHECK(std::isfinite(v));
  CHECK(v >= 0.0);
  std::vector<double> small(16, 1.0 / 16.0);
  CHECK(renyi(small, RenyiOrder(100.0)) == doctest::Approx(std::log(16.0)));
  // Support threshold: entries below 1e-12 of the max are dropped at q = 0.
  CHECK(renyi(std::vector<double>{1.0 - 1e-14, 1e-14}, RenyiOrder(0.0)) == 0.0);
}

}  // TEST_SUITE

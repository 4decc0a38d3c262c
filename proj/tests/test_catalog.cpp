#include <doctest.h>

#include <numeric>

#include "mriu/catalog.hpp"
#include "mriu/entropy.hpp"
#include "mriu/errors.hpp"
#include "mriu/invariants.hpp"
#include "mriu/minimize.hpp"

using namespace mriu;

TEST_SUITE("catalog") {

TEST_CASE("every catalog state is normalized") {
  for (const auto& e : catalog_entries()) {
    const auto c = named_state(e.name);
    CHECK_MESSAGE(std::abs(c.norm_squared() - 1.0) < 1e-12, e.name);
    CHECK(c.dims() == e.dims);
  }
  CHECK_THROWS_AS(named_state("nope"), DomainError);
}

TEST_CASE("GHZ, HD and HS coefficients") {
  const auto g = named_state("GHZ");
  CHECK(g[0].real() == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(g[7].real() == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(std::abs(g[1]) + std::abs(g[6]) == 0.0);

  const auto hd = named_state("HD");
  for (const char* k : {"1000", "0100", "0010", "0001"}) CHECK(std::abs(inner(qubit_ket(k), hd) - 1 / std::sqrt(6.0)) < 1e-15);
  CHECK(std::abs(inner(qubit_ket("1111"), hd) - std::sqrt(2.0 / 6.0)) < 1e-15);

  const auto hs = named_state("HS");
  const Complex w = std::polar(1.0, 2 * M_PI / 3);
  int nonzero = 0;
  for (std::size_t f = 0; f < hs.size(); ++f) {
    if (std::abs(hs[f]) < 1e-15) continue;
    ++nonzero;
    CHECK(std::abs(hs[f]) == doctest::Approx(1 / std::sqrt(6.0)));
    const Complex ph = hs[f] * std::sqrt(6.0);
    CHECK((std::abs(ph - 1.0) < 1e-12 || std::abs(ph - w) < 1e-12 || std::abs(ph - w * w) < 1e-12));
  }
  CHECK(nonzero == 6);
}

TEST_CASE("Acin form") {
  const double r2 = 1 / std::sqrt(2.0), r3 = 1 / std::sqrt(3.0), r5 = 1 / std::sqrt(5.0);
  CHECK(frobenius_distance(acin_state(r2, 0, 0, 0, r2), named_state("GHZ")) < 1e-15);
  CHECK(frobenius_distance(acin_state(0, r3, r3, r3, 0), named_state("W")) < 1e-15);
  CHECK(frobenius_distance(acin_state(r5, r5, r5, r5, r5), named_state("A5")) < 1e-15);
  CHECK_THROWS_AS(acin_state(1, 1, 0, 0, 0), NormalizationError);
  // Five terms in the given basis, but the tensor itself has generic rank 2.
  CHECK(renyi(prob_vector(named_state("A5")), RenyiOrder(0.0)) == doctest::Approx(std::log(5.0)));
  RiuOptions o;
  o.seed = 3;
  CHECK(riu_minimize(named_state("A5"), RenyiOrder(0.0), o).value == doctest::Approx(std::log(2.0)));
}

TEST_CASE("Dicke states") {
  CHECK(frobenius_distance(dicke_state(3, 1), named_state("W")) < 1e-15);
  CHECK(dicke_state(4, 0) == qubit_ket("0000"));
  const auto d42 = dicke_state(4, 2);
  int n = 0;
  for (const auto& z : d42.coeffs()) {
    if (std::abs(z) > 0) {
      ++n;
      CHECK(std::abs(z) == doctest::Approx(1 / std::sqrt(6.0)));
    }
  }
  CHECK(n == 6);
  CHECK(named_state("D(4,2)") == d42);
  CHECK_THROWS_AS(dicke_state(3, 4), DomainError);
}

TEST_CASE("permutation symmetry") {
  for (const char* name : {"GHZ", "W", "GHZ4", "D(4,1)", "D(4,2)", "D(5,2)", "HD", "Phi4"}) {
    CHECK_MESSAGE(is_permutation_invariant(named_state(name)), name);
  }
  const auto hs = named_state("HS");
  // HS keeps each phase class under the double swap but not under a 4-cycle.
  const std::vector<std::size_t> swaps{1, 0, 3, 2};
  const std::vector<std::size_t> cyc{1, 2, 3, 0};
  CHECK(frobenius_distance(hs, permute_axes(hs, swaps)) < 1e-15);
  CHECK(std::abs(inner(hs, permute_axes(hs, cyc))) < 1e-12);
  CHECK_FALSE(is_permutation_invariant(hs));
}

TEST_CASE("tangle contracts") {
  CHECK(tangle(named_state("GHZ")) == doctest::Approx(1.0));
  CHECK(tangle(named_state("W")) < 1e-15);
}

}  // TEST_SUITE

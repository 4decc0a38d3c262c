#include <doctest.h>

#include <numeric>

#include "mriu/catalog.hpp"
#include "mriu/errors.hpp"
#include "mriu/random.hpp"
#include "mriu/state_io.hpp"
#include "mriu/tensor.hpp"
#include "oracles.hpp"

using namespace mriu;

TEST_SUITE("tensor_core") {

TEST_CASE("unfold places a single entry at the index-formula column") {
  const Dims dims{2, 2, 2};
  const std::vector<std::size_t> digits{1, 0, 1};
  const auto c = StateTensor::basis(dims, digits);
  for (std::size_t k = 0; k < 3; ++k) {
    const auto m = unfold(c, k);
    CHECK(m.rows() == 2);
    CHECK(m.cols() == 4);
    const auto col = static_cast<Eigen::Index>(oracle::unfold_column(digits, dims, k));
    CHECK(m(static_cast<Eigen::Index>(digits[k]), col) == Complex(1.0));
    CHECK(m.cwiseAbs().sum() == doctest::Approx(1.0));
  }
}

TEST_CASE("unfold matches the index formula on every entry") {
  RngStream rng(3, 0);
  const Dims dims{2, 3, 4, 2};
  const auto c = oracle::random_tensor(dims, rng);
  for (std::size_t k = 0; k < dims.size(); ++k) {
    const auto m = unfold(c, k);
    for (std::size_t f = 0; f < c.size(); ++f) {
      const auto dg = c.digits(f);
      REQUIRE(m(static_cast<Eigen::Index>(dg[k]), static_cast<Eigen::Index>(oracle::unfold_column(dg, dims, k))) ==
              c[f]);
    }
  }
}

TEST_CASE("one-way tensor unfolds to a column") {
  const StateTensor c({3}, {1.0, 2.0, Complex(0, 3)});
  const auto m = unfold(c, 0);
  CHECK(m.rows() == 3);
  CHECK(m.cols() == 1);
  CHECK(m(2, 0) == Complex(0, 3));
}

TEST_CASE("for a matrix the two unfoldings are transposes") {
  RngStream rng(4, 0);
  const auto c = oracle::random_tensor({2, 3}, rng);
  CHECK((unfold(c, 1) - unfold(c, 0).transpose()).norm() == 0.0);
}

TEST_CASE("fold inverts unfold bit-exactly") {
  RngStream rng(5, 0);
  for (const Dims& dims : {Dims{2, 2, 2}, Dims{3, 2, 4}, Dims{4, 4, 4, 4}, Dims{2, 3, 2, 3, 2}}) {
    const auto c = oracle::random_tensor(dims, rng);
    for (std::size_t k = 0; k < dims.size(); ++k) CHECK(fold(unfold(c, k), k, dims) == c);
  }
}

TEST_CASE("axis errors") {
  const auto c = StateTensor::zeros({2, 2});
  CHECK_THROWS_AS(unfold(c, 2), AxisError);
  CHECK_THROWS_AS(reduced_density(c, 5), AxisError);
  CHECK_THROWS_AS(kmode_product(ComplexMatrix::Identity(3, 3), c, 0), DimensionError);
  CHECK_THROWS_AS(StateTensor({2, 2}, {1.0}), DimensionError);
}

TEST_CASE("k-mode product: identity, composition, matrix product") {
  RngStream rng(6, 0);
  const auto c = oracle::random_tensor({3, 2, 4}, rng);
  for (std::size_t k = 0; k < 3; ++k) {
    const auto d = static_cast<Eigen::Index>(c.dims()[k]);
    CHECK(kmode_product(ComplexMatrix::Identity(d, d), c, k) == c);
    const ComplexMatrix u = ComplexMatrix::Random(d, d);
    const ComplexMatrix v = ComplexMatrix::Random(d, d);
    CHECK(frobenius_distance(kmode_product(u * v, c, k), kmode_product(u, kmode_product(v, c, k), k)) < 1e-12);
    CHECK((unfold(kmode_product(u, c, k), k) - u * unfold(c, k)).norm() < 1e-12);
  }
  const auto m = oracle::random_tensor({2, 2}, rng);
  const ComplexMatrix u = haar_unitary(2, rng);
  ComplexMatrix as_matrix(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) as_matrix(i, j) = m[static_cast<std::size_t>(2 * i + j)];
  const ComplexMatrix prod = u * as_matrix;
  const auto r = kmode_product(u, m, 0);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(std::abs(r[static_cast<std::size_t>(2 * i + j)] - prod(i, j)) < 1e-14);
}

TEST_CASE("unitary k-mode products preserve the Frobenius norm") {
  RngStream rng(7, 0);
  const auto c = oracle::random_tensor({2, 3, 4}, rng);
  for (std::size_t k = 0; k < 3; ++k) {
    const auto u = haar_unitary(c.dims()[k], rng);
    CHECK(std::abs(frobenius(kmode_product(u, c, k)) - frobenius(c)) < 1e-12);
  }
}

TEST_CASE("inner product and distance") {
  RngStream rng(8, 0);
  const auto a = oracle::random_tensor({2, 3}, rng);
  const auto b = oracle::random_tensor({2, 3}, rng);
  CHECK(std::abs(inner(a, b) - std::conj(inner(b, a))) < 1e-14);
  CHECK(std::abs(inner(a, a).imag()) == 0.0);
  CHECK(std::abs(frobenius(a) * frobenius(a) - inner(a, a).real()) < 1e-12);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  CHECK(frobenius_distance(a, b) == doctest::Approx(std::sqrt(s)).epsilon(1e-14));
  CHECK_THROWS_AS(inner(a, StateTensor::zeros({3, 2})), DimensionError);
  const auto g = named_state("GHZ");
  CHECK(std::abs(inner(g, g) - 1.0) < 1e-14);
}

TEST_CASE("probability vectors") {
  const auto p = prob_vector(named_state("GHZ"));
  CHECK(p[0] == doctest::Approx(0.5));
  CHECK(p[7] == doctest::Approx(0.5));
  CHECK(std::accumulate(p.probs().begin(), p.probs().end(), 0.0) == doctest::Approx(1.0));
  const auto w = prob_vector(named_state("W"));
  int third = 0;
  for (double x : w.probs()) third += std::abs(x - 1.0 / 3.0) < 1e-14;
  CHECK(third == 3);
  const auto e = prob_vector(qubit_ket("000"));
  CHECK(e[0] == 1.0);
  CHECK_THROWS_AS(prob_vector(StateTensor({2}, {1.0, 1.0})), NormalizationError);
  CHECK_THROWS_AS(ProbVector({0.5, 0.6}), NormalizationError);
  CHECK_THROWS_AS(ProbVector({1.5, -0.5}), NormalizationError);
}

TEST_CASE("prob_vector is covariant under axis permutation") {
  RngStream rng(9, 0);
  const auto c = haar_state({2, 3, 2}, rng);
  const std::vector<std::size_t> perm{2, 0, 1};
  const auto pc = permute_axes(c, perm);
  const auto p = prob_vector(c);
  const auto pp = prob_vector(pc);
  for (std::size_t f = 0; f < c.size(); ++f) {
    const auto dg = c.digits(f);
    const std::vector<std::size_t> nd{dg[perm[0]], dg[perm[1]], dg[perm[2]]};
    CHECK(pp[pc.flat_index(nd)] == p[f]);
  }
}

TEST_CASE("reduced density matrices") {
  const auto r0 = reduced_density(qubit_ket("000"), 0);
  CHECK(std::abs(r0(0, 0) - 1.0) < 1e-15);
  CHECK(r0.norm() == doctest::Approx(1.0));
  const auto rg = reduced_density(named_state("GHZ"), 0);
  CHECK((rg - 0.5 * ComplexMatrix::Identity(2, 2)).norm() < 1e-14);
  RngStream rng(10, 0);
  for (int t = 0; t < 20; ++t) {
    const auto c = haar_state({2, 2, 2}, rng);
    for (std::size_t k = 0; k < 3; ++k) {
      const auto rho = reduced_density(c, k);
      CHECK(std::abs(rho.trace() - 1.0) < 1e-10);
      CHECK((rho - rho.adjoint()).norm() < 1e-14);
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho);
      CHECK(es.eigenvalues().minCoeff() > -1e-14);
      Eigen::JacobiSVD<ComplexMatrix> svd(unfold(c, k));
      // Eigen sorts eigenvalues ascending and singular values descending.
      CHECK(std::abs(es.eigenvalues()(1) - std::pow(svd.singularValues()(0), 2)) < 1e-12);
      CHECK(std::abs(es.eigenvalues()(0) - std::pow(svd.singularValues()(1), 2)) < 1e-12);
    }
  }
}

TEST_CASE("normalization helpers") {
  const StateTensor c({2}, {3.0, 4.0});
  CHECK_FALSE(c.is_normalized());
  CHECK(c.normalized().is_normalized());
  CHECK_THROWS_AS(c.require_normalized(), NormalizationError);
  CHECK_THROWS_AS(StateTensor::checked_normalized({2}, {3.0, 4.0}), NormalizationError);
  CHECK_THROWS_AS(StateTensor::zeros({2}).normalized(), NormalizationError);
}

TEST_CASE("JSON state round trip is bit-exact") {
  RngStream rng(11, 0);
  const auto c = haar_state({2, 3, 2}, rng);
  CHECK(state_from_json(state_to_json(c), true) == c);
  for (const auto& e : catalog_entries()) CHECK(state_from_json(state_to_json(named_state(e.name))) == named_state(e.name));
  CHECK_THROWS_AS(state_from_json(R"({"dims":[2,2],"coeffs":[[1,0]]})"), DimensionError);
  CHECK_THROWS_AS(state_from_json(R"({"dims":[2],"coeffs":[[1,0],[1,0]]})", true), NormalizationError);
  CHECK_THROWS_AS(state_from_json("not json"), DomainError);
}

}  // TEST_SUITE

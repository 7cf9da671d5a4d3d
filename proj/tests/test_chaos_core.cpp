#include <doctest.h>

#include <stdexcept>

#include "oracles.hpp"
#include "wickchaos/hermite.hpp"
#include "wickchaos/multi_index.hpp"
#include "wickchaos/rng.hpp"

using namespace wickchaos;

TEST_CASE("factorials and moments") {
  CHECK(factorial(0) == 1.0);
  CHECK(factorial(5) == 120.0);
  double slow = 1.0;
  for (int n = 1; n <= 20; ++n) {
    slow *= n;
    CHECK(factorial(n) == slow);
  }
  CHECK(std::isfinite(factorial(kMaxDegree)));
  CHECK_THROWS_AS(factorial(kMaxDegree + 1), std::domain_error);
  CHECK_THROWS_AS(factorial(-1), std::domain_error);

  CHECK(gaussian_moment(0) == 1.0);
  CHECK(gaussian_moment(1) == 0.0);
  CHECK(gaussian_moment(2) == 1.0);
  CHECK(gaussian_moment(4) == 3.0);
  CHECK(gaussian_moment(6) == 15.0);
  CHECK(gaussian_moment(8) == 105.0);

  CHECK(binomial(6, 3) == 20.0);
  CHECK(binomial(6, 0) == 1.0);
  CHECK(binomial(4, 7) == 0.0);
}

TEST_CASE("multi-index invariants") {
  MultiIndex alpha({2, 0, 3});
  CHECK(alpha.dim() == 3);
  CHECK(alpha.degree() == 5);
  CHECK(alpha.index_factorial() == 12.0);
  CHECK(alpha.plus(MultiIndex({1, 1, 0})) == MultiIndex({3, 1, 3}));
  CHECK(alpha.lowered(0) == MultiIndex({1, 0, 3}));
  CHECK(alpha.raised(1) == MultiIndex({2, 1, 3}));
  CHECK_THROWS_AS(alpha.lowered(1), std::invalid_argument);
  CHECK_THROWS_AS(MultiIndex({1, -1}), std::invalid_argument);

  const std::vector<double> h{2.0, 3.0, 0.5};
  CHECK(alpha.monomial(h) == doctest::Approx(4.0 * 0.125));

  // Factorial overflow is an error, not wraparound.
  CHECK_THROWS_AS(MultiIndex(std::vector<int>{kMaxDegree + 1}).index_factorial(),
                  std::domain_error);
}

TEST_CASE("graded lexicographic enumeration") {
  const auto indices = multi_indices_up_to(2, 3);
  CHECK(indices.size() == 10);  // C(2+3, 2)
  for (size_t i = 0; i + 1 < indices.size(); ++i) {
    CHECK(graded_lex_less(indices[i], indices[i + 1]));
    CHECK_FALSE(graded_lex_less(indices[i + 1], indices[i]));
  }
  CHECK(indices.front() == MultiIndex({0, 0}));
  CHECK(indices[1] == MultiIndex({0, 1}));
  CHECK(indices[2] == MultiIndex({1, 0}));
  CHECK(indices.back() == MultiIndex({3, 0}));

  const auto big = multi_indices_up_to(3, 6);
  CHECK(big.size() == 84);  // C(9, 3)
}

TEST_CASE("hermite evaluation against the monomial oracle") {
  CHECK(hermite_eval(0, 3.7) == 1.0);
  CHECK(hermite_eval(2, 1.0) == 0.0);
  CHECK(hermite_eval(4, 1.0) == -2.0);

  CounterRng rng(7, 0);
  for (int k = 0; k <= 12; ++k) {
    const auto mono = oracles::hermite_monomials(k);
    for (int trial = 0; trial < 8; ++trial) {
      const double x = 4.0 * rng.next_symmetric();
      const double expected = oracles::poly_eval(mono, x);
      CHECK(hermite_eval(k, x) == doctest::Approx(expected).epsilon(1e-12));
    }
  }

  const auto values = hermite_values(6, 1.3);
  for (int k = 0; k <= 6; ++k) CHECK(values[static_cast<size_t>(k)] == hermite_eval(k, 1.3));

  CHECK_THROWS_AS(hermite_eval(kMaxDegree + 1, 0.0), std::domain_error);
}

TEST_CASE("hermite product linearization coefficients") {
  // He_2 * He_2 = He_4 + 4 He_2 + 2 He_0
  CHECK(hermite_product_coeff(2, 2, 0) == 1.0);
  CHECK(hermite_product_coeff(2, 2, 1) == 4.0);
  CHECK(hermite_product_coeff(2, 2, 2) == 2.0);
  CHECK(hermite_product_coeff(3, 1, 1) == 3.0);
  CHECK(hermite_product_coeff(2, 3, 4) == 0.0);
}

TEST_CASE("chaos expansion container") {
  ChaosExpansion F(1);
  CHECK(F.eval(std::vector<double>{0.3}) == 0.0);  // empty expansion

  F.set_coeff(MultiIndex({2}), 1.0);
  CHECK(F.eval(std::vector<double>{0.0}) == -1.0);  // He_2(0) = -1
  CHECK(F.l2_norm_sq() == 2.0);
  CHECK(F.degree() == 2);

  ChaosExpansion quartic(1);
  quartic.set_coeff(MultiIndex({0}), 3.0);
  quartic.set_coeff(MultiIndex({2}), 6.0);
  quartic.set_coeff(MultiIndex({4}), 1.0);
  CHECK(quartic.eval(std::vector<double>{1.0}) == doctest::Approx(1.0).epsilon(1e-14));

  // x^4 = He_4 + 6 He_2 + 3: evaluation matches the monomial at random points.
  CounterRng rng(11, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const double x = 3.0 * rng.next_symmetric();
    CHECK(quartic.eval(std::vector<double>{x}) ==
          doctest::Approx(x * x * x * x).epsilon(1e-12));
  }

  CHECK(quartic.mean() == 3.0);
  CHECK(quartic.variance() == doctest::Approx(2.0 * 36.0 + 24.0));

  SUBCASE("degree caps are enforced") {
    ChaosExpansion capped(2);
    capped.set_degree_cap(2);
    capped.set_coeff(MultiIndex({1, 1}), 0.5);
    CHECK_THROWS_AS(capped.set_coeff(MultiIndex({2, 1}), 1.0), std::invalid_argument);
    CHECK_THROWS_AS(capped.set_degree_cap(1), std::invalid_argument);
  }

  SUBCASE("dimension mismatches are errors") {
    CHECK_THROWS_AS(F.set_coeff(MultiIndex({1, 1}), 1.0), std::invalid_argument);
    CHECK_THROWS_AS(F.eval(std::vector<double>{0.0, 0.0}), std::invalid_argument);
  }

  SUBCASE("zero coefficients are dropped") {
    ChaosExpansion G(1);
    G.set_coeff(MultiIndex({3}), 2.0);
    G.add_to_coeff(MultiIndex({3}), -2.0);
    CHECK(G.term_count() == 0);
    CHECK(G.degree() == 0);
  }
}

#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "wickchaos/hermite.hpp"
#include "wickchaos/multi_index.hpp"
#include "wickchaos/quadrature.hpp"

using namespace wickchaos;

TEST_CASE("low-order rules match hand values") {
  const auto r1 = QuadratureRule::gauss_hermite(1);
  CHECK(r1.nodes() == std::vector<double>{0.0});
  CHECK(r1.weights() == std::vector<double>{1.0});

  const auto r2 = QuadratureRule::gauss_hermite(2);
  CHECK(r2.nodes()[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(r2.nodes()[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r2.weights()[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(r2.weights()[1] == doctest::Approx(0.5).epsilon(1e-14));

  const auto r3 = QuadratureRule::gauss_hermite(3);
  CHECK(r3.nodes()[0] == doctest::Approx(-std::sqrt(3.0)).epsilon(1e-14));
  CHECK(r3.nodes()[1] == 0.0);
  CHECK(r3.nodes()[2] == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
  CHECK(r3.weights()[0] == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  CHECK(r3.weights()[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(r3.weights()[2] == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
}

TEST_CASE("weights sum to one") {
  for (int m : {1, 2, 3, 5, 8, 13, 21, 34, 64}) {
    const auto rule = QuadratureRule::gauss_hermite(m);
    double total = 0.0;
    for (double w : rule.weights()) total += w;
    CHECK(std::abs(total - 1.0) <= 1e-14);
  }
}

TEST_CASE("moment exactness through degree 2m-1") {
  // Oracle: E[X^k] = (k-1)!! for even k, 0 for odd k. Absolute accuracy at
  // 1e-12 is demanded while the moment itself is O(1); the huge even moments
  // are held to the same figure relative to their size, which is all binary64
  // admits.
  for (int m = 1; m <= 10; ++m) {
    const auto rule = QuadratureRule::gauss_hermite(m);
    for (int k = 0; k <= rule.exactness_degree(); ++k) {
      // Summing symmetric node pairs together lets odd powers cancel exactly.
      double sum = 0.0;
      auto term = [&](int j) {
        return rule.weights()[static_cast<size_t>(j)] *
               std::pow(rule.nodes()[static_cast<size_t>(j)], k);
      };
      for (int j = 0; j < m / 2; ++j) sum += term(j) + term(m - 1 - j);
      if (m % 2 == 1) sum += term(m / 2);
      const double moment = gaussian_moment(k);
      CHECK(std::abs(sum - moment) <= 1e-12 * (1.0 + std::abs(moment)));
    }
  }
  // Large rules keep relative accuracy on big moments.
  const auto r32 = QuadratureRule::gauss_hermite(32);
  for (int k : {20, 30, 40}) {
    double sum = 0.0;
    for (int j = 0; j < 32; ++j)
      sum += r32.weights()[static_cast<size_t>(j)] * std::pow(r32.nodes()[static_cast<size_t>(j)], k);
    CHECK(sum == doctest::Approx(gaussian_moment(k)).epsilon(1e-12));
  }
}

TEST_CASE("orthogonality of the Hermite family under quadrature") {
  const int m = 8;
  const auto rule = QuadratureRule::gauss_hermite(m);
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < m; ++k) {
      const double pairing = rule.integrate(
          [&](double x) { return hermite_eval(j, x) * hermite_eval(k, x); });
      const double expected = j == k ? factorial(j) : 0.0;
      CHECK(std::abs(pairing - expected) <= 1e-10);
    }
  }
}

TEST_CASE("rule order selection and caps") {
  CHECK(QuadratureRule::order_for_degree(0) == 1);
  CHECK(QuadratureRule::order_for_degree(5) == 3);
  CHECK(QuadratureRule::order_for_degree(6) == 4);
  CHECK_THROWS_AS(QuadratureRule::gauss_hermite(0), std::invalid_argument);
  CHECK_THROWS_AS(QuadratureRule::gauss_hermite(QuadratureRule::kMaxOrder + 1),
                  std::invalid_argument);
}

TEST_CASE("tensor grids integrate separable moments") {
  const auto rule = QuadratureRule::gauss_hermite(4);
  const double value = gauss_expectation(
      [](std::span<const double> x) { return x[0] * x[0] * x[1] * x[1] * x[1] * x[1]; }, 2, rule);
  CHECK(value == doctest::Approx(3.0).epsilon(1e-13));  // E[X^2] E[Y^4]

  TensorGrid grid(rule, 3);
  CHECK(grid.size() == 64);
  double mass = 0.0;
  grid.for_each([&](std::span<const double>, double w) { mass += w; });
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-14));
}

#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "oracles.hpp"
#include "wickchaos/operators.hpp"
#include "wickchaos/rng.hpp"
#include "wickchaos/wick.hpp"

using namespace wickchaos;

TEST_CASE("second quantization") {
  const CameronMartinVector h(std::vector<double>{0.8, -0.4});
  const auto eh = stochastic_exponential(h, 5);

  SUBCASE("Gamma(lambda) E(h) = E(lambda h)") {
    for (double lambda : {0.5, 1.3, 2.0}) {
      const auto scaled = stochastic_exponential(h.scaled(lambda), 5);
      CHECK(max_coeff_delta(gamma_operator(eh.expansion, lambda), scaled.expansion) <= 1e-14);
    }
  }

  SUBCASE("Gamma(1) is the identity, Gamma(0) is the mean") {
    CounterRng rng(31, 0);
    const ChaosExpansion F = random_polynomial(2, 4, rng);
    CHECK(max_coeff_delta(gamma_operator(F, 1.0), F) == 0.0);
    const ChaosExpansion mean = gamma_operator(F, 0.0);
    CHECK(mean.term_count() == 1);
    CHECK(mean.mean() == F.mean());
  }

  SUBCASE("semigroup law") {
    CounterRng rng(32, 0);
    const ChaosExpansion F = random_polynomial(1, 5, rng);
    const ChaosExpansion two_step = gamma_operator(gamma_operator(F, 1.7), 0.6);
    const ChaosExpansion one_step = gamma_operator(F, 1.7 * 0.6);
    CHECK(max_coeff_delta(two_step, one_step) <= 1e-12);
  }

  CHECK_THROWS_AS(gamma_operator(ChaosExpansion::constant(1, 1.0), -0.1), std::invalid_argument);
}

TEST_CASE("Ornstein-Uhlenbeck semigroup") {
  const ChaosExpansion he2 = ChaosExpansion::hermite_basis(MultiIndex({2}));

  CHECK(max_coeff_delta(ou_apply(he2, 0.0), he2) == 0.0);
  CHECK(ou_apply(he2, std::log(2.0)).coeff(MultiIndex({2})) ==
        doctest::Approx(0.25).epsilon(1e-14));
  CHECK(ou_apply(he2, 60.0).l2_norm_sq() <= 1e-40);  // only the mean survives
  CHECK_THROWS_AS(ou_apply(he2, -1.0), std::invalid_argument);

  SUBCASE("matches the Mehler integral") {
    CounterRng rng(33, 0);
    const ChaosExpansion F = random_polynomial(1, 5, rng);
    const auto rule = QuadratureRule::gauss_hermite(QuadratureRule::order_for_degree(F.degree()));
    for (double t : {0.2, std::log(2.0), 1.5}) {
      const ChaosExpansion Pt = ou_apply(F, t);
      for (double w : {-2.0, -0.7, 0.0, 1.1, 2.4}) {
        const std::vector<double> pt{w};
        CHECK(Pt.eval(pt) ==
              doctest::Approx(oracles::mehler_apply_at(F, t, pt, rule)).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("pairings and norms") {
  for (int k : {0, 1, 3, 5}) {
    const ChaosExpansion hk = ChaosExpansion::hermite_basis(MultiIndex({k}));
    CHECK(l2_pairing(hk, hk) == factorial(k));
  }

  CounterRng rng(34, 0);
  const ChaosExpansion F = random_polynomial(2, 4, rng);
  CHECK(l2_pairing(F, ChaosExpansion::constant(2, 1.0)) == F.mean());
  CHECK(glambda_norm(F, 1.0) == doctest::Approx(std::sqrt(F.l2_norm_sq())));
  CHECK(glambda_norm(ChaosExpansion::hermite_basis(MultiIndex({2})), std::sqrt(2.0)) ==
        doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-14));
  CHECK(glambda_norm(ChaosExpansion::constant(1, 1.0), 17.0) == 1.0);

  SUBCASE("exponential pairing converges to e^{<h,k>}") {
    const CameronMartinVector h(std::vector<double>{0.6, -0.8});
    const CameronMartinVector k(std::vector<double>{0.3, 0.9});
    double prev_err = 1e9;
    for (int cap : {4, 8, 16}) {
      const double pairing =
          l2_pairing(stochastic_exponential(h, cap).expansion, stochastic_exponential(k, cap).expansion);
      const double err = std::abs(pairing - std::exp(h.dot(k)));
      CHECK(err < prev_err + 1e-15);
      prev_err = err;
    }
    CHECK(prev_err <= 1e-12);
  }
}

TEST_CASE("stochastic exponentials") {
  const auto zero = stochastic_exponential(CameronMartinVector::zero(2), 4);
  CHECK(zero.expansion.term_count() == 1);
  CHECK(zero.expansion.mean() == 1.0);
  CHECK(zero.tail_norm_sq == 0.0);

  const auto e1 = stochastic_exponential(CameronMartinVector(std::vector<double>{1.0}), 2);
  CHECK(e1.expansion.coeff(MultiIndex({0})) == 1.0);
  CHECK(e1.expansion.coeff(MultiIndex({1})) == 1.0);
  CHECK(e1.expansion.coeff(MultiIndex({2})) == 0.5);
  // tail^2 = sum_{k>2} 1/k! = e - 1 - 1 - 1/2
  CHECK(e1.tail_norm_sq == doctest::Approx(std::exp(1.0) - 2.5).epsilon(1e-12));

  for (int cap : {0, 1, 5}) {
    const auto e = stochastic_exponential(CameronMartinVector(std::vector<double>{0.3, 0.4}), cap);
    CHECK(e.expansion.mean() == 1.0);
  }
}

TEST_CASE("s-transform") {
  const CameronMartinVector h(std::vector<double>{0.5, -0.25});
  CHECK(s_transform(ChaosExpansion::constant(2, 1.0), h) == 1.0);

  const CameronMartinVector g(std::vector<double>{2.0, 4.0});
  CHECK(s_transform(delta_functional(g), h) == doctest::Approx(g.dot(h)));

  SUBCASE("multiplicativity under the Wick product") {
    CounterRng rng(35, 0);
    for (int trial = 0; trial < 10; ++trial) {
      const ChaosExpansion F = random_polynomial(2, 4, rng);
      const ChaosExpansion G = random_polynomial(2, 4, rng);
      const CameronMartinVector u = random_unit_box_vector(2, rng);
      CHECK(s_transform(wick_product(F, G), u) ==
            doctest::Approx(s_transform(F, u) * s_transform(G, u)).epsilon(1e-11));
    }
  }
}

TEST_CASE("wick multiplication by delta(h)") {
  const CameronMartinVector h(std::vector<double>{0.7, -0.2});

  const ChaosExpansion from_unit = wick_with_delta(ChaosExpansion::constant(2, 1.0), h);
  CHECK(max_coeff_delta(from_unit, delta_functional(h)) == 0.0);

  const CameronMartinVector e0(std::vector<double>{1.0});
  const ChaosExpansion sq = wick_with_delta(delta_functional(e0), e0);
  CHECK(sq.coeff(MultiIndex({2})) == doctest::Approx(1.0));
  CHECK(sq.term_count() == 1);  // delta(h)^2 - 1 in the Hermite basis

  const ChaosExpansion zero = wick_with_delta(
      [] {
        CounterRng rng(36, 0);
        return random_polynomial(2, 3, rng);
      }(),
      CameronMartinVector::zero(2));
  CHECK(zero.term_count() == 0);

  // The built-in identity cross-check runs on every call.
  CounterRng rng(37, 0);
  for (int trial = 0; trial < 5; ++trial)
    CHECK_NOTHROW(wick_with_delta(random_polynomial(2, 4, rng), random_cm_vector(2, rng)));
}

TEST_CASE("shifted expectations realize Cameron-Martin translation") {
  const auto rule = QuadratureRule::gauss_hermite(8);
  const CameronMartinVector one(std::vector<double>{1.0});

  CHECK(shifted_expectation(ChaosExpansion::hermite_basis(MultiIndex({1})), one, rule) ==
        doctest::Approx(1.0).epsilon(1e-13));
  CHECK(shifted_expectation(ChaosExpansion::hermite_basis(MultiIndex({2})), one, rule) ==
        doctest::Approx(1.0).epsilon(1e-13));

  CounterRng rng(38, 0);
  const ChaosExpansion F = random_polynomial(2, 5, rng);
  CHECK(shifted_expectation(F, CameronMartinVector::zero(2), rule) ==
        doctest::Approx(F.mean()).epsilon(1e-12));

  for (int trial = 0; trial < 8; ++trial) {
    const CameronMartinVector a = random_unit_box_vector(2, rng);
    CHECK(std::abs(shifted_expectation(F, a, rule) - s_transform(F, a)) <= 1e-10);
  }

  CHECK_THROWS_AS(
      shifted_expectation(F, CameronMartinVector::zero(2), QuadratureRule::gauss_hermite(2)),
      std::invalid_argument);
}

TEST_CASE("hypercontractivity sample") {
  // || Gamma(1/sqrt2) G ||_3 <= || G ||_2
  CounterRng rng(39, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = 1 + trial % 2;
    const ChaosExpansion G = random_polynomial(dim, 4, rng);
    const ChaosExpansion H = gamma_operator(G, 1.0 / std::sqrt(2.0));
    const auto rule = QuadratureRule::gauss_hermite(2 * G.degree() + 2);
    const double cubic = lp_norm_quadrature(H, 3.0, rule);
    CHECK(cubic <= std::sqrt(G.l2_norm_sq()) + 1e-6);
  }
}

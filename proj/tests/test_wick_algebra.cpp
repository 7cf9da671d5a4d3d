#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "oracles.hpp"
#include "wickchaos/gradient.hpp"
#include "wickchaos/operators.hpp"
#include "wickchaos/rng.hpp"
#include "wickchaos/wick.hpp"

using namespace wickchaos;

namespace {

ChaosExpansion he(std::vector<int> alpha) {
  return ChaosExpansion::hermite_basis(MultiIndex(std::move(alpha)));
}

}  // namespace

TEST_CASE("wick product basics") {
  // He_2 <> He_2 = He_4, i.e. (x^2-1) <> (x^2-1) = x^4 - 6x^2 + 3.
  const ChaosExpansion w = wick_product(he({2}), he({2}));
  CHECK(w.term_count() == 1);
  CHECK(w.coeff(MultiIndex({4})) == 1.0);

  const ChaosExpansion F = [] {
    CounterRng rng(21, 0);
    return random_polynomial(2, 3, rng);
  }();
  const ChaosExpansion unit = ChaosExpansion::constant(2, 1.0);
  CHECK(max_coeff_delta(wick_product(F, unit), F) == 0.0);

  CHECK_THROWS_AS(wick_product(he({1}), he({1, 0})), std::invalid_argument);
}

TEST_CASE("wick product of truncated exponentials") {
  // E_N(h) <> E_N(k), cut back to degree N, is E_N(h+k).
  const CameronMartinVector h(std::vector<double>{0.7, -0.3});
  const CameronMartinVector k(std::vector<double>{-0.2, 0.5});
  const int N = 6;
  const auto eh = stochastic_exponential(h, N);
  const auto ek = stochastic_exponential(k, N);
  const ChaosExpansion product = wick_product(eh.expansion, ek.expansion).truncated(N);
  const auto sum = stochastic_exponential(h.plus(k), N);
  CHECK(max_coeff_delta(product, sum.expansion) <= 1e-14);
}

TEST_CASE("pointwise product linearization") {
  const ChaosExpansion p11 = pointwise_product(he({1}), he({1}));
  CHECK(p11.coeff(MultiIndex({2})) == 1.0);
  CHECK(p11.coeff(MultiIndex({0})) == 1.0);

  const ChaosExpansion p22 = pointwise_product(he({2}), he({2}));
  CHECK(p22.coeff(MultiIndex({4})) == 1.0);
  CHECK(p22.coeff(MultiIndex({2})) == 4.0);
  CHECK(p22.coeff(MultiIndex({0})) == 2.0);

  CounterRng rng(22, 0);
  const ChaosExpansion F = random_polynomial(2, 4, rng);
  CHECK(max_coeff_delta(pointwise_product(F, ChaosExpansion::constant(2, 1.0)), F) == 0.0);

  // Oracle: the expansion of F*G must evaluate to eval(F) * eval(G).
  const ChaosExpansion G = random_polynomial(2, 3, rng);
  const ChaosExpansion FG = pointwise_product(F, G);
  for (int trial = 0; trial < 12; ++trial) {
    const std::vector<double> x{2.5 * rng.next_symmetric(), 2.5 * rng.next_symmetric()};
    CHECK(FG.eval(x) == doctest::Approx(F.eval(x) * G.eval(x)).epsilon(1e-11));
  }
}

TEST_CASE("wick algebra laws on random polynomials") {
  CounterRng rng(23, 0);
  for (int trial = 0; trial < 6; ++trial) {
    const int dim = 1 + trial % 2;
    const ChaosExpansion F = random_polynomial(dim, 3, rng);
    const ChaosExpansion G = random_polynomial(dim, 3, rng);
    const ChaosExpansion H = random_polynomial(dim, 2, rng);

    // commutativity
    CHECK(max_coeff_delta(wick_product(F, G), wick_product(G, F)) <= 1e-12);
    // associativity
    CHECK(max_coeff_delta(wick_product(wick_product(F, G), H),
                          wick_product(F, wick_product(G, H))) <= 1e-12);
    // bilinearity: F <> (G + H) = F <> G + F <> H
    ChaosExpansion GH(dim);
    for (const auto& [a, c] : G.coeffs()) GH.add_to_coeff(a, c);
    for (const auto& [a, c] : H.coeffs()) GH.add_to_coeff(a, c);
    ChaosExpansion rhs = wick_product(F, G);
    const ChaosExpansion FH = wick_product(F, H);
    for (const auto& [a, c] : FH.coeffs()) rhs.add_to_coeff(a, c);
    CHECK(max_coeff_delta(wick_product(F, GH), rhs) <= 1e-12);

    // E[F <> G] = E[F] E[G], exact on coefficients.
    CHECK(wick_product(F, G).mean() == F.mean() * G.mean());
  }
}

TEST_CASE("gradients") {
  // D He_3 = 3 He_2
  const GradientStack g3 = gradient(he({3}));
  CHECK(g3.component_count() == 1);
  CHECK(g3.components()[0].coeff(MultiIndex({2})) == 3.0);

  // gradient of delta(h) is the constant vector h
  const CameronMartinVector h(std::vector<double>{0.4, -1.1, 2.0});
  const GradientStack gd = gradient(delta_functional(h));
  for (int i = 0; i < 3; ++i) {
    std::vector<int> tuple{i};
    CHECK(gd.component(tuple).coeff(MultiIndex::zeros(3)) == h[i]);
    CHECK(gd.component(tuple).term_count() == 1);
  }

  // constants vanish
  CHECK(gradient(ChaosExpansion::constant(2, 5.0)).l2_norm_sq() == 0.0);
}

TEST_CASE("iterated gradients and the closed-form norm") {
  const ChaosExpansion F = he({3});
  const GradientStack d2 = iterated_gradient(F, 2);
  CHECK(d2.components()[0].coeff(MultiIndex({1})) == 6.0);
  CHECK(d2.l2_norm_sq() == doctest::Approx(36.0));
  CHECK(iterated_gradient(F, 3).l2_norm_sq() == doctest::Approx(36.0));
  CHECK(iterated_gradient(F, 4).l2_norm_sq() == 0.0);  // beyond the degree

  CHECK(gradient_norm_sq_closed_form(F, 1) == doctest::Approx(18.0));
  CHECK(gradient_norm_sq_closed_form(F, 2) == doctest::Approx(36.0));
  CHECK(gradient_norm_sq_closed_form(F, 3) == doctest::Approx(36.0));

  CounterRng rng(24, 0);
  for (int dim = 1; dim <= 3; ++dim) {
    const ChaosExpansion G = random_polynomial(dim, 4, rng);
    for (int l = 1; l <= 4; ++l) {
      const GradientStack stack = iterated_gradient(G, l);
      const double closed = gradient_norm_sq_closed_form(G, l);
      CHECK(stack.l2_norm_sq() == doctest::Approx(closed).epsilon(1e-12));

      // quadrature route
      const auto rule = QuadratureRule::gauss_hermite(
          QuadratureRule::order_for_degree(std::max(0, 2 * (G.degree() - l))));
      const double quad = gauss_expectation(
          [&](std::span<const double> x) { return stack.norm_sq_at(x); }, dim, rule);
      CHECK(std::abs(quad - closed) <= 1e-9 * (1.0 + std::abs(closed)));
    }
  }
}

TEST_CASE("gradient stacks are symmetric in the tuple") {
  CounterRng rng(25, 0);
  const ChaosExpansion F = random_polynomial(3, 4, rng);
  const GradientStack stack = iterated_gradient(F, 3);
  const std::vector<std::vector<int>> pairs[] = {
      {{0, 1, 2}, {2, 1, 0}}, {{0, 0, 1}, {1, 0, 0}}, {{2, 1, 1}, {1, 1, 2}}};
  for (const auto& pair : pairs) {
    CHECK(max_coeff_delta(stack.component(pair[0]), stack.component(pair[1])) == 0.0);
  }
}

TEST_CASE("pointwise-vs-wick identity, coefficient form") {
  // F^2 - F<>F = sum_{j>=1} (1/j!) sum_tuples (D^j F)_t <> (D^j F)_t
  CounterRng rng(26, 0);
  for (int dim = 1; dim <= 3; ++dim) {
    const int degree = dim == 1 ? 6 : 4;
    const ChaosExpansion F = random_polynomial(dim, degree, rng);
    ChaosExpansion lhs = pointwise_product(F, F);
    const ChaosExpansion ww = wick_product(F, F);
    for (const auto& [a, c] : ww.coeffs()) lhs.add_to_coeff(a, -c);

    ChaosExpansion rhs(dim);
    for (int j = 1; j <= F.degree(); ++j) {
      const GradientStack stack = iterated_gradient(F, j);
      const double inv = 1.0 / factorial(j);
      for (const ChaosExpansion& comp : stack.components()) {
        if (comp.term_count() == 0) continue;
        const ChaosExpansion sq = wick_product(comp, comp);
        for (const auto& [a, c] : sq.coeffs()) rhs.add_to_coeff(a, inv * c);
      }
    }
    CHECK(max_coeff_delta(lhs, rhs) <= 1e-9);
  }
}

TEST_CASE("pointwise-vs-wick identity at points, one dimension") {
  // (f <> f)(x) = f(x)^2 + sum_l (-1)^l / l! [f^(l)(x)]^2
  CounterRng rng(27, 0);
  const auto rule = QuadratureRule::gauss_hermite(13);
  for (int trial = 0; trial < 10; ++trial) {
    const ChaosExpansion f = random_polynomial(1, 6, rng);
    const ChaosExpansion ff = wick_product(f, f);
    for (double x : rule.nodes()) {
      const std::vector<double> pt{x};
      double expect = f.eval(pt) * f.eval(pt);
      double sign = -1.0;
      for (int l = 1; l <= f.degree(); ++l) {
        const double d = iterated_gradient(f, l).components()[0].eval(pt);
        expect += sign / factorial(l) * d * d;
        sign = -sign;
      }
      CHECK(ff.eval(pt) == doctest::Approx(expect).epsilon(1e-10));
    }
  }
}

#include "wickchaos/operators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "wickchaos/gradient.hpp"
#include "wickchaos/wick.hpp"

namespace wickchaos {

ChaosExpansion gamma_operator(const ChaosExpansion& F, double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("gamma_operator: lambda must be >= 0");
  ChaosExpansion out(F.dim());
  if (F.degree_cap()) out.set_degree_cap(*F.degree_cap());
  for (const auto& [alpha, c] : F.coeffs())
    out.set_coeff(alpha, std::pow(lambda, alpha.degree()) * c);
  return out;
}

ChaosExpansion ou_apply(const ChaosExpansion& F, double t) {
  if (t < 0.0) throw std::invalid_argument("ou_apply: negative time");
  return gamma_operator(F, std::exp(-t));
}

double l2_pairing(const ChaosExpansion& F, const ChaosExpansion& G) {
  if (F.dim() != G.dim()) throw std::invalid_argument("l2_pairing: dimension mismatch");
  // Iterate the sparser operand.
  const ChaosExpansion& lead = F.term_count() <= G.term_count() ? F : G;
  const ChaosExpansion& other = F.term_count() <= G.term_count() ? G : F;
  double acc = 0.0;
  for (const auto& [alpha, c] : lead.coeffs()) {
    const double d = other.coeff(alpha);
    if (d != 0.0) acc += alpha.index_factorial() * c * d;
  }
  return acc;
}

double glambda_norm(const ChaosExpansion& F, double lambda) {
  if (lambda <= 0.0) throw std::invalid_argument("glambda_norm: lambda must be > 0");
  double acc = 0.0;
  for (const auto& [alpha, c] : F.coeffs())
    acc += alpha.index_factorial() * std::pow(lambda, 2 * alpha.degree()) * (c * c);
  return std::sqrt(acc);
}

double s_transform(const ChaosExpansion& F, const CameronMartinVector& h) {
  if (F.dim() != h.dim()) throw std::invalid_argument("s_transform: dimension mismatch");
  double acc = 0.0;
  for (const auto& [alpha, c] : F.coeffs()) acc += c * alpha.monomial(h.span());
  return acc;
}

ChaosExpansion wick_with_delta(const ChaosExpansion& F, const CameronMartinVector& h) {
  if (F.dim() != h.dim()) throw std::invalid_argument("wick_with_delta: dimension mismatch");
  const ChaosExpansion dh = delta_functional(h);
  const ChaosExpansion by_rule = wick_product(F, dh);

  // F * delta(h) - <DF, h>_H
  ChaosExpansion by_identity = pointwise_product(F, dh);
  const GradientStack grad = gradient(F);
  std::vector<int> tuple(1);
  for (int i = 0; i < F.dim(); ++i) {
    tuple[0] = i;
    for (const auto& [alpha, c] : grad.component(tuple).coeffs())
      by_identity.add_to_coeff(alpha, -h[i] * c);
  }

  if (max_coeff_delta(by_rule, by_identity) > 1e-10)
    throw std::logic_error("wick_with_delta: coefficient rule and gradient identity disagree");
  return by_rule;
}

double shifted_expectation(const ChaosExpansion& F, const CameronMartinVector& a,
                           const QuadratureRule& rule) {
  if (F.dim() != a.dim()) throw std::invalid_argument("shifted_expectation: dimension mismatch");
  if (rule.exactness_degree() < F.degree())
    throw std::invalid_argument("shifted_expectation: rule of order " + std::to_string(rule.size()) +
                                " insufficient for degree " + std::to_string(F.degree()));
  std::vector<double> shifted(static_cast<size_t>(F.dim()));
  return gauss_expectation(
      [&](std::span<const double> x) {
        for (size_t i = 0; i < shifted.size(); ++i) shifted[i] = x[i] + a[static_cast<int>(i)];
        return F.eval(shifted);
      },
      F.dim(), rule);
}

double lp_norm_quadrature(const ChaosExpansion& F, double p, const QuadratureRule& rule) {
  if (p < 1.0) throw std::invalid_argument("lp_norm_quadrature: p must be >= 1");
  const double moment = gauss_expectation(
      [&](std::span<const double> x) { return std::pow(std::abs(F.eval(x)), p); }, F.dim(), rule);
  return std::pow(moment, 1.0 / p);
}

}  // namespace wickchaos

#pragma once

#include <functional>
#include <map>
#include <optional>

#include "wickchaos/chaos_expansion.hpp"
#include "wickchaos/quadrature.hpp"

namespace wickchaos {

struct Projection {
  ChaosExpansion expansion;
  // True when the rule order could not be certified against the integrand
  // degree, i.e. the coefficients are quadrature approximations.
  bool approximate;
};

// Hermite coefficients c_alpha = E[f He_alpha] / alpha! for |alpha| <=
// degree_cap, on the tensor grid of `rule`. Pass `poly_degree` when f is a
// polynomial of known total degree; the rule is then required to integrate
// degree poly_degree + degree_cap exactly and the result is flagged exact.
Projection project(const std::function<double(std::span<const double>)>& f, int dim,
                   int degree_cap, const QuadratureRule& rule,
                   std::optional<int> poly_degree = std::nullopt);

// Coefficients through expectations of partial derivatives:
// c_alpha = E[d^alpha f] / alpha!. The caller supplies every partial with
// |alpha| <= degree_cap (alpha = 0 meaning f itself); a missing entry is an
// error.
using PartialDerivativeMap =
    std::map<MultiIndex, std::function<double(std::span<const double>)>, GradedLexLess>;

ChaosExpansion stroock_project(const PartialDerivativeMap& partials, int dim, int degree_cap,
                               const QuadratureRule& rule);

}  // namespace wickchaos

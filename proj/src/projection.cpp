#include "wickchaos/projection.hpp"

#include <cmath>
#include <stdexcept>

#include "wickchaos/hermite.hpp"

namespace wickchaos {

Projection project(const std::function<double(std::span<const double>)>& f, int dim,
                   int degree_cap, const QuadratureRule& rule, std::optional<int> poly_degree) {
  if (dim < 1) throw std::invalid_argument("project: dimension must be positive");
  if (degree_cap < 0) throw std::invalid_argument("project: negative degree cap");

  bool approximate = true;
  if (poly_degree) {
    if (rule.exactness_degree() < *poly_degree + degree_cap)
      throw std::invalid_argument("project: rule of order " + std::to_string(rule.size()) +
                                  " cannot integrate degree " +
                                  std::to_string(*poly_degree + degree_cap) + " exactly");
    approximate = false;
  }

  const auto alphas = multi_indices_up_to(dim, degree_cap);
  std::vector<double> acc(alphas.size(), 0.0);

  // Hermite values per axis and node, shared across all coefficients.
  const int m = rule.size();
  std::vector<std::vector<double>> table(static_cast<size_t>(m));
  for (int j = 0; j < m; ++j)
    table[static_cast<size_t>(j)] = hermite_values(degree_cap, rule.nodes()[static_cast<size_t>(j)]);

  std::vector<int> idx(static_cast<size_t>(dim), 0);
  TensorGrid grid(rule, dim);
  std::size_t flat = 0;
  grid.for_each([&](std::span<const double> x, double w) {
    // Recover per-axis node indices from the row-major position.
    std::size_t rest = flat++;
    for (int a = dim - 1; a >= 0; --a) {
      idx[static_cast<size_t>(a)] = static_cast<int>(rest % static_cast<size_t>(m));
      rest /= static_cast<size_t>(m);
    }
    const double fx = f(x);
    if (!std::isfinite(fx)) throw std::runtime_error("project: non-finite function value at node");
    const double wf = w * fx;
    for (size_t k = 0; k < alphas.size(); ++k) {
      double he = 1.0;
      for (int a = 0; a < dim; ++a)
        he *= table[static_cast<size_t>(idx[static_cast<size_t>(a)])][static_cast<size_t>(alphas[k][a])];
      acc[k] += wf * he;
    }
  });

  ChaosExpansion F(dim);
  F.set_degree_cap(degree_cap);
  for (size_t k = 0; k < alphas.size(); ++k)
    F.set_coeff(alphas[k], acc[k] / alphas[k].index_factorial());
  return {std::move(F), approximate};
}

ChaosExpansion stroock_project(const PartialDerivativeMap& partials, int dim, int degree_cap,
                               const QuadratureRule& rule) {
  if (dim < 1) throw std::invalid_argument("stroock_project: dimension must be positive");
  ChaosExpansion F(dim);
  F.set_degree_cap(degree_cap);
  for (const MultiIndex& alpha : multi_indices_up_to(dim, degree_cap)) {
    const auto it = partials.find(alpha);
    if (it == partials.end())
      throw std::invalid_argument("stroock_project: missing partial derivative for " +
                                  alpha.to_string());
    const double mean = gauss_expectation(it->second, dim, rule);
    F.set_coeff(alpha, mean / alpha.index_factorial());
  }
  return F;
}

}  // namespace wickchaos

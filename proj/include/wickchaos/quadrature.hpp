#pragma once

#include <functional>
#include <span>
#include <vector>

namespace wickchaos {

// Gauss-Hermite rule for the standard Gaussian weight e^{-x^2/2}/sqrt(2 pi).
// An m-point rule integrates polynomials of degree <= 2m-1 exactly.
class QuadratureRule {
 public:
  // Largest per-axis order we construct; beyond this the eigen-solve of the
  // Jacobi matrix loses the accuracy the rest of the library relies on.
  static constexpr int kMaxOrder = 64;

  // Golub-Welsch on the Jacobi matrix of the probabilists' recurrence,
  // followed by a few Newton polish steps on He_m and closed-form weights.
  static QuadratureRule gauss_hermite(int m);

  // Smallest per-axis order that integrates total degree `d` exactly:
  // floor(d/2) + 1.
  static int order_for_degree(int degree);

  int size() const { return static_cast<int>(nodes_.size()); }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  // Degree through which the rule is exact: 2m - 1.
  int exactness_degree() const { return 2 * size() - 1; }

  // E[f(X)] for scalar f.
  double integrate(const std::function<double(double)>& f) const;

 private:
  QuadratureRule(std::vector<double> nodes, std::vector<double> weights);
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

// Row-major tensor grid over `dim` copies of a 1-D rule. Visits points in a
// fixed order so accumulated sums are reproducible.
class TensorGrid {
 public:
  TensorGrid(const QuadratureRule& rule, int dim);

  std::size_t size() const { return count_; }
  int dim() const { return dim_; }
  const QuadratureRule& rule() const { return rule_; }

  // f(point, weight) for every grid point, in row-major node order.
  void for_each(const std::function<void(std::span<const double>, double)>& f) const;

 private:
  QuadratureRule rule_;
  int dim_;
  std::size_t count_;
};

// E[f(W)] over the dim-dimensional standard Gaussian via a tensor grid.
double gauss_expectation(const std::function<double(std::span<const double>)>& f, int dim,
                         const QuadratureRule& rule);

}  // namespace wickchaos

#include "wickchaos/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>

#include "wickchaos/hermite.hpp"
#include "wickchaos/multi_index.hpp"

namespace wickchaos {

QuadratureRule::QuadratureRule(std::vector<double> nodes, std::vector<double> weights)
    : nodes_(std::move(nodes)), weights_(std::move(weights)) {}

QuadratureRule QuadratureRule::gauss_hermite(int m) {
  if (m < 1) throw std::invalid_argument("gauss_hermite: order must be >= 1");
  if (m > kMaxOrder)
    throw std::invalid_argument("gauss_hermite: order " + std::to_string(m) + " exceeds cap " +
                                std::to_string(kMaxOrder));
  if (m == 1) return QuadratureRule({0.0}, {1.0});

  // He_{k+1} = x He_k - k He_{k-1}: Jacobi matrix has zero diagonal and
  // off-diagonal sqrt(k).
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(m, m);
  for (int k = 1; k < m; ++k) {
    jacobi(k - 1, k) = std::sqrt(static_cast<double>(k));
    jacobi(k, k - 1) = jacobi(k - 1, k);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  if (solver.info() != Eigen::Success) throw std::runtime_error("gauss_hermite: eigen-solve failed");

  std::vector<double> nodes(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) nodes[static_cast<size_t>(i)] = solver.eigenvalues()(i);

  // Newton polish on He_m (He_m'(x) = m He_{m-1}(x)), then closed-form
  // weights w_i = (m-1)! / (m He_{m-1}(x_i)^2).
  for (double& x : nodes) {
    for (int it = 0; it < 4; ++it) {
      const auto he = hermite_values(m, x);
      const double deriv = m * he[static_cast<size_t>(m) - 1];
      if (deriv == 0.0) break;
      const double step = he[static_cast<size_t>(m)] / deriv;
      x -= step;
      if (std::abs(step) < 1e-16 * (1.0 + std::abs(x))) break;
    }
  }

  // Enforce the symmetry of the rule exactly.
  for (int i = 0; i < m / 2; ++i) {
    const double v = 0.5 * (nodes[static_cast<size_t>(i)] - nodes[static_cast<size_t>(m - 1 - i)]);
    nodes[static_cast<size_t>(i)] = v;
    nodes[static_cast<size_t>(m - 1 - i)] = -v;
  }
  if (m % 2 == 1) nodes[static_cast<size_t>(m) / 2] = 0.0;

  std::vector<double> weights(static_cast<size_t>(m));
  const double num = factorial(m - 1);
  for (int i = 0; i < m; ++i) {
    const double hm1 = hermite_eval(m - 1, nodes[static_cast<size_t>(i)]);
    weights[static_cast<size_t>(i)] = num / (m * hm1 * hm1);
  }
  for (int i = 0; i < m / 2; ++i) {
    const double w =
        0.5 * (weights[static_cast<size_t>(i)] + weights[static_cast<size_t>(m - 1 - i)]);
    weights[static_cast<size_t>(i)] = w;
    weights[static_cast<size_t>(m - 1 - i)] = w;
  }
  double total = 0.0;
  for (double w : weights) total += w;
  for (double& w : weights) w /= total;

  return QuadratureRule(std::move(nodes), std::move(weights));
}

int QuadratureRule::order_for_degree(int degree) {
  if (degree < 0) throw std::invalid_argument("order_for_degree: negative degree");
  return degree / 2 + 1;
}

double QuadratureRule::integrate(const std::function<double(double)>& f) const {
  double acc = 0.0;
  for (size_t i = 0; i < nodes_.size(); ++i) acc += weights_[i] * f(nodes_[i]);
  return acc;
}

TensorGrid::TensorGrid(const QuadratureRule& rule, int dim) : rule_(rule), dim_(dim) {
  if (dim < 1) throw std::invalid_argument("TensorGrid: dimension must be positive");
  double count = 1.0;
  for (int i = 0; i < dim; ++i) count *= rule.size();
  if (count > 2e7) throw std::invalid_argument("TensorGrid: grid would exceed 2e7 points");
  count_ = static_cast<std::size_t>(count);
}

void TensorGrid::for_each(const std::function<void(std::span<const double>, double)>& f) const {
  const int m = rule_.size();
  std::vector<int> idx(static_cast<size_t>(dim_), 0);
  std::vector<double> point(static_cast<size_t>(dim_));
  for (std::size_t flat = 0; flat < count_; ++flat) {
    double weight = 1.0;
    for (int a = 0; a < dim_; ++a) {
      point[static_cast<size_t>(a)] = rule_.nodes()[static_cast<size_t>(idx[static_cast<size_t>(a)])];
      weight *= rule_.weights()[static_cast<size_t>(idx[static_cast<size_t>(a)])];
    }
    f(point, weight);
    for (int a = dim_ - 1; a >= 0; --a) {
      if (++idx[static_cast<size_t>(a)] < m) break;
      idx[static_cast<size_t>(a)] = 0;
    }
  }
}

double gauss_expectation(const std::function<double(std::span<const double>)>& f, int dim,
                         const QuadratureRule& rule) {
  double acc = 0.0;
  TensorGrid(rule, dim).for_each([&](std::span<const double> x, double w) { acc += w * f(x); });
  return acc;
}

}  // namespace wickchaos

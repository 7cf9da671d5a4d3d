#pragma once

#include <functional>
#include <span>
#include <vector>

#include "wickchaos/chaos_expansion.hpp"

namespace wickchaos {

// The l-th Malliavin gradient D^l F of a chaos expansion, stored as one
// expansion per ordered l-tuple of axes: component (i_1,...,i_l) is
// d_{i_1} ... d_{i_l} F. All dim^l ordered tuples are stored; components on
// permuted tuples are identical by construction.
class GradientStack {
 public:
  GradientStack(int dim, int order, std::vector<ChaosExpansion> components);

  int dim() const { return dim_; }
  int order() const { return order_; }
  std::size_t component_count() const { return components_.size(); }

  const ChaosExpansion& component(std::span<const int> tuple) const;
  const std::vector<ChaosExpansion>& components() const { return components_; }

  // tuple -> component, in row-major tuple order.
  void for_each(const std::function<void(std::span<const int>, const ChaosExpansion&)>& f) const;

  // E[||D^l F||^2] = sum over tuples of ||component||_2^2.
  double l2_norm_sq() const;

  // sum over tuples of component(w)^2, the squared Hilbert-Schmidt norm of
  // the gradient tensor at a point.
  double norm_sq_at(std::span<const double> w) const;

 private:
  int dim_;
  int order_;
  std::vector<ChaosExpansion> components_;
};

// D F: component i has coefficients (dF/dx_i)_{alpha - e_i} = alpha_i F_alpha.
GradientStack gradient(const ChaosExpansion& F);

// l-fold gradient. Components of order beyond deg F come out empty.
GradientStack iterated_gradient(const ChaosExpansion& F, int order);

// Closed form for E[||D^l F||^2] straight from the coefficients:
// sum_alpha |alpha|(|alpha|-1)...(|alpha|-l+1) alpha! c_alpha^2.
double gradient_norm_sq_closed_form(const ChaosExpansion& F, int order);

}  // namespace wickchaos

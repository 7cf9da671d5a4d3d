#include "wickchaos/gradient.hpp"

#include <cmath>
#include <stdexcept>

namespace wickchaos {

namespace {

std::size_t power(int base, int exp) {
  std::size_t p = 1;
  for (int i = 0; i < exp; ++i) p *= static_cast<std::size_t>(base);
  return p;
}

ChaosExpansion partial(const ChaosExpansion& F, int axis) {
  ChaosExpansion out(F.dim());
  for (const auto& [alpha, c] : F.coeffs())
    if (alpha[axis] >= 1) out.add_to_coeff(alpha.lowered(axis), alpha[axis] * c);
  return out;
}

}  // namespace

GradientStack::GradientStack(int dim, int order, std::vector<ChaosExpansion> components)
    : dim_(dim), order_(order), components_(std::move(components)) {
  if (dim < 1 || order < 1) throw std::invalid_argument("GradientStack: bad shape");
  if (components_.size() != power(dim, order))
    throw std::invalid_argument("GradientStack: expected dim^order components");
}

const ChaosExpansion& GradientStack::component(std::span<const int> tuple) const {
  if (static_cast<int>(tuple.size()) != order_)
    throw std::invalid_argument("GradientStack: tuple length mismatch");
  std::size_t flat = 0;
  for (int i : tuple) {
    if (i < 0 || i >= dim_) throw std::invalid_argument("GradientStack: axis out of range");
    flat = flat * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
  }
  return components_[flat];
}

void GradientStack::for_each(
    const std::function<void(std::span<const int>, const ChaosExpansion&)>& f) const {
  std::vector<int> tuple(static_cast<size_t>(order_), 0);
  for (const ChaosExpansion& comp : components_) {
    f(tuple, comp);
    for (int a = order_ - 1; a >= 0; --a) {
      if (++tuple[static_cast<size_t>(a)] < dim_) break;
      tuple[static_cast<size_t>(a)] = 0;
    }
  }
}

double GradientStack::l2_norm_sq() const {
  double acc = 0.0;
  for (const ChaosExpansion& comp : components_) acc += comp.l2_norm_sq();
  return acc;
}

double GradientStack::norm_sq_at(std::span<const double> w) const {
  double acc = 0.0;
  for (const ChaosExpansion& comp : components_) {
    const double v = comp.eval(w);
    acc += v * v;
  }
  return acc;
}

GradientStack gradient(const ChaosExpansion& F) { return iterated_gradient(F, 1); }

GradientStack iterated_gradient(const ChaosExpansion& F, int order) {
  if (order < 1) throw std::invalid_argument("iterated_gradient: order must be >= 1");
  const int dim = F.dim();
  std::vector<ChaosExpansion> current{F};
  for (int level = 0; level < order; ++level) {
    std::vector<ChaosExpansion> next;
    next.reserve(current.size() * static_cast<std::size_t>(dim));
    for (const ChaosExpansion& comp : current)
      for (int axis = 0; axis < dim; ++axis) next.push_back(partial(comp, axis));
    current = std::move(next);
  }
  return GradientStack(dim, order, std::move(current));
}

double gradient_norm_sq_closed_form(const ChaosExpansion& F, int order) {
  if (order < 1) throw std::invalid_argument("gradient_norm_sq_closed_form: order must be >= 1");
  double acc = 0.0;
  for (const auto& [alpha, c] : F.coeffs()) {
    const int n = alpha.degree();
    if (n < order) continue;
    double falling = 1.0;
    for (int l = 0; l < order; ++l) falling *= n - l;
    acc += falling * alpha.index_factorial() * (c * c);
  }
  return acc;
}

}  // namespace wickchaos

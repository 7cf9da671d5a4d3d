#include "wickchaos/wick.hpp"

#include <stdexcept>
#include <string>

#include "wickchaos/hermite.hpp"

namespace wickchaos {

namespace {

int combined_cap(const ChaosExpansion& F, const ChaosExpansion& G) {
  const int cap = F.degree_cap().value_or(F.degree()) + G.degree_cap().value_or(G.degree());
  if (cap > kMaxDegree)
    throw std::domain_error("product: combined degree " + std::to_string(cap) + " exceeds cap " +
                            std::to_string(kMaxDegree));
  return cap;
}

}  // namespace

ChaosExpansion wick_product(const ChaosExpansion& F, const ChaosExpansion& G) {
  if (F.dim() != G.dim()) throw std::invalid_argument("wick_product: dimension mismatch");
  ChaosExpansion out(F.dim());
  out.set_degree_cap(combined_cap(F, G));
  for (const auto& [alpha, ca] : F.coeffs())
    for (const auto& [beta, cb] : G.coeffs()) out.add_to_coeff(alpha.plus(beta), ca * cb);
  return out;
}

ChaosExpansion pointwise_product(const ChaosExpansion& F, const ChaosExpansion& G) {
  if (F.dim() != G.dim()) throw std::invalid_argument("pointwise_product: dimension mismatch");
  const int dim = F.dim();
  ChaosExpansion out(dim);
  out.set_degree_cap(combined_cap(F, G));

  std::vector<int> r(static_cast<size_t>(dim));
  std::vector<int> gamma(static_cast<size_t>(dim));
  for (const auto& [alpha, ca] : F.coeffs()) {
    for (const auto& [beta, cb] : G.coeffs()) {
      const double cc = ca * cb;
      // Odometer over contraction counts r_i in [0, min(alpha_i, beta_i)].
      std::fill(r.begin(), r.end(), 0);
      while (true) {
        double factor = 1.0;
        for (int i = 0; i < dim; ++i) {
          factor *= hermite_product_coeff(alpha[i], beta[i], r[static_cast<size_t>(i)]);
          gamma[static_cast<size_t>(i)] = alpha[i] + beta[i] - 2 * r[static_cast<size_t>(i)];
        }
        out.add_to_coeff(MultiIndex(gamma), cc * factor);
        int axis = dim - 1;
        while (axis >= 0) {
          if (++r[static_cast<size_t>(axis)] <= std::min(alpha[axis], beta[axis])) break;
          r[static_cast<size_t>(axis)] = 0;
          --axis;
        }
        if (axis < 0) break;
      }
    }
  }
  return out;
}

}  // namespace wickchaos

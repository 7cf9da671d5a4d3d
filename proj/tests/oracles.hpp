#pragma once

// Test-only oracles, kept independent of the library paths they check.

#include <cmath>
#include <span>
#include <vector>

#include "wickchaos/chaos_expansion.hpp"
#include "wickchaos/quadrature.hpp"

namespace oracles {

// Dense 1-D polynomials in the monomial basis: p[k] is the x^k coefficient.
using Poly = std::vector<double>;

inline double poly_eval(const Poly& p, double x) {
  double acc = 0.0;
  for (size_t k = p.size(); k-- > 0;) acc = acc * x + p[k];
  return acc;
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, 0.0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

inline Poly poly_derivative(const Poly& p) {
  if (p.size() <= 1) return {0.0};
  Poly out(p.size() - 1);
  for (size_t k = 1; k < p.size(); ++k) out[k - 1] = static_cast<double>(k) * p[k];
  return out;
}

// Monomial coefficients of He_k from the recurrence
// He_{k+1} = x He_k - k He_{k-1}.
inline Poly hermite_monomials(int k) {
  Poly prev{1.0};
  if (k == 0) return prev;
  Poly cur{0.0, 1.0};
  for (int n = 1; n < k; ++n) {
    Poly next(cur.size() + 1, 0.0);
    for (size_t i = 0; i < cur.size(); ++i) next[i + 1] += cur[i];
    for (size_t i = 0; i < prev.size(); ++i) next[i] -= n * prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

// Ornstein-Uhlenbeck action through the Mehler integral,
// (P_t F)(w) = E[F(e^{-t} w + sqrt(1 - e^{-2t}) W)], by quadrature.
inline double mehler_apply_at(const wickchaos::ChaosExpansion& F, double t,
                              std::span<const double> w, const wickchaos::QuadratureRule& rule) {
  const double decay = std::exp(-t);
  const double diffuse = std::sqrt(std::max(0.0, 1.0 - decay * decay));
  std::vector<double> point(w.size());
  return wickchaos::gauss_expectation(
      [&](std::span<const double> u) {
        for (size_t i = 0; i < point.size(); ++i) point[i] = decay * w[i] + diffuse * u[i];
        return F.eval(point);
      },
      static_cast<int>(w.size()), rule);
}

}  // namespace oracles

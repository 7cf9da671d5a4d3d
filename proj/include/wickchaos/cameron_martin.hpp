#pragma once

#include <span>
#include <vector>

#include "wickchaos/chaos_expansion.hpp"

namespace wickchaos {

// A direction h in the Cameron-Martin space, here just R^n with the
// Euclidean inner product. Shifting the Gaussian along h has density
// E(h) = exp(<h,w> - |h|^2/2) with respect to the unshifted measure.
class CameronMartinVector {
 public:
  explicit CameronMartinVector(std::vector<double> entries);
  static CameronMartinVector zero(int dim);

  int dim() const { return static_cast<int>(entries_.size()); }
  double operator[](int i) const { return entries_[static_cast<size_t>(i)]; }
  const std::vector<double>& entries() const { return entries_; }
  std::span<const double> span() const { return entries_; }

  double norm_sq() const;
  double dot(const CameronMartinVector& other) const;
  CameronMartinVector plus(const CameronMartinVector& other) const;
  CameronMartinVector scaled(double s) const;

 private:
  std::vector<double> entries_;
};

// delta(h) = <h, w> as a degree-1 expansion: sum_i h_i He_{e_i}.
ChaosExpansion delta_functional(const CameronMartinVector& h);

// Truncation of the stochastic exponential E(h) = exp(delta(h) - |h|^2/2),
// whose chaos coefficients are h^alpha / alpha!.
struct TruncatedExponential {
  ChaosExpansion expansion;
  // Squared L2 norm of the dropped tail: sum_{k > cap} |h|^{2k} / k!.
  double tail_norm_sq;
};

TruncatedExponential stochastic_exponential(const CameronMartinVector& h, int degree_cap);

}  // namespace wickchaos

#pragma once

#include <map>
#include <optional>
#include <span>

#include "wickchaos/multi_index.hpp"

namespace wickchaos {

// A functional of an n-dimensional Gaussian in the tensor Hermite basis:
//
//   F(w) = sum_alpha c_alpha He_alpha(w),  He_alpha(w) = prod_i He_{alpha_i}(w_i).
//
// Coefficients are stored sparsely under the graded lexicographic order, so
// iteration (and therefore every accumulated sum) is deterministic. The norm
// pairing is E[He_alpha He_beta] = alpha! delta_{alpha beta}, hence
// ||F||_2^2 = sum_alpha alpha! c_alpha^2.
class ChaosExpansion {
 public:
  using CoeffMap = std::map<MultiIndex, double, GradedLexLess>;

  explicit ChaosExpansion(int dim);

  static ChaosExpansion constant(int dim, double value);
  // The basis element He_alpha itself.
  static ChaosExpansion hermite_basis(const MultiIndex& alpha);

  int dim() const { return dim_; }
  // Largest total degree among stored coefficients; 0 for the empty expansion.
  int degree() const;

  std::optional<int> degree_cap() const { return degree_cap_; }
  // Declares that the expansion is a truncation at total degree `cap`.
  // Existing and future keys must not exceed it.
  void set_degree_cap(int cap);

  double coeff(const MultiIndex& alpha) const;
  void set_coeff(const MultiIndex& alpha, double value);
  void add_to_coeff(const MultiIndex& alpha, double value);
  const CoeffMap& coeffs() const { return coeffs_; }
  std::size_t term_count() const { return coeffs_.size(); }

  double eval(std::span<const double> w) const;

  // sum_alpha alpha! c_alpha^2
  double l2_norm_sq() const;
  // E[F] = c_0
  double mean() const;
  // Variance: sum over nonconstant alpha of alpha! c_alpha^2.
  double variance() const;

  // Copy keeping only degrees <= cap; the result records that cap.
  ChaosExpansion truncated(int cap) const;
  // Drops coefficients with |c| <= eps.
  ChaosExpansion pruned(double eps) const;

  bool operator==(const ChaosExpansion& other) const = default;

 private:
  void check_key(const MultiIndex& alpha) const;

  int dim_ = 0;
  std::optional<int> degree_cap_;
  CoeffMap coeffs_;
};

// Largest coefficient-wise deviation |F_alpha - G_alpha| over the union of
// supports. Dimensions must match.
double max_coeff_delta(const ChaosExpansion& a, const ChaosExpansion& b);

}  // namespace wickchaos

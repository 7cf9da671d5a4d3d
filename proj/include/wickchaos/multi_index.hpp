#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace wickchaos {

// Factorials are carried in double precision; beyond this degree the
// eventual pairings would overflow, so we refuse instead of wrapping.
inline constexpr int kMaxDegree = 150;

// n! as a double, valid for 0 <= n <= kMaxDegree. Throws std::domain_error
// outside that range.
double factorial(int n);

// (n-1)!! for even n >= 0, 0 for odd n: the raw moments of a standard
// Gaussian, E[X^n].
double gaussian_moment(int n);

// Binomial coefficient as a double (n up to 2*kMaxDegree).
double binomial(int n, int k);

// Exponent vector indexing a tensor Hermite basis element He_alpha.
// Entries are nonnegative; the vector length is the ambient dimension.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> entries);

  static MultiIndex zeros(int dim);
  // e_axis: a 1 in position `axis`, zeros elsewhere.
  static MultiIndex unit(int dim, int axis);

  int dim() const { return static_cast<int>(entries_.size()); }
  int degree() const;
  int operator[](int i) const { return entries_[static_cast<size_t>(i)]; }
  const std::vector<int>& entries() const { return entries_; }

  // alpha! = prod_i alpha_i!; throws if degree() exceeds kMaxDegree.
  double index_factorial() const;

  MultiIndex plus(const MultiIndex& other) const;
  // alpha - e_axis; requires entries_[axis] >= 1.
  MultiIndex lowered(int axis) const;
  MultiIndex raised(int axis) const;

  // prod_i h_i^{alpha_i}
  double monomial(std::span<const double> h) const;

  bool is_zero() const;
  bool operator==(const MultiIndex& other) const { return entries_ == other.entries_; }

  std::string to_string() const;

 private:
  std::vector<int> entries_;
};

// Graded lexicographic order: lower total degree first, then lexicographic.
// Canonical iteration order for every coefficient map in the library, so
// floating-point sums are reproducible.
bool graded_lex_less(const MultiIndex& a, const MultiIndex& b);

struct GradedLexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    return graded_lex_less(a, b);
  }
};

// All multi-indices of the given dimension with degree <= max_degree,
// in graded lexicographic order.
std::vector<MultiIndex> multi_indices_up_to(int dim, int max_degree);

}  // namespace wickchaos

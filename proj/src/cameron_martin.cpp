#include "wickchaos/cameron_martin.hpp"

#include <cmath>
#include <stdexcept>

namespace wickchaos {

CameronMartinVector::CameronMartinVector(std::vector<double> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw std::invalid_argument("CameronMartinVector: empty vector");
  for (double e : entries_)
    if (!std::isfinite(e)) throw std::invalid_argument("CameronMartinVector: non-finite entry");
}

CameronMartinVector CameronMartinVector::zero(int dim) {
  if (dim < 1) throw std::invalid_argument("CameronMartinVector: dimension must be positive");
  return CameronMartinVector(std::vector<double>(static_cast<size_t>(dim), 0.0));
}

double CameronMartinVector::norm_sq() const {
  double acc = 0.0;
  for (double e : entries_) acc += e * e;
  return acc;
}

double CameronMartinVector::dot(const CameronMartinVector& other) const {
  if (dim() != other.dim()) throw std::invalid_argument("CameronMartinVector::dot: dimension mismatch");
  double acc = 0.0;
  for (size_t i = 0; i < entries_.size(); ++i) acc += entries_[i] * other.entries_[i];
  return acc;
}

CameronMartinVector CameronMartinVector::plus(const CameronMartinVector& other) const {
  if (dim() != other.dim())
    throw std::invalid_argument("CameronMartinVector::plus: dimension mismatch");
  std::vector<double> out(entries_);
  for (size_t i = 0; i < out.size(); ++i) out[i] += other.entries_[i];
  return CameronMartinVector(std::move(out));
}

CameronMartinVector CameronMartinVector::scaled(double s) const {
  std::vector<double> out(entries_);
  for (double& e : out) e *= s;
  return CameronMartinVector(std::move(out));
}

ChaosExpansion delta_functional(const CameronMartinVector& h) {
  ChaosExpansion F(h.dim());
  for (int i = 0; i < h.dim(); ++i) F.set_coeff(MultiIndex::unit(h.dim(), i), h[i]);
  return F;
}

TruncatedExponential stochastic_exponential(const CameronMartinVector& h, int degree_cap) {
  if (degree_cap < 0) throw std::invalid_argument("stochastic_exponential: negative degree cap");
  ChaosExpansion F(h.dim());
  F.set_degree_cap(degree_cap);
  for (const MultiIndex& alpha : multi_indices_up_to(h.dim(), degree_cap))
    F.set_coeff(alpha, alpha.monomial(h.span()) / alpha.index_factorial());

  const double hsq = h.norm_sq();
  double tail = 0.0;
  double term = 1.0;  // |h|^{2k}/k! at k = 0
  for (int k = 1; k <= 600; ++k) {
    term *= hsq / k;
    if (k > degree_cap) {
      tail += term;
      if (term < 1e-300) break;
    }
  }
  return {std::move(F), tail};
}

}  // namespace wickchaos

#include "wickchaos/chaos_expansion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "wickchaos/hermite.hpp"

namespace wickchaos {

ChaosExpansion::ChaosExpansion(int dim) : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("ChaosExpansion: dimension must be positive");
}

ChaosExpansion ChaosExpansion::constant(int dim, double value) {
  ChaosExpansion F(dim);
  F.set_coeff(MultiIndex::zeros(dim), value);
  return F;
}

ChaosExpansion ChaosExpansion::hermite_basis(const MultiIndex& alpha) {
  ChaosExpansion F(alpha.dim());
  F.set_coeff(alpha, 1.0);
  return F;
}

int ChaosExpansion::degree() const {
  int d = 0;
  for (const auto& [alpha, c] : coeffs_) d = std::max(d, alpha.degree());
  return d;
}

void ChaosExpansion::set_degree_cap(int cap) {
  if (cap < 0) throw std::invalid_argument("ChaosExpansion: negative degree cap");
  if (degree() > cap)
    throw std::invalid_argument("ChaosExpansion: existing degree " + std::to_string(degree()) +
                                " exceeds requested cap " + std::to_string(cap));
  degree_cap_ = cap;
}

void ChaosExpansion::check_key(const MultiIndex& alpha) const {
  if (alpha.dim() != dim_) throw std::invalid_argument("ChaosExpansion: key dimension mismatch");
  if (degree_cap_ && alpha.degree() > *degree_cap_)
    throw std::invalid_argument("ChaosExpansion: key degree " + std::to_string(alpha.degree()) +
                                " exceeds cap " + std::to_string(*degree_cap_));
}

double ChaosExpansion::coeff(const MultiIndex& alpha) const {
  const auto it = coeffs_.find(alpha);
  return it == coeffs_.end() ? 0.0 : it->second;
}

void ChaosExpansion::set_coeff(const MultiIndex& alpha, double value) {
  check_key(alpha);
  if (value == 0.0)
    coeffs_.erase(alpha);
  else
    coeffs_[alpha] = value;
}

void ChaosExpansion::add_to_coeff(const MultiIndex& alpha, double value) {
  check_key(alpha);
  auto [it, inserted] = coeffs_.try_emplace(alpha, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0.0) coeffs_.erase(it);
  } else if (value == 0.0) {
    coeffs_.erase(it);
  }
}

double ChaosExpansion::eval(std::span<const double> w) const {
  if (static_cast<int>(w.size()) != dim_)
    throw std::invalid_argument("ChaosExpansion::eval: point dimension mismatch");
  if (coeffs_.empty()) return 0.0;

  // Per-axis Hermite tables up to the largest order used on that axis.
  std::vector<int> max_order(static_cast<size_t>(dim_), 0);
  for (const auto& [alpha, c] : coeffs_)
    for (int i = 0; i < dim_; ++i)
      max_order[static_cast<size_t>(i)] = std::max(max_order[static_cast<size_t>(i)], alpha[i]);
  std::vector<std::vector<double>> table(static_cast<size_t>(dim_));
  for (int i = 0; i < dim_; ++i)
    table[static_cast<size_t>(i)] = hermite_values(max_order[static_cast<size_t>(i)], w[static_cast<size_t>(i)]);

  double acc = 0.0;
  for (const auto& [alpha, c] : coeffs_) {
    double term = c;
    for (int i = 0; i < dim_; ++i) term *= table[static_cast<size_t>(i)][static_cast<size_t>(alpha[i])];
    acc += term;
  }
  return acc;
}

double ChaosExpansion::l2_norm_sq() const {
  double acc = 0.0;
  for (const auto& [alpha, c] : coeffs_) acc += (c * c) * alpha.index_factorial();
  return acc;
}

double ChaosExpansion::mean() const { return coeff(MultiIndex::zeros(dim_)); }

double ChaosExpansion::variance() const {
  double acc = 0.0;
  for (const auto& [alpha, c] : coeffs_)
    if (!alpha.is_zero()) acc += (c * c) * alpha.index_factorial();
  return acc;
}

ChaosExpansion ChaosExpansion::truncated(int cap) const {
  ChaosExpansion out(dim_);
  out.set_degree_cap(cap);
  for (const auto& [alpha, c] : coeffs_)
    if (alpha.degree() <= cap) out.set_coeff(alpha, c);
  return out;
}

ChaosExpansion ChaosExpansion::pruned(double eps) const {
  ChaosExpansion out(dim_);
  if (degree_cap_) out.set_degree_cap(*degree_cap_);
  for (const auto& [alpha, c] : coeffs_)
    if (std::abs(c) > eps) out.set_coeff(alpha, c);
  return out;
}

double max_coeff_delta(const ChaosExpansion& a, const ChaosExpansion& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("max_coeff_delta: dimension mismatch");
  double worst = 0.0;
  for (const auto& [alpha, c] : a.coeffs()) worst = std::max(worst, std::abs(c - b.coeff(alpha)));
  for (const auto& [alpha, c] : b.coeffs()) worst = std::max(worst, std::abs(c - a.coeff(alpha)));
  return worst;
}

}  // namespace wickchaos

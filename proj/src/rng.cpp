#include "wickchaos/rng.hpp"

#include <cmath>
#include <numbers>

namespace wickchaos {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

// SplitMix64 finalizer (Stafford mix 13).
std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), base_(seed ^ mix64((stream + 1) * kGamma)) {}

std::uint64_t CounterRng::next_u64() { return mix64(base_ + (++counter_) * kGamma); }

double CounterRng::next_uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::next_symmetric() { return 2.0 * next_uniform() - 1.0; }

double CounterRng::next_gaussian() {
  const double u1 = 1.0 - next_uniform();  // (0, 1], keeps log finite
  const double u2 = next_uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

ChaosExpansion random_polynomial(int dim, int degree, CounterRng& rng) {
  ChaosExpansion F(dim);
  F.set_degree_cap(degree);
  for (const MultiIndex& alpha : multi_indices_up_to(dim, degree))
    F.set_coeff(alpha, rng.next_symmetric());
  return F;
}

CameronMartinVector random_cm_vector(int dim, CounterRng& rng) {
  std::vector<double> v(static_cast<size_t>(dim));
  for (double& e : v) e = rng.next_gaussian();
  return CameronMartinVector(std::move(v));
}

CameronMartinVector random_unit_box_vector(int dim, CounterRng& rng) {
  std::vector<double> v(static_cast<size_t>(dim));
  for (double& e : v) e = rng.next_symmetric();
  return CameronMartinVector(std::move(v));
}

}  // namespace wickchaos

#pragma once

#include <cstdint>

#include "wickchaos/cameron_martin.hpp"
#include "wickchaos/chaos_expansion.hpp"

namespace wickchaos {

// Counter-based generator built on the SplitMix64 finalizer, chosen so a
// (seed, stream, counter) triple always yields the same value on every
// platform and so independent streams can be consumed in parallel. The exact
// algorithm is pinned in docs/rng.md; changing it changes every seeded
// corpus.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();
  // Uniform on [0, 1), 53 random bits.
  double next_uniform();
  // Uniform on [-1, 1).
  double next_symmetric();
  // Standard normal via Box-Muller; consumes exactly two uniforms.
  double next_gaussian();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

// Random polynomial: coefficients i.i.d. uniform on [-1, 1] over every
// multi-index of total degree <= degree, assigned in graded lexicographic
// order.
ChaosExpansion random_polynomial(int dim, int degree, CounterRng& rng);

// Vector with i.i.d. standard normal entries.
CameronMartinVector random_cm_vector(int dim, CounterRng& rng);

// Vector with i.i.d. uniform [-1, 1) entries.
CameronMartinVector random_unit_box_vector(int dim, CounterRng& rng);

}  // namespace wickchaos

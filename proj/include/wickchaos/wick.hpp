#pragma once

#include "wickchaos/chaos_expansion.hpp"

namespace wickchaos {

// Wick product: He_alpha <> He_beta = He_{alpha+beta}, extended bilinearly,
// so (F <> G)_gamma = sum_{alpha+beta=gamma} F_alpha G_beta. The full
// convolution is kept; the result's degree cap is the sum of the operands'.
ChaosExpansion wick_product(const ChaosExpansion& F, const ChaosExpansion& G);

// Ordinary (pointwise) product, expanded exactly through the per-axis
// linearization He_j He_k = sum_r C(j,r) C(k,r) r! He_{j+k-2r}.
ChaosExpansion pointwise_product(const ChaosExpansion& F, const ChaosExpansion& G);

}  // namespace wickchaos

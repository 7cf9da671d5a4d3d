#pragma once

#include <vector>

namespace wickchaos {

// Probabilists' Hermite polynomials He_k, orthogonal for the standard
// Gaussian weight with E[He_j He_k] = j! delta_jk.
//
//   He_0 = 1, He_1 = x, He_{k+1}(x) = x He_k(x) - k He_{k-1}(x).

// He_k(x) by the three-term recurrence. k must not exceed kMaxDegree.
double hermite_eval(int k, double x);

// He_0(x) .. He_kmax(x) in one sweep.
std::vector<double> hermite_values(int kmax, double x);

// Linearization coefficient in He_j * He_k = sum_r c(j,k,r) He_{j+k-2r},
// with c(j,k,r) = C(j,r) C(k,r) r! and 0 <= r <= min(j,k).
double hermite_product_coeff(int j, int k, int r);

}  // namespace wickchaos

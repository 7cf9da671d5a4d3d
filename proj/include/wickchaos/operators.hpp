#pragma once

#include "wickchaos/cameron_martin.hpp"
#include "wickchaos/chaos_expansion.hpp"
#include "wickchaos/quadrature.hpp"

namespace wickchaos {

// Second quantization Gamma(lambda): scales the degree-n chaos by lambda^n,
// i.e. c_alpha -> lambda^{|alpha|} c_alpha. Requires lambda >= 0.
ChaosExpansion gamma_operator(const ChaosExpansion& F, double lambda);

// Ornstein-Uhlenbeck semigroup P_t = Gamma(e^{-t}), t >= 0.
ChaosExpansion ou_apply(const ChaosExpansion& F, double t);

// <<F, G>> = E[F G] = sum_alpha alpha! F_alpha G_alpha.
double l2_pairing(const ChaosExpansion& F, const ChaosExpansion& G);

// Norm on the Hilbert scale G_lambda: sqrt(sum_alpha alpha! lambda^{2|alpha|}
// c_alpha^2) = ||Gamma(lambda) F||_2. Requires lambda > 0.
double glambda_norm(const ChaosExpansion& F, double lambda);

// S-transform at h: E[F E(h)] = sum_alpha F_alpha h^alpha. Exact for
// polynomial F; the untruncated exponential is implicit.
double s_transform(const ChaosExpansion& F, const CameronMartinVector& h);

// F <> delta(h). Computed both by the Wick coefficient rule and through
// F * delta(h) - <DF, h>; the two expansions must agree coefficient-wise to
// 1e-10 (a built-in self-check) and the Wick-rule result is returned.
ChaosExpansion wick_with_delta(const ChaosExpansion& F, const CameronMartinVector& h);

// E[F(. + a)] by quadrature against the Gaussian; equals the S-transform at
// `a` for polynomial F (Cameron-Martin shift). The rule must cover deg F.
double shifted_expectation(const ChaosExpansion& F, const CameronMartinVector& a,
                           const QuadratureRule& rule);

// ||F||_p = E[|F|^p]^{1/p} by quadrature. Not exact for odd |.|^p; callers
// choose the rule order (2 deg + 2 is the house convention for p = 3).
double lp_norm_quadrature(const ChaosExpansion& F, double p, const QuadratureRule& rule);

}  // namespace wickchaos

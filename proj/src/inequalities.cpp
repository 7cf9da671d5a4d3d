#include "wickchaos/inequalities.hpp"

#include <cmath>
#include <stdexcept>

#include "wickchaos/operators.hpp"
#include "wickchaos/positivity.hpp"
#include "wickchaos/wick.hpp"

namespace wickchaos {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::violated: return "violated";
    case Verdict::equality: return "equality";
  }
  return "?";
}

InequalityReport make_report(std::string name, double lhs, double rhs, double tol,
                             std::string lhs_prov, std::string rhs_prov) {
  InequalityReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.tol = tol;
  r.lhs_provenance = std::move(lhs_prov);
  r.rhs_provenance = std::move(rhs_prov);
  const double gap = rhs - lhs;
  if (std::abs(gap) <= tol)
    r.verdict = Verdict::equality;
  else
    r.verdict = gap > 0.0 ? Verdict::holds : Verdict::violated;
  return r;
}

namespace {

double scaled_tol(double base, double lhs, double rhs) {
  return base * (1.0 + std::abs(lhs) + std::abs(rhs));
}

constexpr const char* kCoeffSums = "coefficient-sums";
constexpr const char* kCoeffPairing = "coefficient-pairing";
constexpr const char* kCameronMartin = "cameron-martin-shift";
constexpr const char* kQuadrature = "gaussian-quadrature";

}  // namespace

InequalityReport verify_classical_poincare(const ChaosExpansion& F) {
  const double lhs = F.variance();
  const double rhs = gradient_norm_sq_closed_form(F, 1);
  return make_report("classical-poincare", lhs, rhs, scaled_tol(1e-9, lhs, rhs), kCoeffSums,
                     kCoeffSums);
}

namespace {

// sum_{l=1}^{lmax} (-1)^{l+1}/l! E[||D^l F||^2], by the per-level closed form.
double alternating_gradient_sum(const ChaosExpansion& F, int lmax) {
  double acc = 0.0;
  for (int l = 1; l <= lmax; ++l) {
    const double sign = (l % 2 == 1) ? 1.0 : -1.0;
    acc += sign / factorial(l) * gradient_norm_sq_closed_form(F, l);
  }
  return acc;
}

}  // namespace

HKReports verify_hk(const ChaosExpansion& F, int k) {
  if (k < 1) throw std::invalid_argument("verify_hk: k must be >= 1");
  const double var = F.variance();
  const double lower = alternating_gradient_sum(F, 2 * k);
  const double upper = alternating_gradient_sum(F, 2 * k - 1);
  HKReports out;
  out.lower = make_report("hk-lower-k" + std::to_string(k), lower, var,
                          scaled_tol(1e-9, lower, var), kCoeffSums, kCoeffSums);
  out.upper = make_report("hk-upper-k" + std::to_string(k), var, upper,
                          scaled_tol(1e-9, var, upper), kCoeffSums, kCoeffSums);
  return out;
}

double hk_full_alternating_sum(const ChaosExpansion& F) {
  return alternating_gradient_sum(F, F.degree());
}

InequalityReport verify_brascamp_lieb(const LogConcaveDensity& lc, const ChaosExpansion& f,
                                      const QuadratureRule& rule, double tol) {
  if (f.dim() != lc.dim) throw std::invalid_argument("verify_brascamp_lieb: dimension mismatch");
  const int n = lc.dim;
  const GradientStack grad = gradient(f);

  // Quadrature against e^{-V}, normalized numerically: weights u(x) =
  // e^{|x|^2/2 - V(x)} relative to the Gaussian rule.
  double mass = 0.0, mean = 0.0, mean_sq = 0.0, dirichlet = 0.0;
  std::vector<int> tuple(1);
  TensorGrid(rule, n).for_each([&](std::span<const double> x, double wq) {
    double nsq = 0.0;
    for (double xi : x) nsq += xi * xi;
    const double u = wq * std::exp(0.5 * nsq - lc.V(x));
    if (!std::isfinite(u))
      throw std::runtime_error("verify_brascamp_lieb: non-normalizable weight at node");

    Eigen::MatrixXd H = lc.hessV(x);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    if (es.eigenvalues().minCoeff() <= 0.0)
      throw std::runtime_error("verify_brascamp_lieb: Hessian not positive-definite at node");

    Eigen::VectorXd g(n);
    for (int i = 0; i < n; ++i) {
      tuple[0] = i;
      g(i) = grad.component(tuple).eval(x);
    }
    const Eigen::VectorXd solved = H.ldlt().solve(g);
    const double fx = f.eval(x);
    mass += u;
    mean += u * fx;
    mean_sq += u * fx * fx;
    dirichlet += u * g.dot(solved);
  });
  if (!(mass > 0.0)) throw std::runtime_error("verify_brascamp_lieb: zero mass on grid");

  const double lhs = mean_sq / mass - (mean / mass) * (mean / mass);
  const double rhs = dirichlet / mass;
  return make_report("brascamp-lieb", lhs, rhs, scaled_tol(tol, lhs, rhs),
                     "quadrature-normalized", "quadrature-normalized");
}

// -----------------------------------------------------------------------

namespace {

void require_density_admissible(const DensityModel& nu, const VerifyOptions& options) {
  if (options.explore) return;
  const PositivityReport cert = certify_strong_positivity(nu);
  if (cert.verdict == PositivityVerdict::certified_strong) return;
  if (const auto* raw = nu.as_raw_chaos();
      raw && raw->assertion == RawChaosDensity::Assertion::strongly_positive)
    return;
  throw std::invalid_argument(
      "density '" + nu.label() +
      "' is neither certified nor asserted strongly positive; enable exploration mode");
}

// Divergence gate for quadrature-expanded densities: the G_sqrt2 norm must
// be stable under cap refinement.
void require_gsqrt2_membership(const DensityModel& nu, int cap) {
  if (nu.is_unit() || nu.as_mixture() != nullptr || nu.as_raw_chaos() != nullptr) return;
  const double at_cap = gsqrt2_norm(nu, cap);
  const double refined = gsqrt2_norm(nu, cap + 4);
  if (!std::isfinite(refined) || refined > 1.5 * at_cap + 1e-6)
    throw std::runtime_error("density '" + nu.label() +
                             "' fails the G_sqrt2 stability gate (norm " + std::to_string(at_cap) +
                             " -> " + std::to_string(refined) + " under cap refinement)");
}

int resolve_density_cap(const ChaosExpansion& F, const DensityModel& nu,
                        const VerifyOptions& options) {
  if (options.density_cap >= 0) return options.density_cap;
  const int needed = 2 * F.degree();
  return mixture_cap_for_tail(nu, 1e-10, needed);
}

struct NuPaths {
  ChaosExpansion expansion;   // density expansion at the working cap
  bool exact_pairing;         // false when the expansion itself is approximate
};

NuPaths expand_density(const DensityModel& nu, int cap) {
  DensityExpansion de = density_expansion(nu, cap);
  return {std::move(de.expansion), !de.approximate};
}

double pair_with_density(const ChaosExpansion& G, const NuPaths& paths) {
  return l2_pairing(G, paths.expansion);
}

// E_nu[||D^l F||^2] via pointwise squares of gradient components paired with
// the density expansion.
double gradient_pairing_sum(const ChaosExpansion& F, const NuPaths& paths, int order) {
  const GradientStack stack = iterated_gradient(F, order);
  double acc = 0.0;
  for (const ChaosExpansion& comp : stack.components()) {
    if (comp.term_count() == 0) continue;
    acc += pair_with_density(pointwise_product(comp, comp), paths);
  }
  return acc;
}

struct CameronMartinPaths {
  QuadratureRule rule;
  const ExpMixtureDensity* mix;
};

CameronMartinPaths cm_paths(const ExpMixtureDensity& mix, int integrand_degree,
                            const VerifyOptions& options) {
  const int order = options.quad_order > 0 ? options.quad_order
                                           : QuadratureRule::order_for_degree(integrand_degree);
  return {QuadratureRule::gauss_hermite(order), &mix};
}

double cm_expectation(const CameronMartinPaths& cm,
                      const std::function<double(std::span<const double>)>& f, int dim) {
  double acc = 0.0;
  std::vector<double> shifted(static_cast<size_t>(dim));
  for (size_t i = 0; i < cm.mix->weights.size(); ++i) {
    const CameronMartinVector& a = cm.mix->shifts[i];
    acc += cm.mix->weights[i] * gauss_expectation(
                                    [&](std::span<const double> x) {
                                      for (size_t k = 0; k < shifted.size(); ++k)
                                        shifted[k] = x[k] + a[static_cast<int>(k)];
                                      return f(shifted);
                                    },
                                    dim, cm.rule);
  }
  return acc;
}

void require_paths_agree(const std::string& what, double primary, double alternate, double tol) {
  if (std::abs(primary - alternate) > tol)
    throw std::runtime_error("dual evaluation paths disagree on " + what + ": " +
                             std::to_string(primary) + " vs " + std::to_string(alternate));
}

}  // namespace

double nu_gradient_norm_sq(const ChaosExpansion& F, const DensityModel& nu, int order,
                           int density_cap) {
  if (nu.is_unit()) return gradient_norm_sq_closed_form(F, order);
  const NuPaths paths = expand_density(nu, density_cap);
  return gradient_pairing_sum(F, paths, order);
}

MainTheoremResult verify_main_theorem(const ChaosExpansion& F, const DensityModel& nu,
                                      const VerifyOptions& options) {
  if (F.dim() != nu.dim()) throw std::invalid_argument("verify_main_theorem: dimension mismatch");
  require_density_admissible(nu, options);
  const std::string claim = options.explore ? " [no-claim]" : "";

  MainTheoremResult result;
  double qw_gap = 0.0;
  double base_tol = options.exact_tol;
  std::string prov = kCoeffPairing;

  if (nu.is_unit()) {
    // Classical recovery: identical coefficient sums as
    // verify_classical_poincare, by construction.
    result.q = F.l2_norm_sq();
    const double m = F.mean();
    result.w = m * m;
    result.g = gradient_norm_sq_closed_form(F, 1);
    qw_gap = F.variance();
    prov = kCoeffSums;
  } else {
    const int cap = resolve_density_cap(F, nu, options);
    require_gsqrt2_membership(nu, cap);
    const NuPaths paths = expand_density(nu, cap);
    if (!paths.exact_pairing) base_tol = options.quad_tol;

    result.q = pair_with_density(pointwise_product(F, F), paths);
    result.w = pair_with_density(wick_product(F, F), paths);
    result.g = gradient_pairing_sum(F, paths, 1);
    qw_gap = result.q - result.w;

    if (const auto* mix = nu.as_mixture()) {
      const CameronMartinPaths cm = cm_paths(*mix, 2 * F.degree(), options);
      const GradientStack grad = gradient(F);
      const double q_alt =
          cm_expectation(cm, [&](std::span<const double> x) { const double v = F.eval(x); return v * v; }, F.dim());
      double w_alt = 0.0;
      for (size_t i = 0; i < mix->weights.size(); ++i) {
        const double e = shifted_expectation(F, mix->shifts[i], cm.rule);
        w_alt += mix->weights[i] * e * e;
      }
      const double g_alt =
          cm_expectation(cm, [&](std::span<const double> x) { return grad.norm_sq_at(x); }, F.dim());
      const double ptol = options.path_tol * (1.0 + std::abs(result.q) + std::abs(result.g));
      require_paths_agree("E_nu[F^2]", result.q, q_alt, ptol);
      require_paths_agree("<<F<>F, nu>>", result.w, w_alt, ptol);
      require_paths_agree("E_nu[||DF||^2]", result.g, g_alt, ptol);
      result.dual_path_checked = true;
      prov = std::string(kCoeffPairing) + "+" + kCameronMartin;
    } else if (const auto* raw = nu.as_raw_chaos()) {
      // Independent route: direct Gaussian quadrature of the polynomial
      // integrands against the exact density expansion.
      const ChaosExpansion& full = raw->expansion;
      const int deg = 2 * F.degree() + full.degree();
      const QuadratureRule rule = QuadratureRule::gauss_hermite(
          options.quad_order > 0 ? options.quad_order : QuadratureRule::order_for_degree(deg));
      const GradientStack grad = gradient(F);
      const ChaosExpansion wick = wick_product(F, F);
      auto against_nu = [&](const std::function<double(std::span<const double>)>& f) {
        return gauss_expectation(
            [&](std::span<const double> x) { return f(x) * full.eval(x); }, F.dim(), rule);
      };
      const double q_alt =
          against_nu([&](std::span<const double> x) { const double v = F.eval(x); return v * v; });
      const double w_alt = against_nu([&](std::span<const double> x) { return wick.eval(x); });
      const double g_alt = against_nu([&](std::span<const double> x) { return grad.norm_sq_at(x); });
      const double ptol = options.path_tol * (1.0 + std::abs(result.q) + std::abs(result.g));
      require_paths_agree("E_nu[F^2]", result.q, q_alt, ptol);
      require_paths_agree("<<F<>F, nu>>", result.w, w_alt, ptol);
      require_paths_agree("E_nu[||DF||^2]", result.g, g_alt, ptol);
      result.dual_path_checked = true;
      prov = std::string(kCoeffPairing) + "+" + kQuadrature;
    }
  }

  result.first = make_report("main-first", 0.0, qw_gap, scaled_tol(base_tol, 0.0, qw_gap),
                             "zero", prov + claim);
  result.second = make_report("main-second", qw_gap, result.g,
                              scaled_tol(base_tol, qw_gap, result.g), prov + claim, prov + claim);

  if (options.recheck_violations &&
      (result.first.verdict == Verdict::violated || result.second.verdict == Verdict::violated)) {
    // Rule out truncation artifacts before reporting a violation.
    VerifyOptions retry = options;
    retry.recheck_violations = false;
    retry.density_cap = 2 * resolve_density_cap(F, nu, options);
    const int base_order = options.quad_order > 0
                               ? options.quad_order
                               : QuadratureRule::order_for_degree(2 * F.degree());
    retry.quad_order = std::min(2 * base_order, QuadratureRule::kMaxOrder);
    MainTheoremResult again = verify_main_theorem(F, nu, retry);
    again.first.rhs_provenance += "+recheck";
    again.second.rhs_provenance += "+recheck";
    return again;
  }
  return result;
}

InequalityReport verify_remark5(const ChaosExpansion& F, const DensityModel& nu,
                                const VerifyOptions& options) {
  if (F.dim() != nu.dim()) throw std::invalid_argument("verify_remark5: dimension mismatch");
  require_density_admissible(nu, options);
  const std::string claim = options.explore ? " [no-claim]" : "";

  if (nu.is_unit()) {
    const double m = F.mean();
    // (E[F])^2 and <<F<>F, 1>> are the same coefficient product; equality by
    // construction.
    return make_report("remark5", m * m, m * m, scaled_tol(options.exact_tol, m * m, m * m),
                       kCoeffSums + claim, kCoeffSums + claim);
  }

  const int cap = resolve_density_cap(F, nu, options);
  require_gsqrt2_membership(nu, cap);
  const NuPaths paths = expand_density(nu, cap);
  const double base_tol = paths.exact_pairing ? options.exact_tol : options.quad_tol;
  const double mean_nu = pair_with_density(F, paths);
  const double w = pair_with_density(wick_product(F, F), paths);

  if (const auto* mix = nu.as_mixture()) {
    const CameronMartinPaths cm = cm_paths(*mix, F.degree(), options);
    double mean_alt = 0.0;
    for (size_t i = 0; i < mix->weights.size(); ++i)
      mean_alt += mix->weights[i] * shifted_expectation(F, mix->shifts[i], cm.rule);
    require_paths_agree("E_nu[F]", mean_nu, mean_alt,
                        options.path_tol * (1.0 + std::abs(mean_nu) + std::abs(w)));
  }

  const double lhs = mean_nu * mean_nu;
  return make_report("remark5", lhs, w, scaled_tol(base_tol, lhs, w), kCoeffPairing + claim,
                     kCoeffPairing + claim);
}

InequalityReport verify_refined_theorem(const ChaosExpansion& F, const DensityModel& nu, int k,
                                        const VerifyOptions& options) {
  if (k < 1) throw std::invalid_argument("verify_refined_theorem: k must be >= 1");
  if (F.dim() != nu.dim())
    throw std::invalid_argument("verify_refined_theorem: dimension mismatch");
  require_density_admissible(nu, options);
  const std::string claim = options.explore ? " [no-claim]" : "";
  const std::string name = "refined-k" + std::to_string(k);

  double lhs = 0.0, rhs = 0.0;
  double base_tol = options.exact_tol;
  std::string prov = kCoeffPairing;

  if (nu.is_unit()) {
    lhs = F.variance();
    rhs = alternating_gradient_sum(F, 2 * k - 1);
    prov = kCoeffSums;
  } else {
    const int cap = resolve_density_cap(F, nu, options);
    require_gsqrt2_membership(nu, cap);
    const NuPaths paths = expand_density(nu, cap);
    if (!paths.exact_pairing) base_tol = options.quad_tol;

    const double q = pair_with_density(pointwise_product(F, F), paths);
    const double w = pair_with_density(wick_product(F, F), paths);
    lhs = q - w;
    for (int l = 1; l <= 2 * k - 1; ++l) {
      const double sign = (l % 2 == 1) ? 1.0 : -1.0;
      rhs += sign / factorial(l) * gradient_pairing_sum(F, paths, l);
    }

    if (const auto* mix = nu.as_mixture()) {
      const CameronMartinPaths cm = cm_paths(*mix, 2 * F.degree(), options);
      double rhs_alt = 0.0;
      for (int l = 1; l <= 2 * k - 1; ++l) {
        const GradientStack stack = iterated_gradient(F, l);
        const double sign = (l % 2 == 1) ? 1.0 : -1.0;
        rhs_alt += sign / factorial(l) *
                   cm_expectation(cm, [&](std::span<const double> x) { return stack.norm_sq_at(x); },
                                  F.dim());
      }
      require_paths_agree("refined rhs", rhs, rhs_alt,
                          options.path_tol * (1.0 + std::abs(lhs) + std::abs(rhs)));
      prov = std::string(kCoeffPairing) + "+" + kCameronMartin;
    }
  }

  InequalityReport report = make_report(name, lhs, rhs, scaled_tol(base_tol, lhs, rhs),
                                        prov + claim, prov + claim);
  if (options.recheck_violations && report.verdict == Verdict::violated) {
    VerifyOptions retry = options;
    retry.recheck_violations = false;
    retry.density_cap = 2 * resolve_density_cap(F, nu, options);
    const int base_order = options.quad_order > 0
                               ? options.quad_order
                               : QuadratureRule::order_for_degree(2 * F.degree());
    retry.quad_order = std::min(2 * base_order, QuadratureRule::kMaxOrder);
    InequalityReport again = verify_refined_theorem(F, nu, k, retry);
    again.rhs_provenance += "+recheck";
    return again;
  }
  return report;
}

// -----------------------------------------------------------------------

PSDCheck make_psd_check(std::string label, const Eigen::MatrixXd& M, double tol) {
  if (M.rows() != M.cols()) throw std::invalid_argument("make_psd_check: matrix must be square");
  PSDCheck check;
  check.label = std::move(label);
  check.size = static_cast<int>(M.rows());
  check.matrix = 0.5 * (M + M.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(check.matrix);
  check.min_eigenvalue = solver.eigenvalues().minCoeff();
  check.tol = tol;
  const double scale = 1.0 + check.matrix.cwiseAbs().maxCoeff();
  check.psd = check.min_eigenvalue >= -tol * scale;
  return check;
}

namespace {

Eigen::MatrixXd inner_product_matrix(const std::vector<CameronMartinVector>& hs) {
  if (hs.empty()) throw std::invalid_argument("PSD check: empty family");
  const int r = static_cast<int>(hs.size());
  Eigen::MatrixXd S(r, r);
  for (int j = 0; j < r; ++j)
    for (int l = 0; l < r; ++l) S(j, l) = hs[static_cast<size_t>(j)].dot(hs[static_cast<size_t>(l)]);
  return S;
}

}  // namespace

PSDCheck b_matrix(const std::vector<CameronMartinVector>& hs, double tol) {
  const Eigen::MatrixXd S = inner_product_matrix(hs);
  Eigen::MatrixXd B(S.rows(), S.cols());
  for (int j = 0; j < S.rows(); ++j)
    for (int l = 0; l < S.cols(); ++l) {
      const double s = S(j, l);
      B(j, l) = 1.0 - std::exp(s) + std::exp(s) * s;
    }
  return make_psd_check("b-matrix", B, tol);
}

PSDCheck refined_a_matrix(const std::vector<CameronMartinVector>& hs, int k, double tol) {
  if (k < 1) throw std::invalid_argument("refined_a_matrix: k must be >= 1");
  const Eigen::MatrixXd S = inner_product_matrix(hs);
  Eigen::MatrixXd A(S.rows(), S.cols());
  for (int j = 0; j < S.rows(); ++j)
    for (int l = 0; l < S.cols(); ++l) {
      const double s = S(j, l);
      double partial = 0.0;
      double term = 1.0;  // s^m / m!
      for (int m = 1; m <= 2 * k - 1; ++m) {
        term *= s / m;
        partial += (m % 2 == 1 ? term : -term);
      }
      A(j, l) = 1.0 - std::exp(s) + std::exp(s) * partial;
    }
  return make_psd_check("refined-a-matrix-k" + std::to_string(k), A, tol);
}

PSDCheck schur_product_psd(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, double tol) {
  if (A.rows() != B.rows() || A.cols() != B.cols())
    throw std::invalid_argument("schur_product_psd: shape mismatch");
  const PSDCheck checkA = make_psd_check("schur-input-a", A, tol);
  const PSDCheck checkB = make_psd_check("schur-input-b", B, tol);
  if (!checkA.psd || !checkB.psd)
    throw std::invalid_argument("schur_product_psd: inputs must be PSD within tolerance");
  return make_psd_check("schur-product", A.cwiseProduct(B), tol);
}

PSDCheck exponential_family_gram(const DensityModel& nu, const std::vector<CameronMartinVector>& hs,
                                 double tol, int expansion_cap) {
  if (hs.empty()) throw std::invalid_argument("exponential_family_gram: empty family");
  const int r = static_cast<int>(hs.size());
  Eigen::MatrixXd A(r, r);
  const auto* lc = nu.as_log_concave();
  if (nu.is_unit()) {
    A.setOnes();
  } else if (const auto* mix = nu.as_mixture()) {
    for (int j = 0; j < r; ++j)
      for (int l = 0; l < r; ++l) {
        const CameronMartinVector sum = hs[static_cast<size_t>(j)].plus(hs[static_cast<size_t>(l)]);
        double acc = 0.0;
        for (size_t i = 0; i < mix->weights.size(); ++i)
          acc += mix->weights[i] * std::exp(mix->shifts[i].dot(sum));
        A(j, l) = acc;
      }
  } else if (lc && lc->gaussian_mean && lc->gaussian_cov) {
    // S nu(h) = exp(<h, m> + h'Ch/2 - |h|^2/2) for the Gaussian N(m, C).
    for (int j = 0; j < r; ++j)
      for (int l = 0; l < r; ++l) {
        const CameronMartinVector sum = hs[static_cast<size_t>(j)].plus(hs[static_cast<size_t>(l)]);
        const Eigen::Map<const Eigen::VectorXd> s(sum.entries().data(), sum.dim());
        A(j, l) = std::exp(s.dot(*lc->gaussian_mean) + 0.5 * s.dot(*lc->gaussian_cov * s) -
                           0.5 * s.squaredNorm());
      }
  } else {
    const ChaosExpansion expansion =
        nu.as_raw_chaos() ? nu.as_raw_chaos()->expansion
                          : density_expansion(nu, expansion_cap).expansion;
    for (int j = 0; j < r; ++j)
      for (int l = 0; l < r; ++l)
        A(j, l) = s_transform(expansion, hs[static_cast<size_t>(j)].plus(hs[static_cast<size_t>(l)]));
  }
  return make_psd_check("exp-family-gram", A, tol);
}

}  // namespace wickchaos

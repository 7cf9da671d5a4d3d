#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>
#include <variant>

#include "wickchaos/cameron_martin.hpp"
#include "wickchaos/chaos_expansion.hpp"
#include "wickchaos/quadrature.hpp"

namespace wickchaos {

// Radon-Nikodym densities nu with respect to the standard Gaussian measure,
// normalized so E[nu] = 1.

struct UnitDensity {
  int dim = 1;
};

// Convex combination of shifted-Gaussian densities:
// nu(w) = sum_i w_i exp(<a_i, w> - |a_i|^2/2). Weights are nonnegative and
// sum to 1 (within 1e-12).
struct ExpMixtureDensity {
  ExpMixtureDensity(std::vector<double> weights, std::vector<CameronMartinVector> shifts);
  std::vector<double> weights;
  std::vector<CameronMartinVector> shifts;
  int dim() const { return shifts.front().dim(); }
};

// Lebesgue density e^{-V}/Z with V smooth and strictly convex. The
// normalization Z is fixed at construction (closed form when provided,
// otherwise Gauss-Hermite quadrature at `quad_order`).
struct LogConcaveDensity {
  using Scalar = std::function<double(std::span<const double>)>;
  using Vector = std::function<Eigen::VectorXd(std::span<const double>)>;
  using Matrix = std::function<Eigen::MatrixXd(std::span<const double>)>;

  LogConcaveDensity(int dim, Scalar V, Vector gradV, Matrix hessV, int quad_order = 40,
                    std::optional<double> normalization = std::nullopt);

  int dim;
  Scalar V;
  Vector gradV;
  Matrix hessV;
  int quad_order;
  double Z;  // integral of e^{-V} over R^dim

  // Populated when V is the quadratic w'Aw/2 + b'w, so the measure is the
  // Gaussian N(mean, cov) with cov = A^{-1}, mean = -A^{-1} b. Enables
  // closed-form S-transforms: E[nu E(h)] = exp(<h,m> + h'Ch/2 - |h|^2/2).
  std::optional<Eigen::VectorXd> gaussian_mean;
  std::optional<Eigen::MatrixXd> gaussian_cov;
};

// An explicit chaos expansion played as a density; c_0 must be 1. Positivity
// is whatever the caller asserts, never assumed.
struct RawChaosDensity {
  enum class Assertion { unknown, positive, strongly_positive };
  explicit RawChaosDensity(ChaosExpansion expansion, Assertion assertion = Assertion::unknown);
  ChaosExpansion expansion;
  Assertion assertion;
};

class DensityModel {
 public:
  using Variant = std::variant<UnitDensity, ExpMixtureDensity, LogConcaveDensity, RawChaosDensity>;

  DensityModel(Variant v, std::string label = "");  // NOLINT(google-explicit-constructor)

  int dim() const;
  const std::string& label() const { return label_; }
  const Variant& variant() const { return variant_; }

  bool is_unit() const { return std::holds_alternative<UnitDensity>(variant_); }
  const ExpMixtureDensity* as_mixture() const { return std::get_if<ExpMixtureDensity>(&variant_); }
  const LogConcaveDensity* as_log_concave() const {
    return std::get_if<LogConcaveDensity>(&variant_);
  }
  const RawChaosDensity* as_raw_chaos() const { return std::get_if<RawChaosDensity>(&variant_); }

 private:
  Variant variant_;
  std::string label_;
};

// nu(w) in closed form: mixtures and the unit density are exact, log-concave
// models use e^{-V(w)} / (Z * gaussian kernel), raw chaos evaluates the
// expansion.
double density_value(const DensityModel& model, std::span<const double> w);

struct DensityExpansion {
  ChaosExpansion expansion;
  // Upper bound on the squared L2 norm of the dropped tail (0 when nothing
  // was dropped).
  double tail_bound_sq;
  // True when coefficients came from quadrature rather than a closed form.
  bool approximate;
};

// Chaos coefficients of nu through total degree `degree_cap`. Mixture and
// unit coefficients are closed-form; log-concave models are projected on a
// tensor grid (rule defaults to the model's quad_order). If `max_tail_sq` is
// given and the tail bound exceeds it, throws instead of truncating.
DensityExpansion density_expansion(const DensityModel& model, int degree_cap,
                                   std::optional<double> max_tail_sq = std::nullopt,
                                   const QuadratureRule* rule = nullptr);

// Smallest cap with mixture tail bound <= target (and >= min_cap). For
// non-mixture models returns min_cap.
int mixture_cap_for_tail(const DensityModel& model, double target_tail_sq, int min_cap);

// ||nu||_{G_sqrt2}: closed form sum_{ij} w_i w_j e^{2 <a_i, a_j>} for
// mixtures, coefficient sum otherwise (at the expansion's own cap).
double gsqrt2_norm(const DensityModel& model, int degree_cap);

}  // namespace wickchaos

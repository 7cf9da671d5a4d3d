#include "wickchaos/density.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wickchaos/operators.hpp"
#include "wickchaos/projection.hpp"

namespace wickchaos {

ExpMixtureDensity::ExpMixtureDensity(std::vector<double> weights_in,
                                     std::vector<CameronMartinVector> shifts_in)
    : weights(std::move(weights_in)), shifts(std::move(shifts_in)) {
  if (weights.empty() || weights.size() != shifts.size())
    throw std::invalid_argument("ExpMixtureDensity: weights/shifts size mismatch");
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw std::invalid_argument("ExpMixtureDensity: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("ExpMixtureDensity: weights sum to " + std::to_string(total));
  const int d = shifts.front().dim();
  for (const auto& a : shifts)
    if (a.dim() != d) throw std::invalid_argument("ExpMixtureDensity: shift dimension mismatch");
}

LogConcaveDensity::LogConcaveDensity(int dim_in, Scalar V_in, Vector gradV_in, Matrix hessV_in,
                                     int quad_order_in, std::optional<double> normalization)
    : dim(dim_in),
      V(std::move(V_in)),
      gradV(std::move(gradV_in)),
      hessV(std::move(hessV_in)),
      quad_order(quad_order_in) {
  if (dim < 1) throw std::invalid_argument("LogConcaveDensity: dimension must be positive");
  if (normalization) {
    Z = *normalization;
  } else {
    // Z = integral e^{-V} dw = (2 pi)^{n/2} E[e^{|W|^2/2 - V(W)}]
    const auto rule = QuadratureRule::gauss_hermite(quad_order);
    const double e = gauss_expectation(
        [&](std::span<const double> x) {
          double nsq = 0.0;
          for (double xi : x) nsq += xi * xi;
          return std::exp(0.5 * nsq - V(x));
        },
        dim, rule);
    Z = std::pow(2.0 * std::numbers::pi, 0.5 * dim) * e;
  }
  if (!(Z > 0.0) || !std::isfinite(Z))
    throw std::invalid_argument("LogConcaveDensity: normalization is not finite and positive");
}

RawChaosDensity::RawChaosDensity(ChaosExpansion expansion_in, Assertion assertion_in)
    : expansion(std::move(expansion_in)), assertion(assertion_in) {
  if (std::abs(expansion.mean() - 1.0) > 1e-10)
    throw std::invalid_argument("RawChaosDensity: constant coefficient must be 1 (E[nu] = 1)");
}

DensityModel::DensityModel(Variant v, std::string label)
    : variant_(std::move(v)), label_(std::move(label)) {}

int DensityModel::dim() const {
  return std::visit(
      [](const auto& m) -> int {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, UnitDensity>)
          return m.dim;
        else if constexpr (std::is_same_v<T, ExpMixtureDensity>)
          return m.dim();
        else if constexpr (std::is_same_v<T, LogConcaveDensity>)
          return m.dim;
        else
          return m.expansion.dim();
      },
      variant_);
}

double density_value(const DensityModel& model, std::span<const double> w) {
  if (static_cast<int>(w.size()) != model.dim())
    throw std::invalid_argument("density_value: point dimension mismatch");
  if (model.is_unit()) return 1.0;
  if (const auto* mix = model.as_mixture()) {
    double acc = 0.0;
    for (size_t i = 0; i < mix->weights.size(); ++i) {
      double dot = 0.0;
      for (int k = 0; k < mix->dim(); ++k) dot += mix->shifts[i][k] * w[static_cast<size_t>(k)];
      acc += mix->weights[i] * std::exp(dot - 0.5 * mix->shifts[i].norm_sq());
    }
    return acc;
  }
  if (const auto* lc = model.as_log_concave()) {
    double nsq = 0.0;
    for (double xi : w) nsq += xi * xi;
    return std::pow(2.0 * std::numbers::pi, 0.5 * lc->dim) * std::exp(0.5 * nsq - lc->V(w)) / lc->Z;
  }
  return model.as_raw_chaos()->expansion.eval(w);
}

namespace {

// sum_{k > cap} s^k / k!, summed until terms vanish.
double exp_series_tail(double s, int cap) {
  double tail = 0.0;
  double term = 1.0;
  const double mag = std::abs(s);
  for (int k = 1; k <= 700; ++k) {
    term *= mag / k;
    if (k > cap) {
      tail += term;
      if (term < 1e-300 && k > mag) break;
    }
  }
  return tail;
}

double mixture_tail_bound_sq(const ExpMixtureDensity& mix, int cap) {
  double bound = 0.0;
  for (size_t i = 0; i < mix.weights.size(); ++i)
    for (size_t j = 0; j < mix.weights.size(); ++j)
      bound += mix.weights[i] * mix.weights[j] * exp_series_tail(mix.shifts[i].dot(mix.shifts[j]), cap);
  return bound;
}

}  // namespace

DensityExpansion density_expansion(const DensityModel& model, int degree_cap,
                                   std::optional<double> max_tail_sq, const QuadratureRule* rule) {
  if (degree_cap < 0) throw std::invalid_argument("density_expansion: negative degree cap");
  const int dim = model.dim();

  if (model.is_unit()) {
    ChaosExpansion one = ChaosExpansion::constant(dim, 1.0);
    one.set_degree_cap(degree_cap);
    return {std::move(one), 0.0, false};
  }

  if (const auto* mix = model.as_mixture()) {
    ChaosExpansion out(dim);
    out.set_degree_cap(degree_cap);
    for (const MultiIndex& alpha : multi_indices_up_to(dim, degree_cap)) {
      double c = 0.0;
      for (size_t i = 0; i < mix->weights.size(); ++i)
        c += mix->weights[i] * alpha.monomial(mix->shifts[i].span());
      out.set_coeff(alpha, c / alpha.index_factorial());
    }
    const double tail = mixture_tail_bound_sq(*mix, degree_cap);
    if (max_tail_sq && tail > *max_tail_sq)
      throw std::runtime_error("density_expansion: mixture tail bound " + std::to_string(tail) +
                               " above requested tolerance; raise the degree cap");
    return {std::move(out), tail, false};
  }

  if (const auto* raw = model.as_raw_chaos()) {
    if (raw->expansion.degree() <= degree_cap) {
      ChaosExpansion out = raw->expansion.truncated(degree_cap);
      return {std::move(out), 0.0, false};
    }
    ChaosExpansion out(dim);
    out.set_degree_cap(degree_cap);
    double dropped = 0.0;
    for (const auto& [alpha, c] : raw->expansion.coeffs()) {
      if (alpha.degree() <= degree_cap)
        out.set_coeff(alpha, c);
      else
        dropped += alpha.index_factorial() * c * c;
    }
    if (max_tail_sq && dropped > *max_tail_sq)
      throw std::runtime_error("density_expansion: raw-chaos truncation drops mass above tolerance");
    return {std::move(out), dropped, false};
  }

  const auto* lc = model.as_log_concave();
  const QuadratureRule local =
      rule ? *rule : QuadratureRule::gauss_hermite(lc->quad_order);
  Projection proj = project(
      [&](std::span<const double> x) { return density_value(model, x); }, dim, degree_cap, local);
  return {std::move(proj.expansion), 0.0, true};
}

int mixture_cap_for_tail(const DensityModel& model, double target_tail_sq, int min_cap) {
  const auto* mix = model.as_mixture();
  if (!mix) return min_cap;
  for (int cap = min_cap;; ++cap) {
    if (mixture_tail_bound_sq(*mix, cap) <= target_tail_sq) return cap;
    if (cap >= kMaxDegree)
      throw std::runtime_error("mixture_cap_for_tail: tail target unreachable under degree cap");
  }
}

double gsqrt2_norm(const DensityModel& model, int degree_cap) {
  if (model.is_unit()) return 1.0;
  if (const auto* mix = model.as_mixture()) {
    double acc = 0.0;
    for (size_t i = 0; i < mix->weights.size(); ++i)
      for (size_t j = 0; j < mix->weights.size(); ++j)
        acc += mix->weights[i] * mix->weights[j] * std::exp(2.0 * mix->shifts[i].dot(mix->shifts[j]));
    return std::sqrt(acc);
  }
  const DensityExpansion de = density_expansion(model, degree_cap);
  return glambda_norm(de.expansion, std::sqrt(2.0));
}

}  // namespace wickchaos

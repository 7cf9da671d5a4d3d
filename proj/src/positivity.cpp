#include "wickchaos/positivity.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wickchaos/operators.hpp"
#include "wickchaos/rng.hpp"

namespace wickchaos {

std::string to_string(PositivityVerdict v) {
  switch (v) {
    case PositivityVerdict::certified_strong: return "certified-strong";
    case PositivityVerdict::refuted: return "refuted";
    case PositivityVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

PositivityReport certify_strong_positivity(const DensityModel& model) {
  PositivityReport report;
  report.tol = 0.0;
  // Gamma(lambda) E(h) = E(lambda h) >= 0, and convex combinations stay
  // nonnegative, so the unit density and exponential mixtures certify
  // structurally. No numeric test can certify.
  if (model.is_unit() || model.as_mixture() != nullptr)
    report.verdict = PositivityVerdict::certified_strong;
  else
    report.verdict = PositivityVerdict::inconclusive;
  return report;
}

SpatialGrid default_spatial_grid(int dim, double lo, double hi, double step, std::uint64_t seed,
                                 int mc_points) {
  if (dim < 1) throw std::invalid_argument("default_spatial_grid: dimension must be positive");
  if (!(step > 0.0) || !(hi > lo)) throw std::invalid_argument("default_spatial_grid: bad bounds");
  SpatialGrid grid;
  if (dim <= 2) {
    const int kmin = static_cast<int>(std::ceil(lo / step - 1e-9));
    const int kmax = static_cast<int>(std::floor(hi / step + 1e-9));
    std::vector<double> axis;
    for (int k = kmin; k <= kmax; ++k) axis.push_back(k * step);
    if (dim == 1) {
      for (double x : axis) grid.points.push_back({x});
    } else {
      for (double x : axis)
        for (double y : axis) grid.points.push_back({x, y});
    }
  } else {
    CounterRng rng(seed, /*stream=*/0x5057ULL);  // dedicated stream for grids
    grid.points.reserve(static_cast<size_t>(mc_points));
    for (int p = 0; p < mc_points; ++p) {
      std::vector<double> x(static_cast<size_t>(dim));
      for (double& xi : x) xi = rng.next_gaussian();
      grid.points.push_back(std::move(x));
    }
  }
  return grid;
}

std::vector<double> default_lambda_grid() {
  std::vector<double> lambdas;
  for (int k = 0; k <= 8; ++k) lambdas.push_back(1.0 + 0.25 * k);
  return lambdas;
}

namespace {

using PointFn = std::function<double(std::span<const double>)>;

// Cyclic coordinate golden-section descent to a local minimum near `start`.
// The bracket slides while the iterate keeps hitting its edge and only
// tightens once the minimizer is interior, so candidates a few grid cells
// away from the basin still reach it. Displacement per axis is capped: the
// polish refines grid candidates, it must not wander out of the scanned
// region (polynomial tails run to -inf and would swallow it).
std::vector<double> polish_minimum(const PointFn& f, std::vector<double> start, double radius,
                                   double max_displacement) {
  constexpr double kInvPhi = 0.6180339887498949;
  const int dim = static_cast<int>(start.size());
  const std::vector<double> origin = start;
  double r = radius;
  for (int sweep = 0; sweep < 400 && r > 1e-12; ++sweep) {
    double moved = 0.0;
    for (int axis = 0; axis < dim; ++axis) {
      const double center = start[static_cast<size_t>(axis)];
      double a = std::max(center - r, origin[static_cast<size_t>(axis)] - max_displacement);
      double b = std::min(center + r, origin[static_cast<size_t>(axis)] + max_displacement);
      if (!(a < b)) continue;
      auto value_at = [&](double t) {
        std::vector<double> p = start;
        p[static_cast<size_t>(axis)] = t;
        return f(p);
      };
      double c = b - kInvPhi * (b - a);
      double d = a + kInvPhi * (b - a);
      double fc = value_at(c), fd = value_at(d);
      for (int it = 0; it < 40; ++it) {
        if (fc < fd) {
          b = d;
          d = c;
          fd = fc;
          c = b - kInvPhi * (b - a);
          fc = value_at(c);
        } else {
          a = c;
          c = d;
          fc = fd;
          d = a + kInvPhi * (b - a);
          fd = value_at(d);
        }
      }
      start[static_cast<size_t>(axis)] = 0.5 * (a + b);
      moved = std::max(moved, std::abs(start[static_cast<size_t>(axis)] - center));
    }
    if (moved < 0.8 * r) r *= 0.5;
  }
  return start;
}

// One lambda's scan: flag grid values below `threshold`, polish the worst 32
// to local minima (staying within one unit of their cell), dedupe, sort by
// point.
std::vector<PositivityWitness> scan_lambda(const PointFn& value_fn, double lambda,
                                           const SpatialGrid& grid, double threshold) {
  std::vector<std::pair<double, std::size_t>> candidates;
  for (std::size_t i = 0; i < grid.points.size(); ++i) {
    const double v = value_fn(grid.points[i]);
    if (v < threshold) candidates.emplace_back(v, i);
  }
  std::sort(candidates.begin(), candidates.end());
  if (candidates.size() > 32) candidates.resize(32);

  std::vector<PositivityWitness> found;
  for (const auto& [v0, i] : candidates) {
    std::vector<double> point = polish_minimum(value_fn, grid.points[i], 0.2, 1.0);
    const double value = value_fn(point);
    if (value >= threshold) continue;
    bool duplicate = false;
    for (const PositivityWitness& w : found) {
      double dist = 0.0;
      for (size_t a = 0; a < point.size(); ++a)
        dist = std::max(dist, std::abs(point[a] - w.point[a]));
      if (dist < 1e-5) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) found.push_back({"grid", lambda, std::move(point), value});
  }
  std::sort(found.begin(), found.end(),
            [](const PositivityWitness& a, const PositivityWitness& b) { return a.point < b.point; });
  return found;
}

void validate_grid_args(const std::vector<double>& lambdas, const SpatialGrid& grid) {
  if (grid.points.empty()) throw std::invalid_argument("grid refutation: empty grid");
  for (double lambda : lambdas)
    if (lambda < 1.0) throw std::invalid_argument("grid refutation: lambda must be >= 1");
}

}  // namespace

PositivityReport grid_refute_strong_positivity(const ChaosExpansion& nu,
                                               const std::vector<double>& lambdas,
                                               const SpatialGrid& grid, double tol) {
  validate_grid_args(lambdas, grid);
  PositivityReport report;
  report.tol = tol;
  for (double lambda : lambdas) {
    const ChaosExpansion scaled = gamma_operator(nu, lambda);
    const double threshold = -tol * (1.0 + glambda_norm(nu, lambda));
    auto witnesses = scan_lambda([&](std::span<const double> x) { return scaled.eval(x); }, lambda,
                                 grid, threshold);
    for (PositivityWitness& w : witnesses) report.witnesses.push_back(std::move(w));
  }
  report.verdict =
      report.witnesses.empty() ? PositivityVerdict::inconclusive : PositivityVerdict::refuted;
  return report;
}

double gamma_density_value(const DensityModel& model, double lambda, std::span<const double> w) {
  if (model.is_unit()) return 1.0;
  const auto* mix = model.as_mixture();
  if (!mix)
    throw std::invalid_argument("gamma_density_value: closed form only for unit/mixture models");
  double acc = 0.0;
  for (size_t i = 0; i < mix->weights.size(); ++i) {
    double dot = 0.0;
    for (int k = 0; k < mix->dim(); ++k) dot += mix->shifts[i][k] * w[static_cast<size_t>(k)];
    acc += mix->weights[i] * std::exp(lambda * dot - 0.5 * lambda * lambda * mix->shifts[i].norm_sq());
  }
  return acc;
}

PositivityReport grid_refute_strong_positivity_model(const DensityModel& model,
                                                     const std::vector<double>& lambdas,
                                                     const SpatialGrid& grid, double tol,
                                                     int expansion_cap) {
  validate_grid_args(lambdas, grid);

  if (const auto* raw = model.as_raw_chaos())
    return grid_refute_strong_positivity(raw->expansion, lambdas, grid, tol);

  PositivityReport report;
  report.tol = tol;

  if (model.is_unit() || model.as_mixture() != nullptr) {
    // Exact closed-form evaluation at every lambda; no truncation involved.
    const int cap = model.is_unit() ? 0 : mixture_cap_for_tail(model, 1e-10, expansion_cap);
    const DensityExpansion de = density_expansion(model, cap);
    for (double lambda : lambdas) {
      const double threshold = -tol * (1.0 + glambda_norm(de.expansion, lambda));
      auto witnesses = scan_lambda(
          [&](std::span<const double> x) { return gamma_density_value(model, lambda, x); }, lambda,
          grid, threshold);
      for (PositivityWitness& w : witnesses) report.witnesses.push_back(std::move(w));
    }
  } else {
    // Quadrature-projected density. Values are trusted only where two
    // projection caps agree to 1%; everywhere else the truncated series is
    // not the density and cannot witness anything. Where Gamma(lambda) nu
    // stops being function-valued the caps disagree everywhere and the scan
    // reports nothing, leaving the PSD route to do the refuting.
    const DensityExpansion coarse = density_expansion(model, expansion_cap);
    const DensityExpansion fine = density_expansion(model, expansion_cap + 4);
    for (double lambda : lambdas) {
      const ChaosExpansion scaled = gamma_operator(coarse.expansion, lambda);
      const ChaosExpansion scaled_fine = gamma_operator(fine.expansion, lambda);
      const double threshold = -tol * (1.0 + glambda_norm(fine.expansion, lambda));
      auto trusted = [&](double a, double b) {
        return std::abs(a - b) <= 1e-2 * (1.0 + std::max(std::abs(a), std::abs(b)));
      };
      auto fine_eval = [&](std::span<const double> x) { return scaled_fine.eval(x); };

      std::vector<std::pair<double, std::size_t>> candidates;
      for (std::size_t i = 0; i < grid.points.size(); ++i) {
        const double a = scaled.eval(grid.points[i]);
        const double b = scaled_fine.eval(grid.points[i]);
        if (trusted(a, b) && a < threshold && b < threshold) candidates.emplace_back(b, i);
      }
      std::sort(candidates.begin(), candidates.end());
      if (candidates.size() > 32) candidates.resize(32);
      std::vector<PositivityWitness> found;
      for (const auto& [v0, i] : candidates) {
        std::vector<double> point = polish_minimum(fine_eval, grid.points[i], 0.2, 1.0);
        const double a = scaled.eval(point);
        const double b = scaled_fine.eval(point);
        if (!trusted(a, b) || a >= threshold || b >= threshold) continue;
        bool duplicate = false;
        for (const PositivityWitness& w : found) {
          double dist = 0.0;
          for (size_t ax = 0; ax < point.size(); ++ax)
            dist = std::max(dist, std::abs(point[ax] - w.point[ax]));
          if (dist < 1e-5) {
            duplicate = true;
            break;
          }
        }
        if (!duplicate) found.push_back({"grid", lambda, std::move(point), b});
      }
      std::sort(found.begin(), found.end(), [](const PositivityWitness& x, const PositivityWitness& y) {
        return x.point < y.point;
      });
      for (PositivityWitness& w : found) report.witnesses.push_back(std::move(w));
    }
  }

  report.verdict =
      report.witnesses.empty() ? PositivityVerdict::inconclusive : PositivityVerdict::refuted;
  return report;
}

std::optional<int> mixture_pointwise_safe_cap(const ExpMixtureDensity& mix, double lambda_max,
                                              double grid_radius_sq, double abs_tol, int min_cap) {
  double shift_norm = 0.0;
  for (const auto& a : mix.shifts) shift_norm = std::max(shift_norm, std::sqrt(a.norm_sq()));
  const double rate = lambda_max * shift_norm * std::sqrt(2.0);
  const double amplitude =
      std::pow(4.0 / 3.0, 0.25 * mix.dim()) * std::exp(grid_radius_sq / 6.0);

  // tail(N) = amplitude * sum_{k>N} rate^k / sqrt(k!)
  std::vector<double> terms;
  double log_term = 0.0;  // log(rate^k / sqrt(k!))
  for (int k = 1; k <= kMaxDegree; ++k) {
    log_term += std::log(rate) - 0.5 * std::log(static_cast<double>(k));
    terms.push_back(std::exp(log_term));
  }
  double tail = 0.0;
  std::vector<double> tails(terms.size() + 1, 0.0);
  for (int k = static_cast<int>(terms.size()); k >= 1; --k) {
    tail += terms[static_cast<size_t>(k) - 1];
    tails[static_cast<size_t>(k) - 1] = tail;
  }
  for (int cap = std::max(min_cap, 0); cap < kMaxDegree; ++cap) {
    // tails[cap] = sum_{k > cap} term_k; valid only if the series has
    // entered its decaying regime by kMaxDegree.
    if (terms.back() > abs_tol) break;
    if (amplitude * tails[static_cast<size_t>(cap)] <= abs_tol) return cap;
  }
  return std::nullopt;
}

PositivityReport wick_square_psd_test(const ChaosExpansion& nu,
                                      const std::vector<std::vector<CameronMartinVector>>& families,
                                      double tol) {
  PositivityReport report;
  report.tol = tol;
  for (const auto& family : families) {
    if (family.empty()) throw std::invalid_argument("wick_square_psd_test: empty family");
    const int r = static_cast<int>(family.size());
    Eigen::MatrixXd M(r, r);
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k) M(j, k) = s_transform(nu, family[static_cast<size_t>(j)].plus(family[static_cast<size_t>(k)]));
    // Symmetrize away rounding before the eigen-solve.
    M = 0.5 * (M + M.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(M);
    const double min_eig = solver.eigenvalues().minCoeff();
    report.psd_min_eigs.push_back(min_eig);
    const double scale = 1.0 + M.cwiseAbs().maxCoeff();
    if (min_eig < -tol * scale)
      report.witnesses.push_back({"wick-square", 1.0, {}, min_eig});
  }
  report.verdict =
      report.witnesses.empty() ? PositivityVerdict::inconclusive : PositivityVerdict::refuted;
  return report;
}

PositivityReport wick_square_psd_test_random(const ChaosExpansion& nu, int family_size, int trials,
                                             std::uint64_t seed, double tol) {
  if (trials < 1) throw std::invalid_argument("wick_square_psd_test_random: trials must be >= 1");
  if (family_size < 1)
    throw std::invalid_argument("wick_square_psd_test_random: family size must be >= 1");
  std::vector<std::vector<CameronMartinVector>> families;
  families.reserve(static_cast<size_t>(trials));
  for (int t = 0; t < trials; ++t) {
    CounterRng rng(seed, 0x10000ULL + static_cast<std::uint64_t>(t));
    std::vector<CameronMartinVector> family;
    family.reserve(static_cast<size_t>(family_size));
    for (int j = 0; j < family_size; ++j) family.push_back(random_cm_vector(nu.dim(), rng));
    families.push_back(std::move(family));
  }
  return wick_square_psd_test(nu, families, tol);
}

namespace {

Eigen::MatrixXd mixture_shifted_log_hessian(const ExpMixtureDensity& mix,
                                            std::span<const double> w) {
  // -log(nu * gaussian) = |w|^2/2 - log s(w) + const, where s is the
  // mixture; Hess = I - Cov of the shifts under the softmax weights.
  const int n = mix.dim();
  std::vector<double> p(mix.weights.size());
  double total = 0.0;
  for (size_t i = 0; i < mix.weights.size(); ++i) {
    double dot = 0.0;
    for (int k = 0; k < n; ++k) dot += mix.shifts[i][k] * w[static_cast<size_t>(k)];
    p[i] = mix.weights[i] * std::exp(dot - 0.5 * mix.shifts[i].norm_sq());
    total += p[i];
  }
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(n);
  Eigen::MatrixXd second = Eigen::MatrixXd::Zero(n, n);
  for (size_t i = 0; i < p.size(); ++i) {
    const double pi = p[i] / total;
    Eigen::VectorXd a(n);
    for (int k = 0; k < n; ++k) a(k) = mix.shifts[i][k];
    mean += pi * a;
    second += pi * a * a.transpose();
  }
  return Eigen::MatrixXd::Identity(n, n) - (second - mean * mean.transpose());
}

}  // namespace

LogConcavityReport log_concavity_grid_test(const DensityModel& model, const SpatialGrid& grid,
                                           double tol) {
  if (grid.points.empty()) throw std::invalid_argument("log_concavity_grid_test: empty grid");
  const int n = model.dim();
  LogConcavityReport report;
  report.tol = tol;

  // psi = -log(nu * gaussian kernel) up to an additive constant.
  auto psi = [&](std::span<const double> w) {
    const double v = density_value(model, w);
    if (!(v > 0.0))
      throw std::runtime_error("log_concavity_grid_test: non-positive density value on grid");
    double nsq = 0.0;
    for (double x : w) nsq += x * x;
    return -std::log(v) + 0.5 * nsq;
  };

  for (const auto& point : grid.points) {
    Eigen::MatrixXd H(n, n);
    if (const auto* mix = model.as_mixture()) {
      H = mixture_shifted_log_hessian(*mix, point);
    } else if (const auto* lc = model.as_log_concave()) {
      H = lc->hessV(point);
    } else if (model.is_unit()) {
      H = Eigen::MatrixXd::Identity(n, n);
    } else {
      // Central finite differences, step 1e-4.
      const double h = 1e-4;
      std::vector<double> x(point);
      const double center = psi(x);
      for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
          double val;
          if (i == j) {
            x[static_cast<size_t>(i)] = point[static_cast<size_t>(i)] + h;
            const double fp = psi(x);
            x[static_cast<size_t>(i)] = point[static_cast<size_t>(i)] - h;
            const double fm = psi(x);
            x[static_cast<size_t>(i)] = point[static_cast<size_t>(i)];
            val = (fp - 2.0 * center + fm) / (h * h);
          } else {
            double acc = 0.0;
            for (int si : {+1, -1})
              for (int sj : {+1, -1}) {
                x[static_cast<size_t>(i)] = point[static_cast<size_t>(i)] + si * h;
                x[static_cast<size_t>(j)] = point[static_cast<size_t>(j)] + sj * h;
                acc += si * sj * psi(x);
              }
            x[static_cast<size_t>(i)] = point[static_cast<size_t>(i)];
            x[static_cast<size_t>(j)] = point[static_cast<size_t>(j)];
            val = acc / (4.0 * h * h);
          }
          H(i, j) = val;
          H(j, i) = val;
        }
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(H);
    const double min_eig = solver.eigenvalues().minCoeff();
    if (min_eig < -tol) report.failures.push_back({point, min_eig});
  }
  report.log_concave = report.failures.empty();
  return report;
}

}  // namespace wickchaos

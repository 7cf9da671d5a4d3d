#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "wickchaos/positivity.hpp"

using namespace wickchaos;

namespace {

// nu = He_2^2 / 2 = (He_4 + 4 He_2 + 2)/2: a nonnegative density whose
// dilations Gamma(lambda) nu go negative for every lambda > 1.
ChaosExpansion counterexample_density() {
  ChaosExpansion nu(1);
  nu.set_coeff(MultiIndex({0}), 1.0);
  nu.set_coeff(MultiIndex({2}), 2.0);
  nu.set_coeff(MultiIndex({4}), 0.5);
  return nu;
}

DensityModel pm_mixture(double shift) {
  return DensityModel(
      ExpMixtureDensity({0.5, 0.5}, {CameronMartinVector(std::vector<double>{shift}),
                                     CameronMartinVector(std::vector<double>{-shift})}),
      "mix");
}

// Closed-form minimum of Gamma(lambda) nu for the counterexample:
// value (-6 l^4 + 8 l^2 - 2)/2 attained at x^2 = 3 - 2/l^2.
double counterexample_min_value(double lambda) {
  const double l2 = lambda * lambda;
  return 0.5 * (-6.0 * l2 * l2 + 8.0 * l2 - 2.0);
}

}  // namespace

TEST_CASE("structural certification") {
  CHECK(certify_strong_positivity(DensityModel(UnitDensity{1}, "unit")).verdict ==
        PositivityVerdict::certified_strong);
  CHECK(certify_strong_positivity(pm_mixture(1.0)).verdict ==
        PositivityVerdict::certified_strong);
  CHECK(certify_strong_positivity(DensityModel(RawChaosDensity(counterexample_density()), "cex"))
            .verdict == PositivityVerdict::inconclusive);
}

TEST_CASE("grid refutation of the wick-square density") {
  const ChaosExpansion nu = counterexample_density();
  const SpatialGrid grid = default_spatial_grid(1);

  SUBCASE("nonnegative at lambda = 1") {
    const auto report = grid_refute_strong_positivity(nu, {1.0}, grid);
    CHECK(report.verdict == PositivityVerdict::inconclusive);
    CHECK(report.witnesses.empty());
  }

  SUBCASE("lambda = sqrt2 is refuted with the closed-form witness") {
    const double sqrt2 = std::sqrt(2.0);
    const auto report = grid_refute_strong_positivity(nu, {sqrt2}, grid);
    REQUIRE(report.verdict == PositivityVerdict::refuted);
    bool found = false;
    for (const auto& w : report.witnesses) {
      if (std::abs(w.value + 5.0) <= 1e-6 && std::abs(std::abs(w.point[0]) - sqrt2) <= 1e-6)
        found = true;
      CHECK(w.lambda == sqrt2);
    }
    CHECK(found);
  }

  SUBCASE("polished witness values match the quartic minimum for several lambdas") {
    for (double lambda : {1.25, 1.5, 2.0}) {
      const auto report = grid_refute_strong_positivity(nu, {lambda}, grid);
      REQUIRE(report.verdict == PositivityVerdict::refuted);
      double best = 1e300;
      for (const auto& w : report.witnesses) best = std::min(best, w.value);
      CHECK(best == doctest::Approx(counterexample_min_value(lambda)).epsilon(1e-6));
    }
  }

  SUBCASE("unit density never yields witnesses") {
    const auto report = grid_refute_strong_positivity(ChaosExpansion::constant(1, 1.0),
                                                      default_lambda_grid(), grid);
    CHECK(report.verdict == PositivityVerdict::inconclusive);
    CHECK(report.witnesses.empty());
  }

  CHECK_THROWS_AS(grid_refute_strong_positivity(nu, {1.0}, SpatialGrid{}), std::invalid_argument);
  CHECK_THROWS_AS(grid_refute_strong_positivity(nu, {0.5}, grid), std::invalid_argument);
}

TEST_CASE("mixtures survive every numeric audit") {
  const DensityModel mix = pm_mixture(1.0);
  const SpatialGrid grid = default_spatial_grid(1);

  SUBCASE("closed-form model path, all default lambdas") {
    const auto report = grid_refute_strong_positivity_model(mix, default_lambda_grid(), grid);
    CHECK(report.verdict == PositivityVerdict::inconclusive);
    CHECK(report.witnesses.empty());
  }

  SUBCASE("expansion path with the pointwise-safe cap") {
    double radius_sq = 0.0;
    for (const auto& p : grid.points) radius_sq = std::max(radius_sq, p[0] * p[0]);
    const double tol_abs = 1e-8;  // half of the weakest threshold, lambda = 1
    const auto cap =
        mixture_pointwise_safe_cap(*mix.as_mixture(), 3.0, radius_sq, 0.5 * tol_abs, 8);
    REQUIRE(cap.has_value());
    const auto de = density_expansion(mix, *cap);
    const auto report = grid_refute_strong_positivity(de.expansion, default_lambda_grid(), grid);
    CHECK(report.verdict == PositivityVerdict::inconclusive);
    CHECK(report.witnesses.empty());
  }

  SUBCASE("wick-square families stay PSD") {
    const auto de = density_expansion(mix, 40);
    const auto report = wick_square_psd_test_random(de.expansion, 4, 100, /*seed=*/2024);
    CHECK(report.verdict == PositivityVerdict::inconclusive);
    for (double eig : report.psd_min_eigs) CHECK(eig >= -1e-10);
  }
}

TEST_CASE("wick-square PSD refutation of the counterexample") {
  const ChaosExpansion nu = counterexample_density();

  SUBCASE("the explicit family {-1, 0, 1}") {
    const std::vector<std::vector<CameronMartinVector>> family{
        {CameronMartinVector(std::vector<double>{-1.0}),
         CameronMartinVector(std::vector<double>{0.0}),
         CameronMartinVector(std::vector<double>{1.0})}};
    const auto report = wick_square_psd_test(nu, family);
    CHECK(report.verdict == PositivityVerdict::refuted);
    REQUIRE(report.psd_min_eigs.size() == 1);
    CHECK(report.psd_min_eigs[0] < -0.05);
  }

  SUBCASE("random families find a refutation") {
    const auto report = wick_square_psd_test_random(nu, 4, 100, /*seed=*/2024);
    CHECK(report.verdict == PositivityVerdict::refuted);
    CHECK_FALSE(report.witnesses.empty());
  }

  SUBCASE("unit density: rank-one all-ones matrix") {
    const auto report = wick_square_psd_test_random(ChaosExpansion::constant(1, 1.0), 4, 10, 1);
    CHECK(report.verdict == PositivityVerdict::inconclusive);
    for (double eig : report.psd_min_eigs) CHECK(eig >= -1e-12);
  }
}

TEST_CASE("log-concavity scans") {
  const SpatialGrid grid = default_spatial_grid(1, -6.0, 6.0, 0.1);

  SUBCASE("the standard Gaussian is log-concave") {
    const DensityModel gauss(
        LogConcaveDensity(
            1, [](std::span<const double> x) { return 0.5 * x[0] * x[0]; },
            [](std::span<const double> x) {
              Eigen::VectorXd g(1);
              g(0) = x[0];
              return g;
            },
            [](std::span<const double>) { return Eigen::MatrixXd::Identity(1, 1); }),
        "gauss");
    const auto report = log_concavity_grid_test(gauss, grid);
    CHECK(report.log_concave);
  }

  SUBCASE("the +-2 mixture fails at the origin with curvature -3") {
    const auto report = log_concavity_grid_test(pm_mixture(2.0), grid);
    CHECK_FALSE(report.log_concave);
    bool found = false;
    for (const auto& f : report.failures)
      if (std::abs(f.point[0]) <= 1e-12) {
        found = true;
        CHECK(f.min_hessian_eig == doctest::Approx(-3.0).epsilon(1e-10));
      }
    CHECK(found);
  }

  SUBCASE("coincident shifts are a plain Gaussian shift, log-concave") {
    const DensityModel same(
        ExpMixtureDensity({0.5, 0.5}, {CameronMartinVector(std::vector<double>{2.0}),
                                       CameronMartinVector(std::vector<double>{2.0})}),
        "same");
    CHECK(log_concavity_grid_test(same, grid).log_concave);
  }

  SUBCASE("finite differences match the analytic mixture Hessian") {
    const DensityModel mix = pm_mixture(2.0);
    const auto cap = mixture_pointwise_safe_cap(*mix.as_mixture(), 1.0, 4.0, 1e-10, 8);
    REQUIRE(cap.has_value());
    const DensityModel raw(RawChaosDensity(density_expansion(mix, *cap).expansion), "raw");
    SpatialGrid small;
    for (double x : {-1.5, -0.5, 0.0, 0.5, 1.5}) small.points.push_back({x});
    const auto fd = log_concavity_grid_test(raw, small);
    const auto exact = log_concavity_grid_test(mix, small);
    REQUIRE(fd.failures.size() == exact.failures.size());
    for (size_t i = 0; i < fd.failures.size(); ++i)
      CHECK(fd.failures[i].min_hessian_eig ==
            doctest::Approx(exact.failures[i].min_hessian_eig).epsilon(1e-4));
  }

  SUBCASE("non-positive density on the grid is an error") {
    const DensityModel cex(RawChaosDensity(counterexample_density()), "cex");
    // The default grid hits the zeros at x = +-1.
    CHECK_THROWS_AS(log_concavity_grid_test(cex, grid), std::runtime_error);
  }
}

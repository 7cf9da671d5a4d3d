#include "wickchaos/runner.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "wickchaos/inequalities.hpp"
#include "wickchaos/json_io.hpp"
#include "wickchaos/parallel.hpp"
#include "wickchaos/positivity.hpp"
#include "wickchaos/rng.hpp"
#include "wickchaos/version.hpp"

namespace wickchaos {

std::string InstanceRow::summary_bucket() const {
  if (verdict == "holds" || verdict == "certified-strong" || verdict == "log-concave")
    return "holds";
  if (verdict == "violated" || verdict == "refuted" || verdict == "not-log-concave")
    return "violated";
  if (verdict == "equality") return "equality";
  return "inconclusive";
}

nlohmann::json RunReport::summary() const {
  int holds = 0, violated = 0, equality = 0, inconclusive = 0;
  for (const InstanceRow& row : rows) {
    const std::string bucket = row.summary_bucket();
    if (bucket == "holds")
      ++holds;
    else if (bucket == "violated")
      ++violated;
    else if (bucket == "equality")
      ++equality;
    else
      ++inconclusive;
  }
  return nlohmann::json{{"instances", rows.size()},
                        {"holds", holds},
                        {"violated", violated},
                        {"equality", equality},
                        {"inconclusive", inconclusive}};
}

nlohmann::json RunReport::to_json() const {
  nlohmann::json instances = nlohmann::json::array();
  for (const InstanceRow& row : rows) {
    nlohmann::json r{{"check", row.check},
                     {"density", row.density},
                     {"function", row.function},
                     {"verdict", row.verdict}};
    if (row.lhs) r["lhs"] = *row.lhs;
    if (row.rhs) r["rhs"] = *row.rhs;
    if (row.lhs && row.rhs) r["gap"] = *row.rhs - *row.lhs;
    if (row.tol) r["tol"] = *row.tol;
    if (!row.detail.is_null()) r["detail"] = row.detail;
    instances.push_back(std::move(r));
  }
  return nlohmann::json{{"library", {{"name", kLibraryName}, {"version", kVersion}}},
                        {"config", config_echo},
                        {"instances", std::move(instances)},
                        {"summary", summary()}};
}

std::string RunReport::to_csv() const {
  std::ostringstream os;
  os << "check,density,function,lhs,rhs,gap,verdict\n";
  for (const InstanceRow& row : rows) {
    os << row.check << ',' << row.density << ',' << row.function << ',';
    if (row.lhs) os << format_double(*row.lhs);
    os << ',';
    if (row.rhs) os << format_double(*row.rhs);
    os << ',';
    if (row.lhs && row.rhs) os << format_double(*row.rhs - *row.lhs);
    os << ',' << row.verdict << '\n';
  }
  return os.str();
}

int RunReport::exit_code() const {
  for (const InstanceRow& row : rows)
    if (row.summary_bucket() == "violated") return 2;
  return 0;
}

namespace {

double param_double(const nlohmann::json& params, const char* key, double fallback) {
  if (!params.contains(key)) return fallback;
  const auto& v = params.at(key);
  if (!v.is_number()) throw ConfigError(std::string("check parameter '") + key + "': expected a number");
  return v.get<double>();
}

int param_int(const nlohmann::json& params, const char* key, int fallback) {
  if (!params.contains(key)) return fallback;
  const auto& v = params.at(key);
  if (!v.is_number_integer())
    throw ConfigError(std::string("check parameter '") + key + "': expected an integer");
  return v.get<int>();
}

bool param_bool(const nlohmann::json& params, const char* key, bool fallback) {
  if (!params.contains(key)) return fallback;
  const auto& v = params.at(key);
  if (!v.is_boolean())
    throw ConfigError(std::string("check parameter '") + key + "': expected a boolean");
  return v.get<bool>();
}

InstanceRow inequality_row(const InequalityReport& report, const std::string& density,
                           const std::string& function) {
  InstanceRow row;
  row.check = report.name;
  row.density = density;
  row.function = function;
  row.lhs = report.lhs;
  row.rhs = report.rhs;
  row.tol = report.tol;
  row.verdict = to_string(report.verdict);
  row.detail = {{"lhs_provenance", report.lhs_provenance},
                {"rhs_provenance", report.rhs_provenance}};
  return row;
}

InstanceRow psd_row(const std::string& check, const std::string& density,
                    const std::vector<double>& min_eigs, double tol, bool all_psd) {
  double worst = min_eigs.empty() ? 0.0 : min_eigs.front();
  for (double e : min_eigs) worst = std::min(worst, e);
  InstanceRow row;
  row.check = check;
  row.density = density;
  row.lhs = 0.0;
  row.rhs = worst;
  row.tol = tol;
  // PSD flags already carry the entry-scale adjustment from the eigen check.
  if (!all_psd)
    row.verdict = "violated";
  else
    row.verdict = std::abs(worst) <= tol ? "equality" : "holds";
  row.detail = {{"families", min_eigs.size()}, {"min_eigenvalues", min_eigs}};
  return row;
}

VerifyOptions options_from(const ExperimentConfig& config, const nlohmann::json& params) {
  VerifyOptions opt;
  opt.exact_tol = config.tolerances.exact;
  opt.quad_tol = config.tolerances.quadrature;
  opt.path_tol = config.tolerances.path;
  opt.explore = param_bool(params, "explore", false);
  opt.density_cap = param_int(params, "density_cap", -1);
  opt.quad_order = param_int(params, "quad_order", -1);
  return opt;
}

std::vector<double> lambdas_from(const nlohmann::json& params) {
  if (!params.contains("lambdas")) return default_lambda_grid();
  const auto& arr = params.at("lambdas");
  if (!arr.is_array() || arr.empty())
    throw ConfigError("check parameter 'lambdas': expected a non-empty array of numbers");
  std::vector<double> out;
  for (const auto& v : arr) {
    if (!v.is_number()) throw ConfigError("check parameter 'lambdas': expected numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

SpatialGrid grid_from(const ExperimentConfig& config, const nlohmann::json& params) {
  double lo = -6.0, hi = 6.0, step = 0.1;
  if (params.contains("grid")) {
    const auto& g = params.at("grid");
    if (!g.is_object()) throw ConfigError("check parameter 'grid': expected an object");
    lo = param_double(g, "lo", lo);
    hi = param_double(g, "hi", hi);
    step = param_double(g, "step", step);
  }
  return default_spatial_grid(config.dims, lo, hi, step, config.seed);
}

using TaskResult = std::vector<InstanceRow>;
using Task = std::function<TaskResult()>;

void add_per_function_tasks(const ExperimentConfig& config, const CheckSpec& check,
                            std::vector<Task>& tasks) {
  for (const FunctionInstance& fn : config.functions) {
    if (!id_selected(check.params, "functions", fn.id, true)) continue;
    if (check.name == "classical-poincare") {
      tasks.push_back([&fn] {
        return TaskResult{inequality_row(verify_classical_poincare(fn.expansion), "", fn.id)};
      });
    } else {  // hk
      const int k = param_int(check.params, "k", 1);
      tasks.push_back([&fn, k] {
        const HKReports reports = verify_hk(fn.expansion, k);
        return TaskResult{inequality_row(reports.lower, "", fn.id),
                          inequality_row(reports.upper, "", fn.id)};
      });
    }
  }
}

void add_density_function_tasks(const ExperimentConfig& config, const CheckSpec& check,
                                std::vector<Task>& tasks) {
  const VerifyOptions opt = options_from(config, check.params);
  for (const DensityModel& nu : config.densities) {
    if (!id_selected(check.params, "densities", nu.label(), false)) continue;
    for (const FunctionInstance& fn : config.functions) {
      if (!id_selected(check.params, "functions", fn.id, true)) continue;
      if (check.name == "main") {
        tasks.push_back([&nu, &fn, opt] {
          const MainTheoremResult r = verify_main_theorem(fn.expansion, nu, opt);
          TaskResult rows{inequality_row(r.first, nu.label(), fn.id),
                          inequality_row(r.second, nu.label(), fn.id)};
          rows[0].detail["q"] = r.q;
          rows[0].detail["w"] = r.w;
          rows[1].detail["g"] = r.g;
          rows[1].detail["dual_path_checked"] = r.dual_path_checked;
          return rows;
        });
      } else if (check.name == "remark5") {
        tasks.push_back([&nu, &fn, opt] {
          return TaskResult{inequality_row(verify_remark5(fn.expansion, nu, opt), nu.label(), fn.id)};
        });
      } else {  // refined
        const int k = param_int(check.params, "k", 1);
        tasks.push_back([&nu, &fn, opt, k] {
          return TaskResult{
              inequality_row(verify_refined_theorem(fn.expansion, nu, k, opt), nu.label(), fn.id)};
        });
      }
    }
  }
}

void add_brascamp_lieb_tasks(const ExperimentConfig& config, const CheckSpec& check,
                             std::vector<Task>& tasks) {
  const int order = param_int(check.params, "quad_order", 40);
  const double tol = config.tolerances.quadrature;
  bool any = false;
  for (const DensityModel& nu : config.densities) {
    const LogConcaveDensity* lc = nu.as_log_concave();
    if (!lc || !id_selected(check.params, "densities", nu.label(), false)) continue;
    any = true;
    for (const FunctionInstance& fn : config.functions) {
      if (!id_selected(check.params, "functions", fn.id, true)) continue;
      tasks.push_back([lc, &fn, &nu, order, tol] {
        const auto rule = QuadratureRule::gauss_hermite(order);
        return TaskResult{
            inequality_row(verify_brascamp_lieb(*lc, fn.expansion, rule, tol), nu.label(), fn.id)};
      });
    }
  }
  if (!any)
    throw ConfigError("check 'brascamp-lieb' requires at least one log_concave_quadratic density");
}

void add_strong_positivity_tasks(const ExperimentConfig& config, const CheckSpec& check,
                                 std::vector<Task>& tasks) {
  const auto lambdas = lambdas_from(check.params);
  const SpatialGrid grid = grid_from(config, check.params);
  const int psd_trials = param_int(check.params, "psd_trials", 100);
  const int psd_family_size = param_int(check.params, "psd_family_size", 4);
  const double tol = config.tolerances.positivity;
  const double psd_tol = config.tolerances.psd;

  for (const DensityModel& nu : config.densities) {
    if (!id_selected(check.params, "densities", nu.label(), false)) continue;
    tasks.push_back([&nu, &config, lambdas, grid, psd_trials, psd_family_size, tol, psd_tol] {
      const PositivityReport cert = certify_strong_positivity(nu);
      const PositivityReport grid_report =
          grid_refute_strong_positivity_model(nu, lambdas, grid, tol, config.degree_cap);

      // Wick-square necessary condition over random exponential families.
      std::vector<double> min_eigs;
      bool psd_refuted = false;
      for (int t = 0; t < psd_trials; ++t) {
        CounterRng rng(config.seed, 0x30000ULL + static_cast<std::uint64_t>(t));
        std::vector<CameronMartinVector> family;
        for (int j = 0; j < psd_family_size; ++j) family.push_back(random_cm_vector(nu.dim(), rng));
        const PSDCheck gram = exponential_family_gram(nu, family, psd_tol, config.degree_cap);
        min_eigs.push_back(gram.min_eigenvalue);
        if (!gram.psd) psd_refuted = true;
      }

      InstanceRow row;
      row.check = "strong-positivity";
      row.density = nu.label();
      row.tol = tol;
      const bool refuted = grid_report.verdict == PositivityVerdict::refuted || psd_refuted;
      if (refuted)
        row.verdict = "refuted";
      else if (cert.verdict == PositivityVerdict::certified_strong)
        row.verdict = "certified-strong";
      else
        row.verdict = "inconclusive";

      nlohmann::json witnesses = nlohmann::json::array();
      for (const PositivityWitness& w : grid_report.witnesses)
        witnesses.push_back({{"kind", w.kind},
                             {"lambda", w.lambda},
                             {"point", w.point},
                             {"value", w.value}});
      row.detail = {{"witnesses", std::move(witnesses)},
                    {"psd_min_eigs", min_eigs},
                    {"lambdas", lambdas},
                    {"structural", to_string(cert.verdict)}};
      return TaskResult{std::move(row)};
    });
  }
}

void add_log_concavity_tasks(const ExperimentConfig& config, const CheckSpec& check,
                             std::vector<Task>& tasks) {
  const SpatialGrid grid = grid_from(config, check.params);
  for (const DensityModel& nu : config.densities) {
    if (!id_selected(check.params, "densities", nu.label(), false)) continue;
    tasks.push_back([&nu, grid] {
      const LogConcavityReport report = log_concavity_grid_test(nu, grid);
      InstanceRow row;
      row.check = "log-concavity";
      row.density = nu.label();
      row.tol = report.tol;
      row.verdict = report.log_concave ? "log-concave" : "not-log-concave";
      nlohmann::json failures = nlohmann::json::array();
      for (size_t i = 0; i < report.failures.size() && i < 16; ++i)
        failures.push_back({{"point", report.failures[i].point},
                            {"min_hessian_eig", report.failures[i].min_hessian_eig}});
      row.detail = {{"failure_count", report.failures.size()}, {"failures", std::move(failures)}};
      return TaskResult{std::move(row)};
    });
  }
}

void add_psd_lemmas_tasks(const ExperimentConfig& config, const CheckSpec& check,
                          std::vector<Task>& tasks) {
  const int families = param_int(check.params, "families", 100);
  const int family_size = param_int(check.params, "family_size", 4);
  const int k = param_int(check.params, "k", 2);
  const double tol = config.tolerances.psd;
  const int dims = config.dims;
  const std::uint64_t seed = config.seed;

  auto random_family = [dims](std::uint64_t s, std::uint64_t stream, int size) {
    CounterRng rng(s, stream);
    std::vector<CameronMartinVector> family;
    for (int j = 0; j < size; ++j) family.push_back(random_cm_vector(dims, rng));
    return family;
  };

  tasks.push_back([=] {
    std::vector<double> eigs_b, eigs_a, eigs_schur;
    bool psd_b = true, psd_a = true, psd_schur = true;
    for (int t = 0; t < families; ++t) {
      const auto family = random_family(seed, 0x40000ULL + static_cast<std::uint64_t>(t), family_size);
      const PSDCheck cb = b_matrix(family, tol);
      const PSDCheck ca = refined_a_matrix(family, k, tol);
      eigs_b.push_back(cb.min_eigenvalue);
      eigs_a.push_back(ca.min_eigenvalue);
      psd_b = psd_b && cb.psd;
      psd_a = psd_a && ca.psd;

      // Random Gram pair for the Schur product theorem.
      CounterRng rng(seed, 0x50000ULL + static_cast<std::uint64_t>(t));
      Eigen::MatrixXd G1(family_size, family_size), G2(family_size, family_size);
      for (int r = 0; r < family_size; ++r)
        for (int c = 0; c < family_size; ++c) {
          G1(r, c) = rng.next_gaussian();
          G2(r, c) = rng.next_gaussian();
        }
      const PSDCheck cs = schur_product_psd(G1 * G1.transpose(), G2 * G2.transpose(), tol);
      eigs_schur.push_back(cs.min_eigenvalue);
      psd_schur = psd_schur && cs.psd;
    }
    TaskResult rows;
    rows.push_back(psd_row("psd-b-matrix", "", eigs_b, tol, psd_b));
    rows.push_back(psd_row("psd-refined-a-k" + std::to_string(k), "", eigs_a, tol, psd_a));
    rows.push_back(psd_row("psd-schur-product", "", eigs_schur, tol, psd_schur));
    return rows;
  });

  for (const DensityModel& nu : config.densities) {
    if (!id_selected(check.params, "densities", nu.label(), false)) continue;
    const bool certified =
        certify_strong_positivity(nu).verdict == PositivityVerdict::certified_strong;
    const auto* raw = nu.as_raw_chaos();
    const bool asserted = raw && raw->assertion == RawChaosDensity::Assertion::strongly_positive;
    if (!certified && !asserted) continue;
    tasks.push_back([=, &nu] {
      std::vector<double> eigs;
      bool all_psd = true;
      for (int t = 0; t < families; ++t) {
        const auto family =
            random_family(seed, 0x60000ULL + static_cast<std::uint64_t>(t), family_size);
        const PSDCheck gram = exponential_family_gram(nu, family, tol, config.degree_cap);
        eigs.push_back(gram.min_eigenvalue);
        all_psd = all_psd && gram.psd;
      }
      return TaskResult{psd_row("psd-exp-family-gram", nu.label(), eigs, tol, all_psd)};
    });
  }
}

}  // namespace

RunReport run_experiment(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();

  std::vector<Task> tasks;
  for (const CheckSpec& check : config.checks) {
    if (check.name == "classical-poincare" || check.name == "hk")
      add_per_function_tasks(config, check, tasks);
    else if (check.name == "main" || check.name == "remark5" || check.name == "refined")
      add_density_function_tasks(config, check, tasks);
    else if (check.name == "brascamp-lieb")
      add_brascamp_lieb_tasks(config, check, tasks);
    else if (check.name == "strong-positivity")
      add_strong_positivity_tasks(config, check, tasks);
    else if (check.name == "log-concavity")
      add_log_concavity_tasks(config, check, tasks);
    else if (check.name == "psd-lemmas")
      add_psd_lemmas_tasks(config, check, tasks);
  }

  // Tasks are independent; results land in task order regardless of the
  // worker schedule.
  std::vector<TaskResult> results(tasks.size());
  parallel_for(tasks.size(), [&](std::size_t i) { results[i] = tasks[i](); });

  RunReport report;
  report.config_echo = config.echo;
  for (TaskResult& result : results)
    for (InstanceRow& row : result) report.rows.push_back(std::move(row));
  report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

const std::vector<std::string>& demo_config_texts() {
  static const std::vector<std::string> configs = {
      R"({
  "seed": 71,
  "dims": 1,
  "degree_cap": 6,
  "densities": [{"id": "unit", "type": "unit"}],
  "functions": [{"id": "he1", "type": "hermite", "index": [1]}],
  "checks": [{"name": "classical-poincare"}, {"name": "main"}]
})",
      R"({
  "seed": 72,
  "dims": 1,
  "degree_cap": 6,
  "densities": [{"id": "mix-pm1", "type": "exp_mixture",
                 "weights": [0.5, 0.5], "shifts": [[1.0], [-1.0]]}],
  "functions": [{"id": "he2", "type": "hermite", "index": [2]}],
  "checks": [{"name": "main"}, {"name": "remark5"}, {"name": "refined", "k": 2}]
})",
      R"({
  "seed": 73,
  "dims": 1,
  "degree_cap": 6,
  "densities": [{"id": "wick-square-density", "type": "raw_chaos",
                 "coefficients": [{"index": [0], "value": 1.0},
                                  {"index": [2], "value": 2.0},
                                  {"index": [4], "value": 0.5}]}],
  "functions": [],
  "checks": [{"name": "strong-positivity",
              "lambdas": [1.0, 1.4142135623730951]}]
})"};
  return configs;
}

nlohmann::json run_demo() {
  nlohmann::json runs = nlohmann::json::array();
  int holds = 0, violated = 0, equality = 0, inconclusive = 0;
  for (const std::string& text : demo_config_texts()) {
    const ExperimentConfig config = ExperimentConfig::parse(nlohmann::json::parse(text));
    const RunReport report = run_experiment(config);
    const nlohmann::json summary = report.summary();
    holds += summary.at("holds").get<int>();
    violated += summary.at("violated").get<int>();
    equality += summary.at("equality").get<int>();
    inconclusive += summary.at("inconclusive").get<int>();
    runs.push_back(report.to_json());
  }
  return nlohmann::json{{"library", {{"name", kLibraryName}, {"version", kVersion}}},
                        {"demo", std::move(runs)},
                        {"summary",
                         {{"holds", holds},
                          {"violated", violated},
                          {"equality", equality},
                          {"inconclusive", inconclusive}}}};
}

const std::vector<CheckInfo>& check_registry() {
  static const std::vector<CheckInfo> registry = {
      {"classical-poincare", "Gaussian Poincare inequality Var(F) <= E[|DF|^2], exact coefficient sums",
       {}},
      {"hk", "Houdre-Kagan sandwich around Var(F) with alternating gradient sums",
       {{"k", "positive integer, truncation index (default 1)"}}},
      {"brascamp-lieb", "Brascamp-Lieb bound under a log-concave density e^{-V}",
       {{"quad_order", "per-axis Gauss-Hermite order (default 40)"}}},
      {"main", "Wick-Poincare sandwich 0 <= E_nu[F^2] - <<F<>F,nu>> <= E_nu[|DF|^2]",
       {{"explore", "run on unverified densities, labeled no-claim (default false)"},
        {"density_cap", "chaos cap for the density expansion (default auto)"},
        {"quad_order", "per-axis quadrature order for shift paths (default auto)"}}},
      {"remark5", "(E_nu[F])^2 <= <<F<>F, nu>>",
       {{"explore", "run on unverified densities, labeled no-claim (default false)"}}},
      {"refined", "Houdre-Kagan-refined upper bound on E_nu[F^2] - <<F<>F,nu>>",
       {{"k", "positive integer, truncation index (default 1)"},
        {"explore", "run on unverified densities, labeled no-claim (default false)"}}},
      {"strong-positivity", "structural certification plus grid and Wick-square refutation scans",
       {{"lambdas", "array of lambda >= 1 (default 1.0..3.0 step 0.25)"},
        {"grid", "object {lo, hi, step} (default [-6,6] step 0.1)"},
        {"psd_trials", "random exponential families to test (default 100)"},
        {"psd_family_size", "vectors per family (default 4)"}}},
      {"log-concavity", "Hessian scan of -log(nu * gaussian) over the grid",
       {{"grid", "object {lo, hi, step} (default [-6,6] step 0.1)"}}},
      {"psd-lemmas", "PSD spot-checks: b-matrix, refined a-matrix, Schur products, exponential Grams",
       {{"families", "number of random families (default 100)"},
        {"family_size", "vectors per family (default 4)"},
        {"k", "refined a-matrix truncation index (default 2)"}}},
  };
  return registry;
}

std::string list_checks_text() {
  std::ostringstream os;
  for (const CheckInfo& info : check_registry()) {
    os << info.name << "\n    " << info.description << "\n";
    for (const auto& [key, desc] : info.params.items())
      os << "    --" << key << ": " << desc.get<std::string>() << "\n";
  }
  return os.str();
}

nlohmann::json list_checks_json() {
  nlohmann::json out = nlohmann::json::array();
  for (const CheckInfo& info : check_registry())
    out.push_back({{"name", info.name},
                   {"description", info.description},
                   {"params", info.params.is_null() ? nlohmann::json::object() : info.params}});
  return out;
}

}  // namespace wickchaos

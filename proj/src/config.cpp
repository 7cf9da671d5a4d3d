#include "wickchaos/config.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>

#include "wickchaos/rng.hpp"

namespace wickchaos {

namespace {

const std::set<std::string>& registered_check_names() {
  static const std::set<std::string> names = {
      "classical-poincare", "hk",       "brascamp-lieb", "main",          "remark5",
      "refined",            "strong-positivity", "log-concavity", "psd-lemmas"};
  return names;
}

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError("config field '" + path + "': " + what);
}

const nlohmann::json& require(const nlohmann::json& obj, const std::string& path,
                              const char* key) {
  if (!obj.is_object()) fail(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "missing");
  return *it;
}

int get_int(const nlohmann::json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

double get_double(const nlohmann::json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

std::string get_string(const nlohmann::json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

std::vector<double> get_double_array(const nlohmann::json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of numbers");
  std::vector<double> out;
  for (size_t i = 0; i < j.size(); ++i) out.push_back(get_double(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

MultiIndex get_multi_index(const nlohmann::json& j, const std::string& path, int dims) {
  if (!j.is_array()) fail(path, "expected an array of exponents");
  if (static_cast<int>(j.size()) != dims)
    fail(path, "expected " + std::to_string(dims) + " exponents");
  std::vector<int> entries;
  for (size_t i = 0; i < j.size(); ++i) {
    const int e = get_int(j[i], path + "[" + std::to_string(i) + "]");
    if (e < 0) fail(path + "[" + std::to_string(i) + "]", "exponent must be >= 0");
    entries.push_back(e);
  }
  return MultiIndex(std::move(entries));
}

DensityModel parse_density(const nlohmann::json& j, const std::string& path, int dims) {
  const std::string id = get_string(require(j, path, "id"), path + ".id");
  const std::string type = get_string(require(j, path, "type"), path + ".type");

  if (type == "unit") return DensityModel(UnitDensity{dims}, id);

  if (type == "exp_mixture") {
    const auto weights = get_double_array(require(j, path, "weights"), path + ".weights");
    const auto& shifts_json = require(j, path, "shifts");
    if (!shifts_json.is_array() || shifts_json.size() != weights.size())
      fail(path + ".shifts", "expected one shift vector per weight");
    std::vector<CameronMartinVector> shifts;
    for (size_t i = 0; i < shifts_json.size(); ++i) {
      auto v = get_double_array(shifts_json[i], path + ".shifts[" + std::to_string(i) + "]");
      if (static_cast<int>(v.size()) != dims)
        fail(path + ".shifts[" + std::to_string(i) + "]",
             "expected " + std::to_string(dims) + " coordinates");
      shifts.emplace_back(std::move(v));
    }
    try {
      return DensityModel(ExpMixtureDensity(weights, std::move(shifts)), id);
    } catch (const std::invalid_argument& e) {
      fail(path, e.what());
    }
  }

  if (type == "log_concave_quadratic") {
    // V(w) = 1/2 w^T A w + b^T w with A symmetric positive-definite.
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(dims, dims);
    if (j.contains("matrix")) {
      const auto& rows = j.at("matrix");
      if (!rows.is_array() || static_cast<int>(rows.size()) != dims)
        fail(path + ".matrix", "expected " + std::to_string(dims) + " rows");
      for (int r = 0; r < dims; ++r) {
        const auto row = get_double_array(rows[static_cast<size_t>(r)],
                                          path + ".matrix[" + std::to_string(r) + "]");
        if (static_cast<int>(row.size()) != dims)
          fail(path + ".matrix[" + std::to_string(r) + "]",
               "expected " + std::to_string(dims) + " columns");
        for (int c = 0; c < dims; ++c) A(r, c) = row[static_cast<size_t>(c)];
      }
    }
    Eigen::VectorXd b = Eigen::VectorXd::Zero(dims);
    if (j.contains("linear")) {
      const auto lin = get_double_array(j.at("linear"), path + ".linear");
      if (static_cast<int>(lin.size()) != dims)
        fail(path + ".linear", "expected " + std::to_string(dims) + " coordinates");
      for (int c = 0; c < dims; ++c) b(c) = lin[static_cast<size_t>(c)];
    }
    if (!A.isApprox(A.transpose(), 1e-12)) fail(path + ".matrix", "must be symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
    if (es.eigenvalues().minCoeff() <= 0.0) fail(path + ".matrix", "must be positive-definite");

    // Closed-form normalization of e^{-V}.
    const double Z = std::pow(2.0 * std::numbers::pi, 0.5 * dims) /
                     std::sqrt(A.determinant()) *
                     std::exp(0.5 * b.dot(A.ldlt().solve(b)));
    LogConcaveDensity lc(
        dims,
        [A, b](std::span<const double> x) {
          Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(x.data(), x.size());
          return 0.5 * v.dot(A * v) + b.dot(v);
        },
        [A, b](std::span<const double> x) -> Eigen::VectorXd {
          Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(x.data(), x.size());
          return A * v + b;
        },
        [A](std::span<const double>) -> Eigen::MatrixXd { return A; },
        /*quad_order=*/40, Z);
    lc.gaussian_cov = A.inverse();
    lc.gaussian_mean = -A.ldlt().solve(b);
    return DensityModel(std::move(lc), id);
  }

  if (type == "raw_chaos") {
    const auto& coeffs = require(j, path, "coefficients");
    if (!coeffs.is_array() || coeffs.empty())
      fail(path + ".coefficients", "expected a non-empty array");
    ChaosExpansion expansion(dims);
    for (size_t i = 0; i < coeffs.size(); ++i) {
      const std::string cpath = path + ".coefficients[" + std::to_string(i) + "]";
      const MultiIndex alpha = get_multi_index(require(coeffs[i], cpath, "index"), cpath + ".index", dims);
      expansion.add_to_coeff(alpha, get_double(require(coeffs[i], cpath, "value"), cpath + ".value"));
    }
    RawChaosDensity::Assertion assertion = RawChaosDensity::Assertion::unknown;
    if (j.contains("positivity")) {
      const std::string p = get_string(j.at("positivity"), path + ".positivity");
      if (p == "unknown")
        assertion = RawChaosDensity::Assertion::unknown;
      else if (p == "positive")
        assertion = RawChaosDensity::Assertion::positive;
      else if (p == "strongly_positive")
        assertion = RawChaosDensity::Assertion::strongly_positive;
      else
        fail(path + ".positivity", "expected unknown|positive|strongly_positive");
    }
    try {
      return DensityModel(RawChaosDensity(std::move(expansion), assertion), id);
    } catch (const std::invalid_argument& e) {
      fail(path, e.what());
    }
  }

  fail(path + ".type", "unknown density type '" + type + "'");
}

}  // namespace

ExperimentConfig ExperimentConfig::parse(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config field '$': expected an object");
  ExperimentConfig cfg;

  cfg.dims = get_int(require(j, "$", "dims"), "$.dims");
  if (cfg.dims < 1 || cfg.dims > 6) fail("$.dims", "must be between 1 and 6");
  cfg.degree_cap = get_int(require(j, "$", "degree_cap"), "$.degree_cap");
  if (cfg.degree_cap < 0 || cfg.degree_cap > kMaxDegree) fail("$.degree_cap", "out of range");

  bool needs_seed = false;

  const auto& densities = require(j, "$", "densities");
  if (!densities.is_array()) fail("$.densities", "expected an array");
  for (size_t i = 0; i < densities.size(); ++i)
    cfg.densities.push_back(
        parse_density(densities[i], "$.densities[" + std::to_string(i) + "]", cfg.dims));

  static const std::map<std::string, std::set<std::string>> check_params = {
      {"classical-poincare", {"functions"}},
      {"hk", {"k", "functions"}},
      {"brascamp-lieb", {"quad_order", "densities", "functions"}},
      {"main", {"explore", "density_cap", "quad_order", "densities", "functions"}},
      {"remark5", {"explore", "density_cap", "quad_order", "densities", "functions"}},
      {"refined", {"k", "explore", "density_cap", "quad_order", "densities", "functions"}},
      {"strong-positivity", {"lambdas", "grid", "psd_trials", "psd_family_size", "densities"}},
      {"log-concavity", {"grid", "densities"}},
      {"psd-lemmas", {"families", "family_size", "k", "densities"}},
  };

  const auto& checks = require(j, "$", "checks");
  if (!checks.is_array() || checks.empty()) fail("$.checks", "expected a non-empty array");
  for (size_t i = 0; i < checks.size(); ++i) {
    const std::string cpath = "$.checks[" + std::to_string(i) + "]";
    CheckSpec spec;
    spec.name = get_string(require(checks[i], cpath, "name"), cpath + ".name");
    if (!registered_check_names().contains(spec.name))
      fail(cpath + ".name", "unregistered check '" + spec.name + "'");
    spec.params = checks[i];
    spec.params.erase("name");
    const auto& allowed = check_params.at(spec.name);
    for (const auto& [key, value] : spec.params.items())
      if (!allowed.contains(key)) fail(cpath + "." + key, "unknown parameter for check '" + spec.name + "'");
    // Optional id filters restrict which densities/functions a check visits.
    for (const char* filter : {"densities", "functions"}) {
      if (!spec.params.contains(filter)) continue;
      const auto& ids = spec.params.at(filter);
      if (!ids.is_array() || ids.empty())
        fail(cpath + "." + filter, "expected a non-empty array of ids");
      for (size_t n = 0; n < ids.size(); ++n)
        get_string(ids[n], cpath + "." + filter + "[" + std::to_string(n) + "]");
    }
    if (spec.name == "psd-lemmas" || spec.name == "strong-positivity") needs_seed = true;
    cfg.checks.push_back(std::move(spec));
  }

  // Functions: instantiate in config order; random specs consume successive
  // generator streams so the corpus is pinned by the seed.
  std::uint64_t stream = 0;
  const auto& functions = require(j, "$", "functions");
  if (!functions.is_array()) fail("$.functions", "expected an array");
  const std::vector<nlohmann::json> function_specs(functions.begin(), functions.end());

  if (j.contains("seed")) {
    const auto& s = j.at("seed");
    if (!s.is_number_unsigned() && !s.is_number_integer()) fail("$.seed", "expected an integer");
    cfg.seed = s.get<std::uint64_t>();
  }

  for (size_t i = 0; i < function_specs.size(); ++i) {
    const std::string fpath = "$.functions[" + std::to_string(i) + "]";
    const auto& fj = function_specs[i];
    const std::string id = get_string(require(fj, fpath, "id"), fpath + ".id");
    const std::string type = get_string(require(fj, fpath, "type"), fpath + ".type");
    if (type == "hermite") {
      const MultiIndex alpha =
          get_multi_index(require(fj, fpath, "index"), fpath + ".index", cfg.dims);
      if (alpha.degree() > cfg.degree_cap) fail(fpath + ".index", "degree exceeds degree_cap");
      cfg.functions.push_back({id, ChaosExpansion::hermite_basis(alpha)});
    } else if (type == "polynomial") {
      const auto& coeffs = require(fj, fpath, "coefficients");
      if (!coeffs.is_array() || coeffs.empty())
        fail(fpath + ".coefficients", "expected a non-empty array");
      ChaosExpansion F(cfg.dims);
      for (size_t c = 0; c < coeffs.size(); ++c) {
        const std::string cpath = fpath + ".coefficients[" + std::to_string(c) + "]";
        const MultiIndex alpha =
            get_multi_index(require(coeffs[c], cpath, "index"), cpath + ".index", cfg.dims);
        if (alpha.degree() > cfg.degree_cap) fail(cpath + ".index", "degree exceeds degree_cap");
        F.add_to_coeff(alpha, get_double(require(coeffs[c], cpath, "value"), cpath + ".value"));
      }
      cfg.functions.push_back({id, std::move(F)});
    } else if (type == "random") {
      needs_seed = true;
      if (!j.contains("seed")) fail("$.seed", "required when random function specs are present");
      const int degree = get_int(require(fj, fpath, "degree"), fpath + ".degree");
      if (degree < 0 || degree > cfg.degree_cap) fail(fpath + ".degree", "out of range");
      const int count = get_int(require(fj, fpath, "count"), fpath + ".count");
      if (count < 1) fail(fpath + ".count", "must be >= 1");
      for (int n = 0; n < count; ++n) {
        CounterRng rng(cfg.seed, ++stream);
        cfg.functions.push_back(
            {id + "[" + std::to_string(n) + "]", random_polynomial(cfg.dims, degree, rng)});
      }
    } else {
      fail(fpath + ".type", "unknown function type '" + type + "'");
    }
  }

  if (needs_seed && !j.contains("seed"))
    fail("$.seed", "required when seeded randomness is used by any check");

  // Id filters must reference declared objects ("rand" selects the whole
  // expanded "rand[n]" family).
  for (size_t i = 0; i < cfg.checks.size(); ++i) {
    const std::string cpath = "$.checks[" + std::to_string(i) + "]";
    const auto& params = cfg.checks[i].params;
    if (params.contains("densities")) {
      for (const auto& v : params.at("densities")) {
        const std::string id = v.get<std::string>();
        bool found = false;
        for (const DensityModel& d : cfg.densities) found = found || d.label() == id;
        if (!found) fail(cpath + ".densities", "unknown density id '" + id + "'");
      }
    }
    if (params.contains("functions")) {
      for (const auto& v : params.at("functions")) {
        const std::string id = v.get<std::string>();
        bool found = false;
        for (const FunctionInstance& f : cfg.functions)
          found = found || matches_function_id(f.id, id);
        if (!found) fail(cpath + ".functions", "unknown function id '" + id + "'");
      }
    }
  }

  if (j.contains("tolerances")) {
    const auto& t = j.at("tolerances");
    if (!t.is_object()) fail("$.tolerances", "expected an object");
    if (t.contains("exact")) cfg.tolerances.exact = get_double(t.at("exact"), "$.tolerances.exact");
    if (t.contains("quadrature"))
      cfg.tolerances.quadrature = get_double(t.at("quadrature"), "$.tolerances.quadrature");
    if (t.contains("path")) cfg.tolerances.path = get_double(t.at("path"), "$.tolerances.path");
    if (t.contains("positivity"))
      cfg.tolerances.positivity = get_double(t.at("positivity"), "$.tolerances.positivity");
    if (t.contains("psd")) cfg.tolerances.psd = get_double(t.at("psd"), "$.tolerances.psd");
  }

  for (const auto& [key, value] : j.items()) {
    static const std::set<std::string> known = {"seed",      "dims",   "degree_cap", "densities",
                                                "functions", "checks", "tolerances"};
    if (!known.contains(key)) fail("$." + key, "unknown field");
  }

  cfg.echo = j;
  return cfg;
}

bool matches_function_id(const std::string& instance_id, const std::string& filter_id) {
  if (instance_id == filter_id) return true;
  const auto bracket = instance_id.find('[');
  return bracket != std::string::npos && instance_id.compare(0, bracket, filter_id) == 0;
}

bool id_selected(const nlohmann::json& params, const char* key, const std::string& id,
                 bool function_style) {
  if (!params.contains(key)) return true;
  for (const auto& v : params.at(key)) {
    const std::string want = v.get<std::string>();
    if (function_style ? matches_function_id(id, want) : id == want) return true;
  }
  return false;
}

ExperimentConfig ExperimentConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config file '" + path + "': cannot open");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config file '" + path + "': " + e.what());
  }
  return parse(j);
}

}  // namespace wickchaos

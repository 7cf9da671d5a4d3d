#pragma once

#include <cstdint>
#include <json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wickchaos/chaos_expansion.hpp"
#include "wickchaos/density.hpp"

namespace wickchaos {

// Malformed configs raise this; the message always names the offending
// field, which the CLI forwards verbatim (exit 1).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FunctionInstance {
  std::string id;
  ChaosExpansion expansion;
};

struct CheckSpec {
  std::string name;
  nlohmann::json params;  // validated per-check at run time
};

struct Tolerances {
  double exact = 1e-9;
  double quadrature = 1e-6;
  double path = 1e-7;
  double positivity = 1e-8;
  double psd = 1e-9;
};

// A parsed, validated experiment description. Functions are fully
// instantiated (random specs expanded through the seeded counter-based
// generator), so a config + seed pins every number downstream.
struct ExperimentConfig {
  std::uint64_t seed = 0;
  int dims = 1;
  int degree_cap = 6;
  std::vector<DensityModel> densities;
  std::vector<FunctionInstance> functions;
  std::vector<CheckSpec> checks;
  Tolerances tolerances;
  nlohmann::json echo;  // canonical re-serialization of the input

  static ExperimentConfig parse(const nlohmann::json& j);
  static ExperimentConfig parse_file(const std::string& path);
};

// Whether an instantiated function id matches a filter id; "rand" matches
// the whole expanded family "rand[0]", "rand[1]", ...
bool matches_function_id(const std::string& instance_id, const std::string& filter_id);

// Applies a check's optional "densities"/"functions" id filter.
bool id_selected(const nlohmann::json& params, const char* key, const std::string& id,
                 bool function_style);

}  // namespace wickchaos

#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "wickchaos/config.hpp"

namespace wickchaos {

// One verdict-bearing record: an inequality instance, a positivity audit, a
// PSD lemma, or a log-concavity scan.
struct InstanceRow {
  std::string check;
  std::string density;   // density id, or "" for density-free checks
  std::string function;  // function id, or "" for function-free checks
  std::optional<double> lhs;
  std::optional<double> rhs;
  std::optional<double> tol;
  std::string verdict;  // holds | violated | equality | inconclusive |
                        // certified-strong | refuted | log-concave | not-log-concave
  nlohmann::json detail;

  // Bucket used for summary counts and the exit code.
  std::string summary_bucket() const;
};

struct RunReport {
  nlohmann::json config_echo;
  std::vector<InstanceRow> rows;
  double wall_ms = 0.0;

  nlohmann::json summary() const;
  // Deterministic serialization; wall-clock is deliberately left out of the
  // file (it goes to the run log) so identical configs produce identical
  // bytes.
  nlohmann::json to_json() const;
  std::string to_csv() const;
  // 0 when nothing violated, 2 otherwise.
  int exit_code() const;
};

RunReport run_experiment(const ExperimentConfig& config);

// The built-in demo corpus: three embedded experiment configs exercising the
// classical recovery, the mixture sandwich, and the strong-positivity
// refutation. The refutation makes the combined exit code 2 by design.
const std::vector<std::string>& demo_config_texts();
nlohmann::json run_demo();

struct CheckInfo {
  std::string name;
  std::string description;
  nlohmann::json params;
};

const std::vector<CheckInfo>& check_registry();
std::string list_checks_text();
nlohmann::json list_checks_json();

}  // namespace wickchaos

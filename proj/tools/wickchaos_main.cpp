#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "wickchaos/config.hpp"
#include "wickchaos/json_io.hpp"
#include "wickchaos/runner.hpp"
#include "wickchaos/version.hpp"

namespace {

int write_output(const nlohmann::json& report, const std::string& out_path) {
  if (out_path.empty()) {
    wickchaos::write_json(std::cout, report);
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open output file '" << out_path << "'\n";
    return 1;
  }
  wickchaos::write_json(out, report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hermite-chaos calculus and Poincare-type inequality verification"};
  app.set_version_flag("--version", std::string(wickchaos::kVersion));
  app.require_subcommand(1);

  std::string config_path, out_path, csv_path;
  auto* run_cmd = app.add_subcommand("run", "execute the checks described by a config file");
  run_cmd->add_option("config", config_path, "experiment config (JSON)")->required();
  run_cmd->add_option("-o,--output", out_path, "report file (default: stdout)");
  run_cmd->add_option("--csv", csv_path, "also write a flat CSV of check instances");

  std::string demo_out;
  auto* demo_cmd = app.add_subcommand("demo", "run the built-in example corpus");
  demo_cmd->add_option("-o,--output", demo_out, "report file (default: stdout)");

  bool checks_as_json = false;
  auto* list_cmd = app.add_subcommand("list-checks", "print the registered verifiers");
  list_cmd->add_flag("--json", checks_as_json, "emit JSON instead of text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*list_cmd) {
      if (checks_as_json)
        wickchaos::write_json(std::cout, wickchaos::list_checks_json());
      else
        std::cout << wickchaos::list_checks_text();
      return 0;
    }

    if (*demo_cmd) {
      const nlohmann::json report = wickchaos::run_demo();
      if (const int rc = write_output(report, demo_out); rc != 0) return rc;
      const auto& summary = report.at("summary");
      std::cerr << "demo: " << summary.at("violated").get<int>() << " violated, "
                << summary.at("holds").get<int>() << " holds, "
                << summary.at("equality").get<int>() << " equality, "
                << summary.at("inconclusive").get<int>() << " inconclusive\n";
      return summary.at("violated").get<int>() > 0 ? 2 : 0;
    }

    const wickchaos::ExperimentConfig config = wickchaos::ExperimentConfig::parse_file(config_path);
    const wickchaos::RunReport report = wickchaos::run_experiment(config);
    if (const int rc = write_output(report.to_json(), out_path); rc != 0) return rc;
    if (!csv_path.empty()) {
      std::ofstream csv(csv_path, std::ios::binary);
      if (!csv) {
        std::cerr << "error: cannot open CSV file '" << csv_path << "'\n";
        return 1;
      }
      csv << report.to_csv();
    }
    std::cerr << "run: " << report.rows.size() << " instances in " << report.wall_ms << " ms\n";
    return report.exit_code();
  } catch (const wickchaos::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

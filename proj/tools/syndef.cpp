#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "syndef/harness.hpp"

using namespace syndef;

int main(int argc, char** argv) {
  CLI::App app{"Verification CLI for synthesis-defect codes"};
  harness::ExperimentConfig cfg;
  std::string mode = "exhaustive", params;
  app.add_option("task", cfg.task, "simulate | verify-kdcc | verify-sdcc | enumerate | bounds | sketch-audit")
      ->required()
      ->check(CLI::IsMember(harness::tasks()));
  app.add_option("--n", cfg.n, "strand length");
  app.add_option("--m", cfg.m, "strands per tuple");
  app.add_option("--t", cfg.t, "defects corrected");
  app.add_option("--family", cfg.family, "KDCC family: sum1 | svt1 | array2");
  app.add_option("--seed", cfg.seed, "64-bit seed");
  app.add_option("--mode", mode, "exhaustive | sampled:COUNT");
  app.add_option("--out", cfg.out, "report path (.json or .csv)");
  app.add_option("--params", params, "extra parameters as a JSON object");
  app.add_flag("--timing", cfg.timing, "include wall time in the report");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(harness::ExitCode::usage);
  }

  try {
    cfg.mode = harness::Mode::parse(mode);
    if (!params.empty()) {
      cfg.params = io::json::parse(params);
      if (!cfg.params.is_object()) throw harness::UsageError("--params must be a JSON object");
    }
    auto report = harness::run(cfg);
    for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
    if (cfg.out.empty()) {
      std::cout << harness::report_json(report).dump(2) << '\n';
    } else {
      harness::write(report, cfg.out);
      std::cout << cfg.task << ": " << (report.pass() ? "pass" : "FAIL") << " -> " << cfg.out << '\n';
    }
    return static_cast<int>(report.exit_code());
  } catch (const harness::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
  } catch (const ParameterError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
  } catch (const io::json::exception& e) {
    std::cerr << "usage error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(harness::ExitCode::fail);
  }
  return static_cast<int>(harness::ExitCode::usage);
}

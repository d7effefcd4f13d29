#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tracelab/harness/suites.hpp"

namespace th = tracelab::harness;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

void list_suites() {
  for (const auto& s : th::suite_registry()) std::printf("%-28s %s\n", s.name.c_str(), s.description.c_str());
  std::printf("%-28s %s\n", "all", "every suite above, reported as a JSON array");
}

int emit(const std::string& json, const th::SuiteConfig& cfg, bool pass) {
  if (cfg.reportPath) {
    std::ofstream out(*cfg.reportPath);
    if (!out || !(out << json << '\n') || !out.flush()) {
      std::cerr << "error: cannot write report to '" << *cfg.reportPath << "'\n";
      return kExitUsage;
    }
  }
  std::cout << json << '\n';
  return pass ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of trace-function convexity and operator-mean inequalities"};
  app.require_subcommand(1);

  th::SuiteConfig cfg;
  std::string tensor = "on";
  std::string report;
  bool list = false;

  auto* verify = app.add_subcommand("verify", "run one inequality suite, or all of them");
  verify->add_option("--suite", cfg.suite, "suite name (see --list)");
  verify->add_option("--dims", cfg.dims, "comma-separated matrix dimensions")->delimiter(',')->capture_default_str();
  verify->add_option("--arity", cfg.tupleArity, "largest tuple arity, 1 to 4")->capture_default_str();
  verify->add_option("--trials", cfg.trials, "seeded trials per suite")->capture_default_str();
  verify->add_option("--seed", cfg.seed, "64-bit master seed")->capture_default_str();
  verify->add_option("--abs-tol", cfg.absTol, "absolute tolerance")->capture_default_str();
  verify->add_option("--rel-tol", cfg.relTol, "relative tolerance")->capture_default_str();
  verify->add_option("--tensor-mode", tensor, "tensor-product pairs for two-variable suites")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();
  verify->add_option("--report", report, "also write the JSON report to this file");
  verify->add_flag("--list", list, "print the suite names and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (list) {
    list_suites();
    return kExitPass;
  }
  if (cfg.suite.empty()) {
    std::cerr << "error: --suite is required (see --list)\n";
    return kExitUsage;
  }
  cfg.tensorMode = tensor == "on";
  if (!report.empty()) cfg.reportPath = report;

  try {
    th::validate(cfg);
    if (cfg.suite == "all") {
      const auto reports = th::run_all(cfg);
      bool pass = true;
      for (const auto& r : reports) {
        pass = pass && r.pass();
        std::cerr << r.suite << ": " << (r.pass() ? "pass" : "fail") << " (" << r.failures << "/" << r.trials
                  << " failing trials)\n";
      }
      return emit(th::to_json(reports), cfg, pass);
    }
    if (!th::find_suite(cfg.suite)) {
      std::cerr << "error: unknown suite '" << cfg.suite << "' (see --list)\n";
      return kExitUsage;
    }
    const auto r = th::run_suite(cfg);
    std::cerr << r.suite << ": " << (r.pass() ? "pass" : "fail") << " (" << r.failures << "/" << r.trials
              << " failing trials)\n";
    return emit(th::to_json(r), cfg, r.pass());
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

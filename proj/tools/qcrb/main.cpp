#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "qcrb/cli/commands.hpp"
#include "qcrb/version.hpp"

using namespace qcrb;
using namespace qcrb::cli;

namespace {

struct Options {
  std::string config;
  std::string scenario;
  std::string out;
  std::string format = "text";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  double resolution = 1.0;
  std::vector<std::string> tolerances;
  std::string suite;
};

Scenario load(const Options& o) {
  if (o.config.empty() == o.scenario.empty()) {
    throw ConfigError("config", "give exactly one of --config PATH or --scenario NAME");
  }
  Overrides ov;
  ov.seed = o.seed;
  ov.samples = o.samples;
  ov.resolution_multiplier = o.resolution;
  ov.tolerances = o.tolerances;
  if (!o.scenario.empty()) return parse_scenario(find_bundled(o.scenario).config, ov);
  const std::filesystem::path p(o.config);
  return parse_scenario(load_json_file(o.config), ov, p.parent_path().empty() ? "." : p.parent_path().string());
}

int emit(const Report& rep, const Options& o) {
  const std::string json = to_json_text(rep.to_json());
  if (!o.out.empty()) {
    std::ofstream f(o.out);
    if (!f) throw ConfigError("out", "cannot write " + o.out);
    f << json;
  }
  if (o.format == "json") {
    std::cout << json;
  } else {
    rep.write_summary(std::cout);
  }
  return rep.passed() ? 0 : 1;
}

void add_common(CLI::App* cmd, Options& o, bool scenario_flags) {
  cmd->add_option("--out", o.out, "Write the JSON report to PATH");
  cmd->add_option("--format", o.format, "Console output: text or json")
      ->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--tolerance", o.tolerances, "Override a named tolerance, key=value (repeatable)");
  if (!scenario_flags) return;
  cmd->add_option("--config", o.config, "Scenario file");
  cmd->add_option("--scenario", o.scenario, "Bundled scenario name");
  cmd->add_option("--seed", o.seed, "Override simulation.seed");
  cmd->add_option("--resolution", o.resolution, "Multiply every quadrature resolution")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum Cramer-Rao bounds for metric parameters probed by Gaussian fields"};
  app.set_version_flag("--version", std::string(kToolName) + " " + kVersion);
  app.require_subcommand(1);
  Options o;

  CLI::App* bound = app.add_subcommand("bound", "Compute the bound for a scenario");
  add_common(bound, o, true);
  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo estimator against the bound");
  add_common(simulate, o, true);
  simulate->add_option("--samples", o.samples, "Override simulation.N");
  CLI::App* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", o.suite, "Suite name")->required();
  add_common(verify, o, false);
  CLI::App* list = app.add_subcommand("list-scenarios", "List bundled scenarios and suites");
  add_common(list, o, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*bound) return emit(run_bound(load(o)), o);
    if (*simulate) return emit(run_simulate(load(o)), o);
    if (*verify) {
      Tolerances tol = Tolerances::defaults();
      for (const std::string& t : o.tolerances) tol.set_from_text(t);
      return emit(run_verify(o.suite, tol), o);
    }
    if (*list) return emit(list_scenarios(), o);
  } catch (const StageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

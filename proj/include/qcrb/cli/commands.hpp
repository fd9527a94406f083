#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "qcrb/cli/report.hpp"
#include "qcrb/cli/scenario.hpp"

namespace qcrb::cli {

/// A module error annotated with the pipeline stage that raised it.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, std::string kind, const std::string& message);
  const std::string& stage() const { return stage_; }
  /// "domain", "numerical" or "config"
  const std::string& kind() const { return kind_; }

 private:
  std::string stage_;
  std::string kind_;
};

/// Metric, stress-energy, generator and probe chain for the scenario's analysis.
Report run_bound(const Scenario& scenario);

/// Monte Carlo readout and estimator with the bound for comparison. Writes the
/// samples to simulation.dump when set.
Report run_simulate(const Scenario& scenario);

/// Runs a named verification suite; ConfigError lists the suites when unknown.
Report run_verify(const std::string& suite, const Tolerances& tolerances = Tolerances::defaults());
const std::vector<std::string>& verify_suites();

Report list_scenarios();

}  // namespace qcrb::cli

#pragma once

#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcrb/estimator/estimator.hpp"
#include "qcrb/generator/coordinate_check.hpp"
#include "qcrb/metric/families.hpp"
#include "qcrb/probe/probe.hpp"

namespace qcrb::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kScenarioSchema = "qcrb-scenario/1";

/// Read-only view of one JSON object that reports missing or mistyped entries
/// as ConfigError carrying the dotted key path.
class Node {
 public:
  Node(const Json& j, std::string path);

  bool has(const std::string& key) const;
  std::string path(const std::string& key) const;
  const std::string& path() const { return path_; }
  const Json& json() const { return *j_; }

  Node child(const std::string& key) const;
  double number(const std::string& key) const;
  double number(const std::string& key, double fallback) const;
  long long integer(const std::string& key) const;
  long long integer(const std::string& key, long long fallback) const;
  std::string text(const std::string& key) const;
  std::string text(const std::string& key, const std::string& fallback) const;
  bool flag(const std::string& key, bool fallback) const;
  std::array<double, 4> vec4(const std::string& key) const;
  std::array<int, 4> resolution(const std::string& key, std::array<int, 4> fallback) const;

  /// Throws for any key outside `allowed`.
  void allow_only(std::initializer_list<const char*> allowed) const;

 private:
  const Json& at(const std::string& key) const;

  const Json* j_;
  std::string path_;
};

/// Named tolerances shared by run_bound, run_simulate and run_verify.
class Tolerances {
 public:
  static Tolerances defaults();

  double get(const std::string& key) const;
  /// Throws ConfigError listing the known keys when `key` is unknown.
  void set(const std::string& key, double value);
  /// Parses "key=value".
  void set_from_text(const std::string& assignment);
  const std::map<std::string, double>& values() const { return values_; }

 private:
  std::map<std::string, double> values_;
};

enum class AnalysisKind { Amplitude, TraceNull, CoordinateCheck, ProperTime, Component };

struct SimulationSpec {
  std::size_t N = 0;
  std::uint64_t seed = 0;
  double A_true = 0.0;
  std::string dump_path;
};

/// A parsed scenario. `source` holds the configuration after command-line
/// overrides; rerunning it reproduces the same numbers.
struct Scenario {
  Json source;
  std::string name;
  std::string description;
  double hbar = 1.0;
  AnalysisKind analysis = AnalysisKind::Amplitude;
  std::string analysis_name;

  std::optional<MetricFamily> family;
  std::string stress_kind;
  std::optional<BumpProfile> bump;
  std::optional<StressEnergyField> stress;
  std::optional<RegionSpec> region;
  std::optional<GaussianProbeState> probe;
  /// Same band spectrum on a lattice with `factor` times the cells; empty for
  /// single-mode and tabulated spectra.
  std::function<ModeSpectrum(int factor)> refined_spectrum;
  RemainderModel remainder = RemainderModel::SingleMode;
  std::optional<SimulationSpec> simulation;
  Tolerances tolerances = Tolerances::defaults();

  // Analysis parameters.
  std::function<double(double)> lapse_profile;
  int component_mu = 0;
  int component_nu = 0;
  double component_variance = 0.0;
  double energy_variance = 0.0;
  CoordinateBox test_region;
  CoordinateCheckOptions coordinate_options;
};

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  double resolution_multiplier = 1.0;
  std::vector<std::string> tolerances;
};

/// Applies overrides to the raw configuration, then builds every stage.
/// Relative paths in the scenario resolve against `base_dir`.
Scenario parse_scenario(Json config, const Overrides& overrides = {},
                        const std::string& base_dir = ".");

Json load_json_file(const std::string& path);

struct BundledScenario {
  std::string name;
  std::string description;
  Json config;
};

const std::vector<BundledScenario>& bundled_scenarios();
/// Throws ConfigError listing the bundled names when `name` is unknown.
const BundledScenario& find_bundled(const std::string& name);

}  // namespace qcrb::cli

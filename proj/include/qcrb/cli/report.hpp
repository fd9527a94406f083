#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qcrb/cli/scenario.hpp"

namespace qcrb::cli {

inline constexpr const char* kReportSchema = "qcrb-report/1";

/// One pass/fail comparison. `residual` and `tolerance` share units; the check
/// passes when residual <= tolerance (NaN never passes).
struct Check {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

/// {"value": v, "unit": u}
Json quantity(Json value, const std::string& unit);

/// Structured result of one command. Bodies hold no timing so equal inputs give
/// byte-identical JSON.
class Report {
 public:
  explicit Report(std::string command);

  void set_seed(std::uint64_t seed) { seed_ = seed; }
  void set_scenario(const Json& source, double hbar);
  /// results[section][key]
  Json& section(const std::string& name);
  void note(const std::string& text) { notes_.push_back(text); }

  const Check& check(const std::string& name, double residual, double tolerance,
                     const std::string& detail = "");
  /// Folds another report's checks and results in under `prefix`.
  void merge(const Report& other, const std::string& prefix);

  const std::vector<Check>& checks() const { return checks_; }
  bool passed() const;
  const std::string& command() const { return command_; }

  Json to_json() const;
  /// Aligned plain-text summary of results and checks.
  void write_summary(std::ostream& os) const;

 private:
  std::string command_;
  std::optional<std::uint64_t> seed_;
  Json scenario_;
  Json units_;
  Json results_ = Json::object();
  std::vector<Check> checks_;
  std::vector<std::string> notes_;
};

/// JSON text with every floating-point number printed to 17 significant digits.
/// Non-finite numbers become the strings "inf", "-inf" and "nan".
void write_json(std::ostream& os, const Json& j, int indent = 2);
std::string to_json_text(const Json& j, int indent = 2);

}  // namespace qcrb::cli

#include "qcrb/cli/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>

#include "qcrb/version.hpp"

namespace qcrb::cli {

namespace {

std::string format_double(double v) {
  if (std::isnan(v)) return "\"nan\"";
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  // Keep it a JSON number that still reads back as floating point.
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

void emit(std::ostream& os, const Json& j, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << '{' << nl;
      bool first = true;
      for (const auto& item : j.items()) {
        if (!first) os << ',' << nl;
        first = false;
        os << pad << Json(item.key()).dump() << (indent > 0 ? ": " : ":");
        emit(os, item.value(), indent, depth + 1);
      }
      os << nl << close_pad << '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& v) { return v.is_primitive(); });
      if (flat) {
        os << '[';
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i > 0) os << ", ";
          emit(os, j[i], indent, depth + 1);
        }
        os << ']';
        return;
      }
      os << '[' << nl;
      bool first = true;
      for (const Json& v : j) {
        if (!first) os << ',' << nl;
        first = false;
        os << pad;
        emit(os, v, indent, depth + 1);
      }
      os << nl << close_pad << ']';
      return;
    }
    case Json::value_t::number_float:
      os << format_double(j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

std::string short_number(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object() && j.contains("value") && j.contains("unit") && j.size() == 2) {
    const Json& v = j["value"];
    std::string text = v.is_number_float() ? short_number(v.get<double>()) : v.dump();
    if (v.is_string()) text = v.get<std::string>();
    out.emplace_back(prefix, text + " " + j["unit"].get<std::string>());
    return;
  }
  if (j.is_object()) {
    for (const auto& item : j.items()) {
      flatten(item.value(), prefix.empty() ? item.key() : prefix + "." + item.key(), out);
    }
    return;
  }
  if (j.is_array() && !j.empty() && !j.front().is_primitive()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    return;
  }
  if (j.is_number_float()) {
    out.emplace_back(prefix, short_number(j.get<double>()));
  } else if (j.is_string()) {
    out.emplace_back(prefix, j.get<std::string>());
  } else {
    out.emplace_back(prefix, j.dump());
  }
}

}  // namespace

Json quantity(Json value, const std::string& unit) {
  Json q = Json::object();
  q["value"] = value;
  q["unit"] = unit;
  return q;
}

Report::Report(std::string command) : command_(std::move(command)) {}

void Report::set_scenario(const Json& source, double hbar) {
  scenario_ = source;
  units_ = Json::object();
  units_["system"] = "geometrized, G = c = 1";
  units_["hbar"] = hbar;
}

Json& Report::section(const std::string& name) {
  if (!results_.contains(name)) results_[name] = Json::object();
  return results_[name];
}

const Check& Report::check(const std::string& name, double residual, double tolerance,
                           const std::string& detail) {
  Check c;
  c.name = name;
  c.residual = residual;
  c.tolerance = tolerance;
  c.passed = residual <= tolerance;
  c.detail = detail;
  checks_.push_back(std::move(c));
  return checks_.back();
}

void Report::merge(const Report& other, const std::string& prefix) {
  for (const Check& c : other.checks_) {
    Check copy = c;
    copy.name = prefix + "/" + c.name;
    checks_.push_back(std::move(copy));
  }
  if (!other.results_.empty()) results_[prefix] = other.results_;
  for (const std::string& n : other.notes_) notes_.push_back(prefix + ": " + n);
}

bool Report::passed() const {
  for (const Check& c : checks_) {
    if (!c.passed) return false;
  }
  return true;
}

Json Report::to_json() const {
  Json j = Json::object();
  j["schema"] = kReportSchema;
  j["tool"] = {{"name", kToolName}, {"version", kVersion}};
  j["command"] = command_;
  j["seed"] = seed_ ? Json(*seed_) : Json(nullptr);
  if (!scenario_.is_null()) {
    j["scenario"] = scenario_;
    j["units"] = units_;
  }
  j["results"] = results_;
  Json checks = Json::array();
  for (const Check& c : checks_) {
    Json e = Json::object();
    e["name"] = c.name;
    e["residual"] = c.residual;
    e["tolerance"] = c.tolerance;
    e["passed"] = c.passed;
    if (!c.detail.empty()) e["detail"] = c.detail;
    checks.push_back(e);
  }
  j["checks"] = checks;
  if (!notes_.empty()) j["notes"] = notes_;
  j["passed"] = passed();
  return j;
}

void Report::write_summary(std::ostream& os) const {
  os << kToolName << ' ' << command_;
  if (seed_) os << "  (seed " << *seed_ << ')';
  os << '\n';
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(results_, "", rows);
  std::size_t width = 0;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  for (const Check& c : checks_) width = std::max(width, c.name.size());
  if (!rows.empty()) os << "\nresults\n";
  for (const auto& [k, v] : rows) os << "  " << std::left << std::setw(static_cast<int>(width)) << k << "  " << v << '\n';
  if (!checks_.empty()) os << "\nchecks\n";
  for (const Check& c : checks_) {
    os << "  " << std::left << std::setw(static_cast<int>(width)) << c.name << "  "
       << (c.passed ? "PASS" : "FAIL") << "  residual " << std::setw(16) << short_number(c.residual)
       << " tolerance " << short_number(c.tolerance);
    if (!c.detail.empty()) os << "  (" << c.detail << ')';
    os << '\n';
  }
  for (const std::string& n : notes_) os << "note: " << n << '\n';
  std::size_t failed = 0;
  for (const Check& c : checks_) failed += c.passed ? 0 : 1;
  os << '\n' << (failed == 0 ? "PASSED" : "FAILED") << "  " << (checks_.size() - failed) << '/'
     << checks_.size() << " checks\n";
}

void write_json(std::ostream& os, const Json& j, int indent) { emit(os, j, indent, 0); }

std::string to_json_text(const Json& j, int indent) {
  std::ostringstream os;
  write_json(os, j, indent);
  os << '\n';
  return os.str();
}

}  // namespace qcrb::cli

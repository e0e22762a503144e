#ifndef QMINK_REPORT_HPP
#define QMINK_REPORT_HPP

#include <algorithm>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace qmink {

using Json = nlohmann::ordered_json;

inline constexpr int report_schema_version = 1;
inline constexpr const char* report_schema_id = "qmink-report";

/// One verified identity. Numeric checks carry a residual and tolerance;
/// symbolic checks carry the normalized residual in DSL syntax.
struct CheckItem {
  std::string name;
  bool pass = false;
  std::optional<double> residual;
  std::optional<double> tolerance;
  std::optional<bool> exact;
  std::optional<std::string> rendered;
  std::optional<std::string> note;
};

struct SuiteReport {
  std::string suite;
  Json inputs = Json::object();
  std::vector<CheckItem> checks;
  std::optional<std::string> error;
  std::optional<double> wall_seconds;

  bool pass() const {
    return !error && std::all_of(checks.begin(), checks.end(),
                                 [](const CheckItem& c) { return c.pass; });
  }
  std::size_t failures() const {
    return static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(),
                      [](const CheckItem& c) { return !c.pass; }));
  }
};

inline Json to_json(const CheckItem& c) {
  Json j;
  j["name"] = c.name;
  j["status"] = c.pass ? "pass" : "fail";
  if (c.residual) {
    j["residual"] = *c.residual;
  }
  if (c.tolerance) {
    j["tolerance"] = *c.tolerance;
  }
  if (c.exact) {
    j["exact"] = *c.exact;
  }
  if (c.rendered) {
    j["rendered"] = *c.rendered;
  }
  if (c.note) {
    j["note"] = *c.note;
  }
  return j;
}

inline Json to_json(const SuiteReport& r) {
  Json j;
  j["suite"] = r.suite;
  j["status"] = r.pass() ? "pass" : "fail";
  j["inputs"] = r.inputs;
  j["checks"] = Json::array();
  for (const auto& c : r.checks) {
    j["checks"].push_back(to_json(c));
  }
  if (r.error) {
    j["error"] = *r.error;
  }
  if (r.wall_seconds) {
    j["wall_seconds"] = *r.wall_seconds;
  }
  return j;
}

inline Json bundle_json(const std::string& command,
                        const std::vector<SuiteReport>& reports) {
  Json j;
  j["schema"] = report_schema_id;
  j["schema_version"] = report_schema_version;
  j["command"] = command;
  bool ok = true;
  j["reports"] = Json::array();
  for (const auto& r : reports) {
    ok = ok && r.pass();
    j["reports"].push_back(to_json(r));
  }
  j["status"] = ok ? "pass" : "fail";
  return j;
}

inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

inline std::string render_text(const SuiteReport& r) {
  std::string out = "== " + r.suite + " ";
  for (auto it = r.inputs.begin(); it != r.inputs.end(); ++it) {
    out += it.key() + "=" + it.value().dump() + " ";
  }
  out += "\n";
  for (const auto& c : r.checks) {
    out += c.pass ? "PASS " : "FAIL ";
    out += c.name;
    if (c.residual) {
      out += "  residual=" + format_number(*c.residual);
      if (c.exact && *c.exact) {
        out += " (exact)";
      }
    }
    if (c.rendered && !c.pass) {
      out += "  residual: " + *c.rendered;
    }
    if (c.note) {
      out += "  [" + *c.note + "]";
    }
    out += "\n";
  }
  if (r.error) {
    out += "ERROR " + *r.error + "\n";
  }
  out += r.suite + ": " + (r.pass() ? "pass" : "fail") + " (" +
         std::to_string(r.checks.size() - r.failures()) + "/" +
         std::to_string(r.checks.size()) + ")";
  if (r.wall_seconds) {
    out += " in " + format_number(*r.wall_seconds) + " s";
  }
  out += "\n";
  return out;
}

}  // namespace qmink

#endif  // QMINK_REPORT_HPP

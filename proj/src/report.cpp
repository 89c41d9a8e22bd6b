#include "conemaps/report.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace conemaps {

namespace {

using ordered_json = nlohmann::ordered_json;

// Fixed-format rendering keeps markdown stable across platforms.
std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", x);
  return buf;
}

std::string bin_label(int exponent) {
  return "1e" + std::to_string(exponent) + "..1e" + std::to_string(exponent + 1);
}

ordered_json to_json(const TheoremReport& r) {
  ordered_json j;
  j["schema"] = kReportSchema;
  j["theorem"] = theorem_name(r.theorem);
  j["status"] = r.passed() ? "PASS" : "FAIL";
  j["n"] = r.dims.n;
  j["m"] = r.dims.m;
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["tol"] = r.tol;
  j["tolerance"] = r.tolerance;
  j["checks"] = r.checks;
  j["boundary"] = r.boundary;
  j["worst_violation"] = r.worst_violation;
  ordered_json hist = ordered_json::array();
  for (const auto& [e, count] : r.histogram) {
    hist.push_back({{"log10_lo", e}, {"count", count}});
  }
  j["violation_histogram"] = hist;
  ordered_json stats = ordered_json::object();
  for (const auto& [k, v] : r.stats) stats[k] = v;
  j["stats"] = stats;
  ordered_json fails = ordered_json::array();
  for (const Failure& f : r.failures) {
    fails.push_back({{"trial", f.trial}, {"conditions", f.conditions}, {"violation", f.violation}});
  }
  j["failures"] = fails;
  j["notes"] = r.notes;
  return j;
}

std::string to_markdown(const TheoremReport& r) {
  std::ostringstream os;
  os << "# " << (r.passed() ? "PASS" : "FAIL") << ": " << theorem_name(r.theorem)
     << " (n=" << r.dims.n << ", m=" << r.dims.m << ")\n\n";
  os << "| field | value |\n|---|---|\n";
  os << "| schema | " << kReportSchema << " |\n";
  os << "| trials | " << r.trials << " |\n";
  os << "| seed | " << r.seed << " |\n";
  os << "| tol | " << num(r.tol) << " |\n";
  os << "| failure threshold | " << num(r.tolerance) << " |\n";
  os << "| checks | " << r.checks << " |\n";
  os << "| boundary (excluded) | " << r.boundary << " |\n";
  os << "| worst violation | " << num(r.worst_violation) << " |\n";
  for (const auto& [k, v] : r.stats) os << "| " << k << " | " << num(v) << " |\n";
  os << "\n## Violation histogram\n\n";
  if (r.histogram.empty()) {
    os << "no nonzero violations\n";
  } else {
    os << "| range | count |\n|---|---|\n";
    for (const auto& [e, count] : r.histogram) os << "| " << bin_label(e) << " | " << count << " |\n";
  }
  os << "\n## Failures\n\n";
  if (r.failures.empty()) {
    os << "none\n";
  } else {
    os << "| trial | conditions | violation |\n|---|---|---|\n";
    for (const Failure& f : r.failures) {
      os << "| " << f.trial << " | " << f.conditions << " | " << num(f.violation) << " |\n";
    }
  }
  if (!r.notes.empty()) {
    os << "\n## Notes\n\n";
    for (const std::string& n : r.notes) os << "- " << n << "\n";
  }
  return os.str();
}

}  // namespace

std::optional<ReportFormat> parse_report_format(std::string_view name) {
  if (name == "json") return ReportFormat::Json;
  if (name == "markdown" || name == "md") return ReportFormat::Markdown;
  return std::nullopt;
}

std::string emit_report(const TheoremReport& r, ReportFormat format) {
  if (format == ReportFormat::Json) return to_json(r).dump(2) + "\n";
  return to_markdown(r);
}

}  // namespace conemaps

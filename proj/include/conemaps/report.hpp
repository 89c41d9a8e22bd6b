// Serialization of TheoremReports. Output is a pure function of the report
// (elapsed time is deliberately left out so identical runs give identical
// bytes).

#ifndef CONEMAPS_REPORT_HPP
#define CONEMAPS_REPORT_HPP

#include <optional>
#include <string>
#include <string_view>

#include "conemaps/harness.hpp"

namespace conemaps {

enum class ReportFormat { Json, Markdown };

inline constexpr std::string_view kReportSchema = "conemaps-report/1";

std::optional<ReportFormat> parse_report_format(std::string_view name);
std::string emit_report(const TheoremReport& r, ReportFormat format);

}  // namespace conemaps

#endif  // CONEMAPS_REPORT_HPP

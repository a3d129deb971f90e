#pragma once

#include <string>
#include <vector>

#include "monotone/verdict.hpp"

namespace monotone {

enum class ReportFormat { Json, Csv };

struct ReportEntry {
    Verdict verdict;
    double runtime_ms = 0.0;
};

/// Render verdicts with a stable field order and floats at 17 significant
/// digits: identical inputs give byte-identical text. By default runtime_ms
/// is zeroed so repeated runs of the same seeded battery compare equal;
/// pass include_timings = true to trade reproducibility for measurements.
std::string render_report(const std::vector<ReportEntry>& entries, ReportFormat format,
                          bool include_timings = false);

/// Write the rendered report to `path` (InvalidInputError on unwritable).
void emit_report(const std::vector<ReportEntry>& entries, ReportFormat format,
                 const std::string& path, bool include_timings = false);

void emit_report(const std::vector<Verdict>& verdicts, ReportFormat format,
                 const std::string& path);

/// "%.17g" rendering used everywhere a float reaches a report.
std::string format_double(double v);

/// Parse a JSON report back into entries (lossless round trip).
std::vector<ReportEntry> parse_report_entries(const std::string& json_text);

}  // namespace monotone

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "centi/harness.hpp"
#include "centi/metrics.hpp"

namespace centi {

enum class ReportFormat { Text, Csv };

/// "text" or "csv"; ConfigError otherwise.
ReportFormat parse_report_format(std::string_view name);

/// Aggregate rows ordered by environment, leg and mode. Text: one table per
/// left/right mode with Land and Water column groups. CSV: a header line and
/// one line per row. Values use one decimal (alpha in %, E literal form).
std::string render_report(std::vector<AggregateRow> rows, ReportFormat format);

/// Sweep rows in offset order followed by rankings by alpha (descending) and
/// by E (ascending). The CSV carries both ranks as columns.
std::string render_sweep(const std::vector<SweepRow>& rows, ReportFormat format);

}  // namespace centi

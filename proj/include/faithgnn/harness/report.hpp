#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "faithgnn/harness/experiment.hpp"

namespace faithgnn::harness {

enum class ReportFormat { Csv, Markdown };
ReportFormat parse_report_format(const std::string& s);

/// "0.07 ± 0.02" with both numbers rounded to two decimals.
std::string format_mean_std(const MeanStd& v);

/// One row per report with Acc and the six faithfulness columns; rows of
/// excluded runs show "--" in the metric columns. CSV carries the color
/// classes in three annotation columns; markdown appends a [red] / [orange]
/// / [green] token to each random-baseline cell.
std::string render_report(const std::vector<RunReport>& reports, ReportFormat format);

/// Every run_report.json below `dir`, sorted by path.
std::vector<RunReport> collect_reports(const std::filesystem::path& dir);

} // namespace faithgnn::harness

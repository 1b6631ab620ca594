#include "faithgnn/harness/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "faithgnn/error.hpp"

namespace faithgnn::harness {

namespace fs = std::filesystem;

ReportFormat parse_report_format(const std::string& s) {
    if (s == "csv") return ReportFormat::Csv;
    if (s == "markdown" || s == "md") return ReportFormat::Markdown;
    throw ParameterError("unknown report format '" + s + "' (expected csv or markdown)");
}

namespace {

std::string hundredths(double v) {
    const long long h = std::llround(v * 100.0);
    const long long a = h < 0 ? -h : h;
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%s%lld.%02lld", h < 0 ? "-" : "", a / 100, a % 100);
    return buf;
}

struct Row {
    std::string dataset;
    std::string model;
    std::string acc;
    std::string cells[6];
    std::string colors[3];
    bool valid = true;
};

Row make_row(const RunReport& r) {
    Row row;
    row.dataset = r.dataset;
    row.model = r.model + (r.complete ? "" : " (incomplete)");
    row.acc = format_mean_std(r.acc);
    row.valid = r.validity.valid;
    if (!row.valid) {
        for (auto& c : row.cells) c = "--";
        for (auto& c : row.colors) c = "--";
        return row;
    }
    const MeanStd* values[6] = {&r.unf_e, &r.unf_r, &r.fid_minus_e, &r.fid_minus_r, &r.fid_plus_e, &r.fid_plus_r};
    for (int i = 0; i < 6; ++i) row.cells[i] = format_mean_std(*values[i]);
    row.colors[0] = to_string(color_class(MetricDirection::LowerBetter, r.unf_e.mean, r.unf_r.mean));
    row.colors[1] = to_string(color_class(MetricDirection::LowerBetter, r.fid_minus_e.mean, r.fid_minus_r.mean));
    row.colors[2] = to_string(color_class(MetricDirection::HigherBetter, r.fid_plus_e.mean, r.fid_plus_r.mean));
    return row;
}

} // namespace

std::string format_mean_std(const MeanStd& v) { return hundredths(v.mean) + " ± " + hundredths(v.std); }

std::string render_report(const std::vector<RunReport>& reports, ReportFormat format) {
    if (reports.empty()) throw ParameterError("render_report: no run reports");
    std::ostringstream out;
    if (format == ReportFormat::Csv) {
        out << "dataset,model,acc,unf_e,unf_r,fid_minus_e,fid_minus_r,fid_plus_e,fid_plus_r,"
               "color_unf,color_fid_minus,color_fid_plus\n";
        for (const auto& r : reports) {
            const Row row = make_row(r);
            out << row.dataset << ',' << row.model << ',' << row.acc;
            for (const auto& c : row.cells) out << ',' << c;
            for (const auto& c : row.colors) out << ',' << c;
            out << '\n';
        }
        return out.str();
    }
    out << "| Dataset | Model | Acc (↑) | Unf(E) (↓) | Unf(R) (↓) | Fid-(E) (↓) | Fid-(R) (↓) | Fid+(E) (↑) | Fid+(R) (↑) |\n"
        << "|---|---|---|---|---|---|---|---|---|\n";
    for (const auto& r : reports) {
        const Row row = make_row(r);
        out << "| " << row.dataset << " | " << row.model << " | " << row.acc;
        for (int i = 0; i < 6; ++i) {
            out << " | " << row.cells[i];
            if (row.valid && i % 2 == 1) out << " [" << row.colors[i / 2] << "]";
        }
        out << " |\n";
    }
    return out.str();
}

std::vector<RunReport> collect_reports(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw ParameterError("report: " + dir.string() + " is not a directory");
    std::vector<fs::path> paths;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().filename() == "run_report.json") paths.push_back(entry.path());
    }
    std::sort(paths.begin(), paths.end());
    std::vector<RunReport> out;
    for (const auto& p : paths) {
        std::ifstream in(p);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(p.string() + ": " + e.what());
        }
        out.push_back(run_report_from_json(j));
    }
    if (out.empty()) throw ParameterError("report: no run_report.json under " + dir.string());
    return out;
}

} // namespace faithgnn::harness

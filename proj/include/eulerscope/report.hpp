#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "eulerscope/series.hpp"

namespace eulerscope {

/// Numeric table behind series.csv. Doubles are printed with %.17g, so a
/// parsed table reproduces the written values exactly.
struct SeriesTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    /// Index of a column, or -1.
    int find(const std::string& name) const;
    std::vector<double> column(const std::string& name) const;
};

/// Criteria that were requested but cannot be evaluated on this series,
/// with the reason.
struct Omission {
    Criterion criterion;
    std::string reason;
};

/// Columns: time, every NormReport scalar (regional ones when present), then
/// <criterion>_integrand and <criterion>_integral for each enabled criterion
/// the series supports.
SeriesTable make_table(const CriterionSeries& s, const std::vector<Criterion>& enabled,
                       std::vector<Omission>* omitted = nullptr);

std::string to_csv(const SeriesTable& t);
/// Errors: CorruptInput on a missing header, ragged or truncated rows,
/// unparsable numbers, or no data rows.
SeriesTable parse_csv(const std::string& text);

/// Two-panel plot (integrand, running integral) for one criterion column pair.
std::string svg_plot(const SeriesTable& t, Criterion c);
/// Criteria with both columns present in the table.
std::vector<Criterion> plotted_criteria(const SeriesTable& t);

/// JSON summary: metadata, integrals with error estimates, omissions,
/// Gronwall audits, growth fit of ||w||.
std::string summary_json(const CriterionSeries& s, const std::vector<Criterion>& enabled);

/// Plain-text summary built from a table alone.
std::string summary_text(const SeriesTable& t);

/// Writes series.csv, summary.json and plot_<criterion>.svg into dir; returns
/// the file names written. Errors: Io with the failing path.
std::vector<std::string> write_report(const std::filesystem::path& dir, const CriterionSeries& s,
                                      const std::vector<Criterion>& enabled);

/// Regenerates plot_<criterion>.svg and summary.txt next to a series CSV
/// without recomputation; returns the file names written.
std::vector<std::string> regenerate_report(const std::filesystem::path& csv_path);

std::string read_text_file(const std::filesystem::path& p);
void write_text_file(const std::filesystem::path& p, const std::string& content);

}  // namespace eulerscope

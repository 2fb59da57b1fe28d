#pragma once

#include <string>
#include <vector>

#include "robusteval/scoring.hpp"

namespace robusteval {

// Half-up rounding to two decimals; percentages are kept at full precision
// internally and rounded only when a report leaves the process.
double round2(double x);
std::string format2(double x);

// Report JSON for one parser. Percentages are rounded to two decimals;
// undefined degradation becomes null.
std::string report_to_json(const RobustnessReport& report);
RobustnessReport report_from_json(const std::string& text);

// Checks the relations every report must satisfy (labeled <= unlabeled,
// inclusive == rescored exclusive) and throws std::logic_error on violation.
// Called before anything is written out.
void check_report_invariants(const RobustnessReport& report);

// Minimal CSV with unquoted cells; cells must not contain commas, quotes or
// line breaks, so parse/render round-trips byte-identically.
std::string render_csv(const std::vector<std::vector<std::string>>& rows);
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

// Table with one row per parser: overall and per-level scores for both
// metrics (failure-inclusive). Levels absent from a report leave empty cells.
std::string reports_to_csv(const std::vector<RobustnessReport>& reports);

// Plot data: one "parser,level,score" row per scored level.
enum class Metric { kUnlabeled, kLabeled };
std::string reports_to_plot_csv(const std::vector<RobustnessReport>& reports, Metric metric);

}  // namespace robusteval

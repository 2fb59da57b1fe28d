#include "robusteval/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

namespace robusteval {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kInclExclTolerance = 1e-9;

}  // namespace

double round2(double x) { return std::floor(x * 100.0 + 0.5) / 100.0; }

std::string format2(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", round2(x));
  return buf;
}

void check_report_invariants(const RobustnessReport& report) {
  const auto check = [](bool ok, const std::string& what) {
    if (!ok) {
      throw std::logic_error("report invariant violated: " + what);
    }
  };
  check(report.overall_labeled <= report.overall_unlabeled + kInclExclTolerance,
        "overall labeled > unlabeled");
  for (const LevelScore& s : report.levels) {
    const std::string at = "level " + std::to_string(s.level);
    check(s.labeled_incl <= s.unlabeled_incl + kInclExclTolerance, at + " labeled > unlabeled");
    check(s.labeled_excl <= s.unlabeled_excl + kInclExclTolerance,
          at + " labeled_excl > unlabeled_excl");
    check(s.n_failures <= s.n_pairs, at + " failure count exceeds pair count");
    check(std::abs(s.unlabeled_incl - rescore_inclusive(s.unlabeled_excl, s.n_pairs,
                                                        s.n_failures)) < kInclExclTolerance,
          at + " inclusive/exclusive mismatch (unlabeled)");
    check(std::abs(s.labeled_incl -
                   rescore_inclusive(s.labeled_excl, s.n_pairs, s.n_failures)) <
              kInclExclTolerance,
          at + " inclusive/exclusive mismatch (labeled)");
  }
}

std::string report_to_json(const RobustnessReport& report) {
  ordered_json j;
  j["parser"] = report.parser;
  ordered_json levels = ordered_json::array();
  for (const LevelScore& s : report.levels) {
    ordered_json level;
    level["level"] = s.level;
    level["n_pairs"] = s.n_pairs;
    level["n_failures"] = s.n_failures;
    level["unlabeled_incl"] = round2(s.unlabeled_incl);
    level["labeled_incl"] = round2(s.labeled_incl);
    level["unlabeled_excl"] = round2(s.unlabeled_excl);
    level["labeled_excl"] = round2(s.labeled_excl);
    levels.push_back(std::move(level));
  }
  j["levels"] = std::move(levels);
  j["overall"]["unlabeled"] = round2(report.overall_unlabeled);
  j["overall"]["labeled"] = round2(report.overall_labeled);
  if (report.degradation.unlabeled.has_value()) {
    j["degradation"]["unlabeled"] = round2(*report.degradation.unlabeled);
  } else {
    j["degradation"]["unlabeled"] = nullptr;
  }
  if (report.degradation.labeled.has_value()) {
    j["degradation"]["labeled"] = round2(*report.degradation.labeled);
  } else {
    j["degradation"]["labeled"] = nullptr;
  }
  return j.dump(2) + "\n";
}

RobustnessReport report_from_json(const std::string& text) {
  RobustnessReport report;
  const ordered_json j = ordered_json::parse(text);
  report.parser = j.at("parser").get<std::string>();
  for (const auto& level : j.at("levels")) {
    LevelScore s;
    s.level = level.at("level").get<int>();
    s.n_pairs = level.at("n_pairs").get<std::size_t>();
    s.n_failures = level.at("n_failures").get<std::size_t>();
    s.unlabeled_incl = level.at("unlabeled_incl").get<double>();
    s.labeled_incl = level.at("labeled_incl").get<double>();
    s.unlabeled_excl = level.at("unlabeled_excl").get<double>();
    s.labeled_excl = level.at("labeled_excl").get<double>();
    // Raw counts are recoverable from the rounded percentages only
    // approximately; reports round-trip scores, not counts.
    s.n_structural_matches = 0;
    s.n_labeled_matches = 0;
    report.levels.push_back(s);
  }
  report.overall_unlabeled = j.at("overall").at("unlabeled").get<double>();
  report.overall_labeled = j.at("overall").at("labeled").get<double>();
  const auto& degradation = j.at("degradation");
  if (!degradation.at("unlabeled").is_null()) {
    report.degradation.unlabeled = degradation.at("unlabeled").get<double>();
  }
  if (!degradation.at("labeled").is_null()) {
    report.degradation.labeled = degradation.at("labeled").get<double>();
  }
  return report;
}

std::string render_csv(const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      const std::string& cell = row[i];
      if (cell.find_first_of(",\"\r\n") != std::string::npos) {
        throw std::invalid_argument("csv cell needs quoting: \"" + cell + "\"");
      }
      if (i > 0) {
        out += ',';
      }
      out += cell;
    }
    out += '\n';
  }
  return out;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::string cell;
  std::vector<std::string> row;
  for (char c : text) {
    if (c == '\n') {
      row.push_back(cell);
      cell.clear();
      rows.push_back(std::move(row));
      row.clear();
    } else if (c == ',') {
      row.push_back(cell);
      cell.clear();
    } else {
      cell += c;
    }
  }
  if (!cell.empty() || !row.empty()) {
    row.push_back(cell);
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

const LevelScore* level_of(const RobustnessReport& r, int level) {
  for (const LevelScore& s : r.levels) {
    if (s.level == level) {
      return &s;
    }
  }
  return nullptr;
}

}  // namespace

std::string reports_to_csv(const std::vector<RobustnessReport>& reports) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"parser", "unlabeled_overall", "unlabeled_1", "unlabeled_2", "unlabeled_3",
                  "labeled_overall", "labeled_1", "labeled_2", "labeled_3"});
  for (const RobustnessReport& r : reports) {
    std::vector<std::string> row{r.parser, format2(r.overall_unlabeled)};
    for (int level = 1; level <= 3; ++level) {
      const LevelScore* s = level_of(r, level);
      row.push_back(s != nullptr ? format2(s->unlabeled_incl) : "");
    }
    row.push_back(format2(r.overall_labeled));
    for (int level = 1; level <= 3; ++level) {
      const LevelScore* s = level_of(r, level);
      row.push_back(s != nullptr ? format2(s->labeled_incl) : "");
    }
    rows.push_back(std::move(row));
  }
  return render_csv(rows);
}

std::string reports_to_plot_csv(const std::vector<RobustnessReport>& reports, Metric metric) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"parser", "level", "score"});
  for (const RobustnessReport& r : reports) {
    for (const LevelScore& s : r.levels) {
      rows.push_back({r.parser, std::to_string(s.level),
                      format2(metric == Metric::kUnlabeled ? s.unlabeled_incl : s.labeled_incl)});
    }
  }
  return render_csv(rows);
}

}  // namespace robusteval

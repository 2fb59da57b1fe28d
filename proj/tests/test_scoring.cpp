#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "robusteval/report_io.hpp"
#include "robusteval/rng.hpp"
#include "robusteval/scoring.hpp"

using namespace robusteval;

TEST_SUITE_BEGIN("scoring");

namespace {

ParseOutcome graph_a() {
  return ParseOutcome::parsed(
      ParseGraph(GraphMode::kDirected, 2, {{0, 2, "root"}, {2, 1, "ncsubj"}}));
}
ParseOutcome graph_relabel() {
  return ParseOutcome::parsed(
      ParseGraph(GraphMode::kDirected, 2, {{0, 2, "root"}, {2, 1, "dobj"}}));
}
ParseOutcome graph_restructure() {
  return ParseOutcome::parsed(
      ParseGraph(GraphMode::kDirected, 2, {{0, 1, "root"}, {1, 2, "dobj"}}));
}

// n_pairs verdicts at the level with the requested failure/match counts.
std::vector<PairVerdict> synthetic_level(int level, std::size_t n_pairs, std::size_t n_failures,
                                         std::size_t n_structural, std::size_t n_labeled) {
  std::vector<PairVerdict> verdicts;
  for (std::size_t i = 0; i < n_pairs; ++i) {
    PairVerdict v;
    v.base_id = "s" + std::to_string(i % 19 + 1);
    v.error_level = level;
    if (i < n_failures) {
      v.ns_failed = true;
    } else if (i < n_failures + n_structural) {
      v.structural_match = true;
      v.labeled_match = i < n_failures + n_labeled;
    }
    verdicts.push_back(v);
  }
  return verdicts;
}

}  // namespace

TEST_CASE("compare_pair basics") {
  const PairVerdict same = compare_pair(graph_a(), graph_a(), 1, "s1");
  CHECK(same.structural_match);
  CHECK(same.labeled_match);
  CHECK_FALSE(same.cs_failed);
  CHECK_FALSE(same.ns_failed);

  const PairVerdict relabeled = compare_pair(graph_a(), graph_relabel(), 1, "s1");
  CHECK(relabeled.structural_match);
  CHECK_FALSE(relabeled.labeled_match);

  const PairVerdict restructured = compare_pair(graph_a(), graph_restructure(), 1, "s1");
  CHECK_FALSE(restructured.structural_match);
  CHECK_FALSE(restructured.labeled_match);
}

TEST_CASE("failures reject the pair regardless of the other side") {
  const PairVerdict failed_ns = compare_pair(graph_a(), ParseOutcome::failed("timeout"), 1, "s1");
  CHECK(failed_ns.ns_failed);
  CHECK_FALSE(failed_ns.structural_match);
  CHECK_FALSE(failed_ns.labeled_match);
  CHECK(failed_ns.note.find("timeout") != std::string::npos);

  const PairVerdict failed_cs = compare_pair(ParseOutcome::failed("no parse"), graph_a(), 1, "s1");
  CHECK(failed_cs.cs_failed);
  CHECK_FALSE(failed_cs.structural_match);
}

TEST_CASE("incomparable outcomes score false with a note") {
  const ParseOutcome three_tokens = ParseOutcome::parsed(
      ParseGraph(GraphMode::kDirected, 3, {{0, 1, "root"}, {1, 2, "x"}, {1, 3, "y"}}));
  const PairVerdict v = compare_pair(graph_a(), three_tokens, 2, "s7");
  CHECK_FALSE(v.structural_match);
  CHECK_FALSE(v.labeled_match);
  CHECK_FALSE(v.cs_failed);
  CHECK_FALSE(v.ns_failed);
  CHECK(v.note.find("incomparable") != std::string::npos);
}

TEST_CASE("score_level reproduces the published footnote numbers") {
  // 255 level-1 pairs, 23 failed, 186 structural / 155 labeled matches.
  const auto structural = synthetic_level(1, 255, 23, 186, 155);
  const LevelScore score = score_level(structural);
  CHECK(score.n_pairs == 255);
  CHECK(score.n_failures == 23);
  CHECK(round2(score.unlabeled_incl) == doctest::Approx(72.94));
  CHECK(round2(score.unlabeled_excl) == doctest::Approx(80.17));
  CHECK(round2(score.labeled_incl) == doctest::Approx(60.78));
  CHECK(round2(score.labeled_excl) == doctest::Approx(66.81));
}

TEST_CASE("score_level perfect and empty cases") {
  const auto perfect = synthetic_level(2, 50, 0, 50, 50);
  const LevelScore score = score_level(perfect);
  CHECK(score.unlabeled_incl == doctest::Approx(100.0));
  CHECK(score.labeled_incl == doctest::Approx(100.0));
  CHECK(score.unlabeled_excl == doctest::Approx(100.0));

  CHECK_THROWS_AS(score_level({}), std::invalid_argument);

  auto mixed = synthetic_level(1, 3, 0, 3, 3);
  mixed[1].error_level = 2;
  CHECK_THROWS_AS(score_level(mixed), std::invalid_argument);
}

TEST_CASE("all-failed level scores zero without dividing by zero") {
  const auto all_failed = synthetic_level(3, 10, 10, 0, 0);
  const LevelScore score = score_level(all_failed);
  CHECK(score.unlabeled_incl == 0.0);
  CHECK(score.unlabeled_excl == 0.0);
  CHECK(score.labeled_excl == 0.0);
}

TEST_CASE("rescore_inclusive matches the footnote arithmetic") {
  CHECK(std::abs(rescore_inclusive(80.17, 255, 23) - 72.94) < 0.01);
  CHECK(std::abs(rescore_inclusive(66.81, 255, 23) - 60.78) < 0.01);
  CHECK(rescore_inclusive(55.5, 100, 0) == doctest::Approx(55.5));
  CHECK_THROWS_AS(rescore_inclusive(50.0, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(rescore_inclusive(50.0, 5, 6), std::invalid_argument);
}

TEST_CASE("aggregate is pair-weighted, never an average of percentages") {
  // Accepted counts inverted from the published C&C unlabeled row.
  const std::vector<LevelScore> levels = {
      score_level(synthetic_level(1, 255, 0, 186, 150)),
      score_level(synthetic_level(2, 94, 0, 59, 26)),
      score_level(synthetic_level(3, 94, 0, 38, 19)),
  };
  const RobustnessReport report = aggregate("candc", levels);
  CHECK(round2(report.overall_unlabeled) == doctest::Approx(63.88));
  // naive level-averaging would give a different number
  const double naive =
      (levels[0].unlabeled_incl + levels[1].unlabeled_incl + levels[2].unlabeled_incl) / 3.0;
  CHECK(std::abs(report.overall_unlabeled - naive) > 0.5);

  // labeled counts 150/26/19 invert the StatCCG labeled row
  CHECK(round2(report.overall_labeled) == doctest::Approx(44.02));
}

TEST_CASE("aggregate rejects duplicates and empty input") {
  const LevelScore one = score_level(synthetic_level(1, 10, 0, 10, 10));
  CHECK_THROWS_AS(aggregate("x", {one, one}), std::invalid_argument);
  CHECK_THROWS_AS(aggregate("x", {}), std::invalid_argument);
  const RobustnessReport single = aggregate("x", {one});
  CHECK(single.overall_unlabeled == doctest::Approx(100.0));
  CHECK_FALSE(single.degradation.unlabeled.has_value());
}

TEST_CASE("degradation percentages match the published drops") {
  CHECK(std::abs(degradation(72.94, 40.43) - 44.6) < 0.15);
  CHECK(std::abs(degradation(40.39, 8.51) - 78.9) < 0.15);
  CHECK(std::abs(degradation(29.41, 1.06) - 96.4) < 0.15);
  CHECK(degradation(55.5, 55.5) == doctest::Approx(0.0));
  CHECK(degradation(55.5, 0.0) == doctest::Approx(100.0));
  CHECK_THROWS_AS(degradation(0.0, 10.0), std::invalid_argument);
}

TEST_CASE("fscore matches the published preciseness figures") {
  CHECK(std::abs(fscore(86.6, 92.1) - 89.3) < 0.05);
  CHECK(std::abs(fscore(54.6, 43.7) - 48.5) < 0.05);
  CHECK(fscore(77.7, 77.7) == doctest::Approx(77.7));
  CHECK_THROWS_AS(fscore(0.0, 0.0), std::invalid_argument);
}

TEST_CASE("labeled never exceeds unlabeled and incl matches rescoring") {
  Rng rng(1234);
  for (int round = 0; round < 200; ++round) {
    const std::size_t n = 1 + rng.below(60);
    std::vector<PairVerdict> verdicts;
    for (std::size_t i = 0; i < n; ++i) {
      PairVerdict v;
      v.base_id = "s1";
      v.error_level = 1 + static_cast<int>(rng.below(3));
      switch (rng.below(4)) {
        case 0:
          v.ns_failed = true;
          break;
        case 1:
          break;  // parsed, no match
        case 2:
          v.structural_match = true;
          break;
        default:
          v.structural_match = true;
          v.labeled_match = true;
          break;
      }
      verdicts.push_back(v);
    }
    const RobustnessReport report = score_verdicts("rand", verdicts);
    CHECK(report.overall_labeled <= report.overall_unlabeled + 1e-9);
    for (const LevelScore& s : report.levels) {
      CHECK(s.labeled_incl <= s.unlabeled_incl + 1e-9);
      CHECK(std::abs(s.unlabeled_incl -
                     rescore_inclusive(s.unlabeled_excl, s.n_pairs, s.n_failures)) < 1e-9);
      CHECK(std::abs(s.labeled_incl -
                     rescore_inclusive(s.labeled_excl, s.n_pairs, s.n_failures)) < 1e-9);
    }
    CHECK_NOTHROW(check_report_invariants(report));

    // order invariance
    std::vector<PairVerdict> shuffled = verdicts;
    for (std::size_t i = shuffled.size(); i > 1; --i) {
      std::swap(shuffled[i - 1], shuffled[rng.below(i)]);
    }
    const RobustnessReport reshuffled = score_verdicts("rand", shuffled);
    CHECK(reshuffled.overall_unlabeled == doctest::Approx(report.overall_unlabeled));
    CHECK(reshuffled.overall_labeled == doctest::Approx(report.overall_labeled));
  }
}

TEST_CASE("failing a matching pair never raises any score") {
  Rng rng(777);
  for (int round = 0; round < 100; ++round) {
    std::vector<PairVerdict> verdicts;
    const std::size_t n = 5 + rng.below(40);
    for (std::size_t i = 0; i < n; ++i) {
      PairVerdict v;
      v.base_id = "s1";
      v.error_level = 1 + static_cast<int>(rng.below(3));
      v.structural_match = rng.below(2) == 0;
      v.labeled_match = v.structural_match && rng.below(2) == 0;
      verdicts.push_back(v);
    }
    const RobustnessReport before = score_verdicts("x", verdicts);

    std::vector<std::size_t> matching;
    for (std::size_t i = 0; i < n; ++i) {
      if (verdicts[i].structural_match) {
        matching.push_back(i);
      }
    }
    if (matching.empty()) {
      continue;
    }
    PairVerdict& victim = verdicts[matching[rng.index(matching.size())]];
    victim.ns_failed = true;
    victim.structural_match = false;
    victim.labeled_match = false;

    const RobustnessReport after = score_verdicts("x", verdicts);
    CHECK(after.overall_unlabeled <= before.overall_unlabeled + 1e-9);
    CHECK(after.overall_labeled <= before.overall_labeled + 1e-9);
    for (const LevelScore& sb : before.levels) {
      for (const LevelScore& sa : after.levels) {
        if (sa.level == sb.level) {
          CHECK(sa.unlabeled_incl <= sb.unlabeled_incl + 1e-9);
          CHECK(sa.labeled_incl <= sb.labeled_incl + 1e-9);
        }
      }
    }
  }
}

TEST_CASE("report json round-trips the scores") {
  const std::vector<LevelScore> levels = {
      score_level(synthetic_level(1, 255, 23, 186, 155)),
      score_level(synthetic_level(2, 94, 10, 59, 32)),
      score_level(synthetic_level(3, 94, 20, 38, 14)),
  };
  const RobustnessReport report = aggregate("candc", levels);
  const std::string json = report_to_json(report);
  const RobustnessReport loaded = report_from_json(json);
  CHECK(loaded.parser == "candc");
  CHECK(loaded.levels.size() == 3);
  CHECK(loaded.overall_unlabeled == doctest::Approx(round2(report.overall_unlabeled)));
  CHECK(loaded.levels[0].n_pairs == 255);
  CHECK(loaded.levels[0].unlabeled_incl == doctest::Approx(72.94));
  REQUIRE(loaded.degradation.unlabeled.has_value());
  CHECK(*loaded.degradation.unlabeled ==
        doctest::Approx(round2(*report.degradation.unlabeled)));
}

TEST_CASE("csv cells round-trip byte for byte") {
  const std::vector<LevelScore> levels = {score_level(synthetic_level(1, 10, 1, 8, 6)),
                                          score_level(synthetic_level(3, 10, 2, 5, 3))};
  const RobustnessReport report = aggregate("demo", levels);
  const std::string csv = reports_to_csv({report});
  CHECK(render_csv(parse_csv(csv)) == csv);

  const std::string plot = reports_to_plot_csv({report}, Metric::kLabeled);
  CHECK(render_csv(parse_csv(plot)) == plot);
  // level 2 was not scored: no row for it
  CHECK(plot.find("demo,2,") == std::string::npos);
  CHECK(plot.find("demo,3,") != std::string::npos);
}

TEST_CASE("half-up presentation rounding") {
  CHECK(format2(72.9449) == "72.94");
  // 0.125 is exact in binary; half-up sends the .5 tie upward where
  // round-to-even would not.
  CHECK(format2(0.125) == "0.13");
  CHECK(format2(0.0) == "0.00");
  CHECK(format2(100.0) == "100.00");
}

TEST_SUITE_END();

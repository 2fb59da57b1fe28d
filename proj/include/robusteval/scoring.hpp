#pragma once

#include <optional>
#include <string>
#include <vector>

#include "robusteval/parse_graph.hpp"

namespace robusteval {

// Comparison result for one (clean, noisy) sentence pair. A parse failure on
// either side forces both match flags false: failing to cover a sentence is
// itself a robustness defect, so failed pairs count as rejected.
struct PairVerdict {
  std::string base_id;
  int error_level = 0;
  bool cs_failed = false;
  bool ns_failed = false;
  bool structural_match = false;
  bool labeled_match = false;
  std::string note;  // failure or incomparability reason, empty otherwise

  bool operator==(const PairVerdict&) const = default;
};

PairVerdict compare_pair(const ParseOutcome& cs, const ParseOutcome& ns, int level,
                         const std::string& base_id);

// Scores for one error level. The _incl percentages count failed pairs in
// the denominator (the headline numbers); the _excl variants are computed
// over failure-free pairs only. When every pair failed, both variants are 0.
struct LevelScore {
  int level = 0;
  std::size_t n_pairs = 0;
  std::size_t n_failures = 0;
  std::size_t n_structural_matches = 0;
  std::size_t n_labeled_matches = 0;
  double unlabeled_incl = 0.0;
  double labeled_incl = 0.0;
  double unlabeled_excl = 0.0;
  double labeled_excl = 0.0;
};

LevelScore score_level(const std::vector<PairVerdict>& verdicts);

// Failure-inclusive rescoring: excl_score * (n_pairs - n_failures) / n_pairs.
double rescore_inclusive(double excl_score, std::size_t n_pairs, std::size_t n_failures);

// Relative score drop between two error levels, as a percentage of the
// earlier level's score. Throws ("undefined degradation") when from == 0.
double degradation(double level1_score, double level3_score);

// 2pr / (p + r). Throws when p + r == 0.
double fscore(double precision, double recall);

struct DegradationStats {
  std::optional<double> unlabeled;  // levels 1 -> 3, failure-inclusive
  std::optional<double> labeled;
};

struct RobustnessReport {
  std::string parser;
  std::vector<LevelScore> levels;  // ascending, only levels that were scored
  // Pair-weighted over every scored pair (sum of accepted / sum of pairs),
  // failure-inclusive.
  double overall_unlabeled = 0.0;
  double overall_labeled = 0.0;
  DegradationStats degradation;
};

// Combines per-level scores; levels must be distinct and non-empty. The
// overall percentages are recomputed from the raw counts, never by averaging
// the per-level percentages.
RobustnessReport aggregate(const std::string& parser, const std::vector<LevelScore>& levels);

// Convenience: group verdicts by level, score each, aggregate.
RobustnessReport score_verdicts(const std::string& parser,
                                const std::vector<PairVerdict>& verdicts);

}  // namespace robusteval

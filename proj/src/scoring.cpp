#include "robusteval/scoring.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace robusteval {

PairVerdict compare_pair(const ParseOutcome& cs, const ParseOutcome& ns, int level,
                         const std::string& base_id) {
  PairVerdict v;
  v.base_id = base_id;
  v.error_level = level;
  v.cs_failed = !cs.ok();
  v.ns_failed = !ns.ok();
  if (v.cs_failed || v.ns_failed) {
    if (v.cs_failed) {
      v.note = "clean parse failed: " + cs.failure_reason();
    }
    if (v.ns_failed) {
      if (!v.note.empty()) {
        v.note += "; ";
      }
      v.note += "noisy parse failed: " + ns.failure_reason();
    }
    return v;
  }
  try {
    v.structural_match = structure_equal(cs.graph(), ns.graph());
    v.labeled_match = v.structural_match && labeled_equal(cs.graph(), ns.graph());
  } catch (const std::runtime_error& ex) {
    v.structural_match = false;
    v.labeled_match = false;
    v.note = ex.what();
  }
  return v;
}

LevelScore score_level(const std::vector<PairVerdict>& verdicts) {
  if (verdicts.empty()) {
    throw std::invalid_argument("no verdicts to score");
  }
  LevelScore score;
  score.level = verdicts.front().error_level;
  score.n_pairs = verdicts.size();
  for (const PairVerdict& v : verdicts) {
    if (v.error_level != score.level) {
      throw std::invalid_argument("verdicts mix error levels");
    }
    if (v.cs_failed || v.ns_failed) {
      ++score.n_failures;
    }
    if (v.structural_match) {
      ++score.n_structural_matches;
    }
    if (v.labeled_match) {
      ++score.n_labeled_matches;
    }
  }
  const auto pct = [](std::size_t hits, std::size_t total) {
    return total == 0 ? 0.0 : 100.0 * static_cast<double>(hits) / static_cast<double>(total);
  };
  score.unlabeled_incl = pct(score.n_structural_matches, score.n_pairs);
  score.labeled_incl = pct(score.n_labeled_matches, score.n_pairs);
  const std::size_t clean = score.n_pairs - score.n_failures;
  score.unlabeled_excl = pct(score.n_structural_matches, clean);
  score.labeled_excl = pct(score.n_labeled_matches, clean);
  return score;
}

double rescore_inclusive(double excl_score, std::size_t n_pairs, std::size_t n_failures) {
  if (n_pairs == 0) {
    throw std::invalid_argument("rescore_inclusive: no pairs");
  }
  if (n_failures > n_pairs) {
    throw std::invalid_argument("rescore_inclusive: more failures than pairs");
  }
  return excl_score * static_cast<double>(n_pairs - n_failures) / static_cast<double>(n_pairs);
}

double degradation(double level1_score, double level3_score) {
  if (!(level1_score > 0.0)) {
    throw std::invalid_argument("undefined degradation: level-1 score is zero");
  }
  return 100.0 * (level1_score - level3_score) / level1_score;
}

double fscore(double precision, double recall) {
  if (!(precision + recall > 0.0)) {
    throw std::invalid_argument("f-score undefined: precision + recall is zero");
  }
  return 2.0 * precision * recall / (precision + recall);
}

RobustnessReport aggregate(const std::string& parser, const std::vector<LevelScore>& levels) {
  if (levels.empty()) {
    throw std::invalid_argument("no level scores to aggregate");
  }
  RobustnessReport report;
  report.parser = parser;
  report.levels = levels;
  std::sort(report.levels.begin(), report.levels.end(),
            [](const LevelScore& x, const LevelScore& y) { return x.level < y.level; });

  std::size_t pairs = 0;
  std::size_t structural = 0;
  std::size_t labeled = 0;
  for (std::size_t i = 0; i < report.levels.size(); ++i) {
    const LevelScore& s = report.levels[i];
    if (i > 0 && s.level == report.levels[i - 1].level) {
      throw std::invalid_argument("duplicate level " + std::to_string(s.level));
    }
    if (s.n_pairs == 0) {
      throw std::invalid_argument("level " + std::to_string(s.level) + " has no pairs");
    }
    pairs += s.n_pairs;
    structural += s.n_structural_matches;
    labeled += s.n_labeled_matches;
  }
  report.overall_unlabeled = 100.0 * static_cast<double>(structural) / static_cast<double>(pairs);
  report.overall_labeled = 100.0 * static_cast<double>(labeled) / static_cast<double>(pairs);

  const auto at = [&report](int level) -> const LevelScore* {
    for (const LevelScore& s : report.levels) {
      if (s.level == level) {
        return &s;
      }
    }
    return nullptr;
  };
  const LevelScore* first = at(1);
  const LevelScore* third = at(3);
  if (first != nullptr && third != nullptr) {
    if (first->unlabeled_incl > 0.0) {
      report.degradation.unlabeled = degradation(first->unlabeled_incl, third->unlabeled_incl);
    }
    if (first->labeled_incl > 0.0) {
      report.degradation.labeled = degradation(first->labeled_incl, third->labeled_incl);
    }
  }
  return report;
}

RobustnessReport score_verdicts(const std::string& parser,
                                const std::vector<PairVerdict>& verdicts) {
  std::map<int, std::vector<PairVerdict>> by_level;
  for (const PairVerdict& v : verdicts) {
    by_level[v.error_level].push_back(v);
  }
  std::vector<LevelScore> levels;
  levels.reserve(by_level.size());
  for (const auto& [level, group] : by_level) {
    (void)level;
    levels.push_back(score_level(group));
  }
  return aggregate(parser, levels);
}

}  // namespace robusteval

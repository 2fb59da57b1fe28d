#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "robusteval/grammar.hpp"
#include "robusteval/text.hpp"

namespace robusteval {

// Binary derivation tree. Leaves carry the terminal word; log_prob is the
// log probability of the whole subderivation (sum of rule log probabilities).
struct ParseTree {
  std::string symbol;
  std::unique_ptr<ParseTree> left;
  std::unique_ptr<ParseTree> right;
  std::string word;  // leaf only
  double log_prob = 0.0;

  bool is_leaf() const { return left == nullptr; }
  int leaf_count() const;
  std::string to_bracketed() const;  // "(S (A a) (B b))"
};

// The derivation's probability recomputed from the grammar as a plain product
// of rule probabilities, looking every rule up again. Deliberately shares no
// arithmetic with the chart; tests compare the two routes.
double tree_probability(const PcfgGrammar& g, const ParseTree& t);

struct TreeOutcome {
  std::unique_ptr<ParseTree> tree;  // null when failed
  std::string failure_reason;

  bool ok() const { return tree != nullptr; }
};

// Viterbi CYK over the token texts: chart cell (i, len, symbol) holds the
// best log probability of deriving tokens [i, i+len) from symbol, filled
// bottom-up over span lengths. Ties prefer the smaller split point, then the
// first rule in (lhs, rhs1, rhs2) order. Returns failed ("no parse") when
// the start symbol does not cover the sentence.
TreeOutcome cyk_parse(const PcfgGrammar& g, const std::vector<std::string>& words);
TreeOutcome cyk_parse(const PcfgGrammar& g, const Sentence& s);

// Exhaustive derivation enumeration by recursive span splitting; complete
// and duplicate-free. Oracle for the chart parser; limited to 8 words.
std::vector<std::unique_ptr<ParseTree>> enumerate_parses(const PcfgGrammar& g,
                                                         const std::vector<std::string>& words);

}  // namespace robusteval

#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace robusteval {

struct BinaryRule {
  std::string lhs;
  std::string rhs1;
  std::string rhs2;
  double prob = 0.0;
  double log_prob = 0.0;
};

struct LexicalRule {
  std::string lhs;
  std::string word;
  double prob = 0.0;
  double log_prob = 0.0;
};

// Probabilistic context-free grammar in Chomsky normal form. Rule
// probabilities lie in (0, 1] and sum to 1 (within 1e-6) over each left-hand
// side. Words without any lexical rule are covered by the unknown-word
// model: every symbol in unknown_preterminals derives them with probability
// unknown_prob.
class PcfgGrammar {
 public:
  // Line format:
  //   %start S
  //   %unknown NN VB : 1e-6
  //   S -> NP VP : 0.9
  //   NN -> 'dog' : 0.5
  // '#' starts a comment. Without %start, the first rule's lhs is the start
  // symbol.
  static PcfgGrammar parse(std::string_view text, const std::string& source = "<string>");
  static PcfgGrammar load(const std::string& path);

  const std::string& start() const { return start_; }
  // Sorted by (lhs, rhs1, rhs2); this is also the Viterbi tie-break order.
  const std::vector<BinaryRule>& binary_rules() const { return binary_rules_; }
  const std::vector<LexicalRule>& lexical_rules() const { return lexical_rules_; }
  const std::set<std::string>& nonterminals() const { return nonterminals_; }
  const std::set<std::string>& unknown_preterminals() const { return unknown_preterminals_; }
  double unknown_prob() const { return unknown_prob_; }

  bool knows_word(const std::string& word) const;
  const std::vector<LexicalRule>& rules_for_word(const std::string& word) const;

 private:
  PcfgGrammar() = default;
  void validate(const std::string& source) const;
  void finalize(const std::string& source);

  std::string start_;
  std::vector<BinaryRule> binary_rules_;
  std::vector<LexicalRule> lexical_rules_;
  std::set<std::string> nonterminals_;
  std::set<std::string> unknown_preterminals_;
  double unknown_prob_ = 0.0;
  std::map<std::string, std::vector<LexicalRule>> by_word_;
};

}  // namespace robusteval

#pragma once

#include <string>

#include "robusteval/cyk.hpp"
#include "robusteval/grammar.hpp"
#include "robusteval/head_rules.hpp"
#include "robusteval/parse_graph.hpp"
#include "robusteval/text.hpp"

namespace robusteval {

// Structure-blind baseline: token 1 hangs off the root, token i off token
// i-1, every edge labeled "chain". Depends only on the token count, so any
// clean/noisy pair compares equal; used to validate the harness end to end.
ParseGraph chain_parse(const Sentence& s);

// Viterbi PCFG parser with head-rule dependency conversion. A chart failure
// becomes a failed outcome ("no parse"), never an exception.
class CykDependencyParser {
 public:
  CykDependencyParser(PcfgGrammar grammar, HeadRules head_rules)
      : grammar_(std::move(grammar)), head_rules_(std::move(head_rules)) {}

  ParseOutcome parse(const Sentence& s) const;

  const PcfgGrammar& grammar() const { return grammar_; }

 private:
  PcfgGrammar grammar_;
  HeadRules head_rules_;
};

}  // namespace robusteval

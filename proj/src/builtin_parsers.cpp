#include "robusteval/builtin_parsers.hpp"

#include <stdexcept>
#include <vector>

namespace robusteval {

ParseGraph chain_parse(const Sentence& s) {
  if (s.tokens.empty()) {
    throw std::invalid_argument("empty sentence");
  }
  std::vector<LabeledEdge> edges;
  edges.reserve(s.tokens.size());
  for (int i = 1; i <= static_cast<int>(s.tokens.size()); ++i) {
    edges.push_back(LabeledEdge{i - 1, i, "chain"});
  }
  return ParseGraph(GraphMode::kDirected, static_cast<int>(s.tokens.size()), edges);
}

ParseOutcome CykDependencyParser::parse(const Sentence& s) const {
  const TreeOutcome result = cyk_parse(grammar_, s);
  if (!result.ok()) {
    return ParseOutcome::failed(result.failure_reason);
  }
  return ParseOutcome::parsed(tree_to_dependencies(*result.tree, head_rules_));
}

}  // namespace robusteval

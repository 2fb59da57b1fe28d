#include "robusteval/head_rules.hpp"

#include <sstream>
#include <stdexcept>
#include <vector>

#include "robusteval/io_util.hpp"

namespace robusteval {

HeadRules HeadRules::parse(std::string_view text, const std::string& source) {
  HeadRules rules;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::size_t hash = raw.find('#');
    std::istringstream line(hash == std::string::npos ? raw : raw.substr(0, hash));
    std::string symbol;
    std::string side;
    if (!(line >> symbol)) {
      continue;
    }
    std::string extra;
    if (!(line >> side) || (line >> extra)) {
      throw std::runtime_error(source + ":" + std::to_string(line_no) +
                               ": expected \"NONTERM leftmost|rightmost\"");
    }
    HeadSide parsed;
    if (side == "leftmost") {
      parsed = HeadSide::kLeftmost;
    } else if (side == "rightmost") {
      parsed = HeadSide::kRightmost;
    } else {
      throw std::runtime_error(source + ":" + std::to_string(line_no) + ": unknown side \"" +
                               side + "\"");
    }
    if (!rules.sides_.emplace(symbol, parsed).second) {
      throw std::runtime_error(source + ":" + std::to_string(line_no) +
                               ": duplicate head rule for " + symbol);
    }
  }
  return rules;
}

HeadRules HeadRules::load(const std::string& path) {
  return parse(read_file(path), path);
}

HeadSide HeadRules::side_for(const std::string& nonterminal) const {
  const auto it = sides_.find(nonterminal);
  return it == sides_.end() ? HeadSide::kLeftmost : it->second;
}

namespace {

// Returns the token index (1-based) of the subtree's lexical head; the leaf
// counter advances in reading order.
int collect_dependencies(const ParseTree& t, const HeadRules& rules, int& next_leaf,
                         std::vector<LabeledEdge>& edges) {
  if (t.is_leaf()) {
    return next_leaf++;
  }
  const int left_head = collect_dependencies(*t.left, rules, next_leaf, edges);
  const int right_head = collect_dependencies(*t.right, rules, next_leaf, edges);
  const bool head_is_left = rules.side_for(t.symbol) == HeadSide::kLeftmost;
  const int head = head_is_left ? left_head : right_head;
  const int dependent = head_is_left ? right_head : left_head;
  const ParseTree& non_head_child = head_is_left ? *t.right : *t.left;
  edges.push_back(LabeledEdge{head, dependent, non_head_child.symbol});
  return head;
}

}  // namespace

ParseGraph tree_to_dependencies(const ParseTree& t, const HeadRules& rules) {
  std::vector<LabeledEdge> edges;
  int next_leaf = 1;
  const int sentence_head = collect_dependencies(t, rules, next_leaf, edges);
  edges.push_back(LabeledEdge{0, sentence_head, "root"});
  return ParseGraph(GraphMode::kDirected, next_leaf - 1, edges);
}

}  // namespace robusteval

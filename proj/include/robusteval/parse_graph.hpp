#pragma once

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace robusteval {

enum class GraphMode { kDirected, kUndirected };

std::string_view to_string(GraphMode mode);
GraphMode graph_mode_from_string(std::string_view name);

// In directed mode a is the head and b the dependent; a == 0 marks the
// virtual root. In undirected mode endpoints are stored as (min, max).
struct LabeledEdge {
  int a = 0;
  int b = 0;
  std::string label;  // "_" when the formalism carries no label

  auto operator<=>(const LabeledEdge&) const = default;
};

// Labeled head/dependent graph for one sentence analysis. Immutable after
// construction; the constructor canonicalizes undirected endpoint order and
// rejects anything violating the mode's shape (self-loops, out-of-range
// endpoints, two heads for one dependent, two roots).
class ParseGraph {
 public:
  ParseGraph(GraphMode mode, int n_tokens, const std::vector<LabeledEdge>& edges);

  GraphMode mode() const { return mode_; }
  int n_tokens() const { return n_tokens_; }
  const std::set<LabeledEdge>& edges() const { return edges_; }

  // Dependent of the head-0 edge (directed mode).
  std::optional<int> root_index() const { return root_; }

  bool operator==(const ParseGraph&) const = default;

 private:
  GraphMode mode_;
  int n_tokens_;
  std::set<LabeledEdge> edges_;
  std::optional<int> root_;
};

// Structure-only view: label-erased (head, dependent) pairs in directed mode,
// (min, max) pairs in undirected mode. The root pseudo-edge is not included;
// the equality predicates compare it separately.
std::set<std::pair<int, int>> unlabeled_edges(const ParseGraph& g);

// Whole-sentence exact comparison. Both predicates require equal mode and
// token count and throw std::runtime_error ("incomparable graphs") otherwise.
// The root participates in both: moving the root is a structural change,
// relabeling the root edge is a labeling change.
bool structure_equal(const ParseGraph& g1, const ParseGraph& g2);
bool labeled_equal(const ParseGraph& g1, const ParseGraph& g2);

// Analysis of one sentence: a graph, or a recorded parse failure.
class ParseOutcome {
 public:
  static ParseOutcome parsed(ParseGraph g);
  static ParseOutcome failed(std::string reason);

  bool ok() const { return graph_.has_value(); }
  const ParseGraph& graph() const;
  const std::string& failure_reason() const;

  bool operator==(const ParseOutcome&) const = default;

 private:
  ParseOutcome() = default;
  std::optional<ParseGraph> graph_;
  std::string reason_;
};

// One adapter-protocol block: rows "index<TAB>form<TAB>head<TAB>label", or a
// single "#FAIL <reason>" row. Never throws on malformed bytes; those come
// back as a failed outcome with reason "malformed output". In undirected mode
// each row is one link with index < head and token count is inferred from the
// largest endpoint.
ParseOutcome read_conll_block(std::string_view text, GraphMode mode);

// Serializes a graph (or failure) back to the block format, excluding the
// terminating blank line. Directed graphs must assign every token a head.
// forms supplies the token texts for the form column; "_" is used past its
// end.
std::string write_conll_block(const ParseOutcome& outcome, const std::vector<std::string>& forms);

// Splits a whole outcomes file into blank-line-separated blocks.
std::vector<std::string> split_blocks(std::string_view text);

}  // namespace robusteval

#include "robusteval/parse_graph.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <stdexcept>

namespace robusteval {

namespace {

[[noreturn]] void bad_graph(const std::string& why) {
  throw std::invalid_argument("invalid parse graph: " + why);
}

bool parse_int(std::string_view field, int& out) {
  const char* first = field.data();
  const char* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && !field.empty();
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t at = text.find(sep, start);
    if (at == std::string_view::npos) {
      out.push_back(text.substr(start));
      return out;
    }
    out.push_back(text.substr(start, at - start));
    start = at + 1;
  }
}

}  // namespace

std::string_view to_string(GraphMode mode) {
  return mode == GraphMode::kDirected ? "directed" : "undirected";
}

GraphMode graph_mode_from_string(std::string_view name) {
  if (name == "directed") {
    return GraphMode::kDirected;
  }
  if (name == "undirected") {
    return GraphMode::kUndirected;
  }
  throw std::invalid_argument("unknown graph mode: \"" + std::string(name) + "\"");
}

ParseGraph::ParseGraph(GraphMode mode, int n_tokens, const std::vector<LabeledEdge>& edges)
    : mode_(mode), n_tokens_(n_tokens) {
  if (n_tokens < 1) {
    bad_graph("token count must be positive");
  }
  if (mode == GraphMode::kDirected) {
    std::set<int> dependents;
    for (LabeledEdge e : edges) {
      if (e.label.empty()) {
        bad_graph("empty edge label");
      }
      if (e.a == e.b) {
        bad_graph("self loop");
      }
      if (e.a < 0 || e.a > n_tokens || e.b < 1 || e.b > n_tokens) {
        bad_graph("edge endpoint out of range");
      }
      if (!dependents.insert(e.b).second) {
        bad_graph("token " + std::to_string(e.b) + " has two heads");
      }
      if (e.a == 0) {
        if (root_.has_value()) {
          bad_graph("two roots");
        }
        root_ = e.b;
      }
      edges_.insert(std::move(e));
    }
  } else {
    for (LabeledEdge e : edges) {
      if (e.label.empty()) {
        bad_graph("empty edge label");
      }
      if (e.a == e.b) {
        bad_graph("self loop");
      }
      if (e.a > e.b) {
        std::swap(e.a, e.b);
      }
      if (e.a < 1 || e.b > n_tokens) {
        bad_graph("edge endpoint out of range");
      }
      edges_.insert(std::move(e));
    }
  }
}

std::set<std::pair<int, int>> unlabeled_edges(const ParseGraph& g) {
  std::set<std::pair<int, int>> out;
  for (const LabeledEdge& e : g.edges()) {
    if (e.a == 0) {
      continue;
    }
    out.emplace(e.a, e.b);
  }
  return out;
}

namespace {

void require_comparable(const ParseGraph& g1, const ParseGraph& g2) {
  if (g1.mode() != g2.mode()) {
    throw std::runtime_error("incomparable graphs: mode mismatch");
  }
  if (g1.n_tokens() != g2.n_tokens()) {
    throw std::runtime_error("incomparable graphs: token count mismatch");
  }
}

}  // namespace

bool structure_equal(const ParseGraph& g1, const ParseGraph& g2) {
  require_comparable(g1, g2);
  return g1.root_index() == g2.root_index() && unlabeled_edges(g1) == unlabeled_edges(g2);
}

bool labeled_equal(const ParseGraph& g1, const ParseGraph& g2) {
  require_comparable(g1, g2);
  return g1.edges() == g2.edges();
}

ParseOutcome ParseOutcome::parsed(ParseGraph g) {
  ParseOutcome out;
  out.graph_ = std::move(g);
  return out;
}

ParseOutcome ParseOutcome::failed(std::string reason) {
  ParseOutcome out;
  out.reason_ = reason.empty() ? "unspecified failure" : std::move(reason);
  return out;
}

const ParseGraph& ParseOutcome::graph() const {
  if (!graph_) {
    throw std::logic_error("no graph on a failed outcome");
  }
  return *graph_;
}

const std::string& ParseOutcome::failure_reason() const {
  if (graph_) {
    throw std::logic_error("no failure reason on a parsed outcome");
  }
  return reason_;
}

ParseOutcome read_conll_block(std::string_view text, GraphMode mode) {
  std::vector<std::string_view> rows;
  for (std::string_view line : split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') {
      line.remove_suffix(1);
    }
    if (!line.empty()) {
      rows.push_back(line);
    }
  }
  if (rows.empty()) {
    return ParseOutcome::failed("empty output");
  }
  if (rows[0].rfind("#FAIL", 0) == 0) {
    std::string_view reason = rows[0].substr(5);
    while (!reason.empty() && reason.front() == ' ') {
      reason.remove_prefix(1);
    }
    return ParseOutcome::failed(reason.empty() ? "parse failure" : std::string(reason));
  }

  std::vector<LabeledEdge> edges;
  int max_endpoint = 0;
  int row_no = 0;
  for (std::string_view row : rows) {
    ++row_no;
    const std::vector<std::string_view> fields = split(row, '\t');
    if (fields.size() != 4) {
      return ParseOutcome::failed("malformed output");
    }
    int index = 0;
    int head = 0;
    if (!parse_int(fields[0], index) || !parse_int(fields[2], head) || fields[3].empty()) {
      return ParseOutcome::failed("malformed output");
    }
    if (mode == GraphMode::kDirected) {
      // One row per token, in order.
      if (index != row_no) {
        return ParseOutcome::failed("malformed output");
      }
    } else {
      // One row per link, smaller endpoint first.
      if (index < 1 || head <= index) {
        return ParseOutcome::failed("malformed output");
      }
    }
    edges.push_back(LabeledEdge{head, index, std::string(fields[3])});
    max_endpoint = std::max(max_endpoint, std::max(index, head));
  }

  const int n_tokens =
      mode == GraphMode::kDirected ? static_cast<int>(edges.size()) : max_endpoint;
  try {
    return ParseOutcome::parsed(ParseGraph(mode, n_tokens, edges));
  } catch (const std::exception&) {
    return ParseOutcome::failed("malformed output");
  }
}

std::vector<std::string> split_blocks(std::string_view text) {
  std::vector<std::string> blocks;
  std::string block;
  for (std::string_view line : split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') {
      line.remove_suffix(1);
    }
    if (line.empty()) {
      if (!block.empty()) {
        blocks.push_back(std::move(block));
        block.clear();
      }
      continue;
    }
    block += line;
    block += '\n';
  }
  if (!block.empty()) {
    blocks.push_back(std::move(block));
  }
  return blocks;
}

std::string write_conll_block(const ParseOutcome& outcome, const std::vector<std::string>& forms) {
  if (!outcome.ok()) {
    return "#FAIL " + outcome.failure_reason() + "\n";
  }
  const ParseGraph& g = outcome.graph();
  const auto form_of = [&forms](int index) -> std::string {
    const auto i = static_cast<std::size_t>(index - 1);
    return i < forms.size() ? forms[i] : std::string("_");
  };

  std::string out;
  if (g.mode() == GraphMode::kDirected) {
    std::map<int, const LabeledEdge*> by_dependent;
    for (const LabeledEdge& e : g.edges()) {
      by_dependent[e.b] = &e;
    }
    for (int token = 1; token <= g.n_tokens(); ++token) {
      const auto it = by_dependent.find(token);
      if (it == by_dependent.end()) {
        throw std::logic_error("directed graph leaves token " + std::to_string(token) +
                               " without a head");
      }
      out += std::to_string(token) + "\t" + form_of(token) + "\t" +
             std::to_string(it->second->a) + "\t" + it->second->label + "\n";
    }
  } else {
    for (const LabeledEdge& e : g.edges()) {
      out += std::to_string(e.a) + "\t" + form_of(e.a) + "\t" + std::to_string(e.b) + "\t" +
             e.label + "\n";
    }
  }
  return out;
}

}  // namespace robusteval

#include "robusteval/cyk.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

namespace robusteval {

int ParseTree::leaf_count() const {
  if (is_leaf()) {
    return 1;
  }
  return left->leaf_count() + right->leaf_count();
}

std::string ParseTree::to_bracketed() const {
  if (is_leaf()) {
    return "(" + symbol + " " + word + ")";
  }
  return "(" + symbol + " " + left->to_bracketed() + " " + right->to_bracketed() + ")";
}

double tree_probability(const PcfgGrammar& g, const ParseTree& t) {
  if (t.is_leaf()) {
    for (const LexicalRule& r : g.rules_for_word(t.word)) {
      if (r.lhs == t.symbol) {
        return r.prob;
      }
    }
    if (!g.knows_word(t.word) && g.unknown_preterminals().count(t.symbol) > 0) {
      return g.unknown_prob();
    }
    throw std::runtime_error("no lexical rule " + t.symbol + " -> '" + t.word + "'");
  }
  for (const BinaryRule& r : g.binary_rules()) {
    if (r.lhs == t.symbol && r.rhs1 == t.left->symbol && r.rhs2 == t.right->symbol) {
      return r.prob * tree_probability(g, *t.left) * tree_probability(g, *t.right);
    }
  }
  throw std::runtime_error("no binary rule " + t.symbol + " -> " + t.left->symbol + " " +
                           t.right->symbol);
}

namespace {

struct ChartEntry {
  double log_prob = 0.0;
  // Backpointers: lexical entries keep rule == nullptr.
  const BinaryRule* rule = nullptr;
  int split = 0;  // width of the left child span
  double lex_log_prob = 0.0;
};

// One chart cell: best entry per symbol.
using Cell = std::map<std::string, ChartEntry>;

std::unique_ptr<ParseTree> build_tree(const std::vector<std::vector<Cell>>& chart,
                                      const std::vector<std::string>& words, int start, int width,
                                      const std::string& symbol) {
  const ChartEntry& entry = chart[static_cast<std::size_t>(start)][static_cast<std::size_t>(width)]
                                .at(symbol);
  auto node = std::make_unique<ParseTree>();
  node->symbol = symbol;
  node->log_prob = entry.log_prob;
  if (entry.rule == nullptr) {
    node->word = words[static_cast<std::size_t>(start)];
  } else {
    node->left = build_tree(chart, words, start, entry.split, entry.rule->rhs1);
    node->right = build_tree(chart, words, start + entry.split, width - entry.split,
                             entry.rule->rhs2);
  }
  return node;
}

}  // namespace

TreeOutcome cyk_parse(const PcfgGrammar& g, const std::vector<std::string>& words) {
  if (words.empty()) {
    return TreeOutcome{nullptr, "empty sentence"};
  }
  const int n = static_cast<int>(words.size());

  // chart[start][width]; width 0 unused.
  std::vector<std::vector<Cell>> chart(static_cast<std::size_t>(n),
                                       std::vector<Cell>(static_cast<std::size_t>(n) + 1));

  for (int i = 0; i < n; ++i) {
    Cell& cell = chart[static_cast<std::size_t>(i)][1];
    const std::string& word = words[static_cast<std::size_t>(i)];
    if (g.knows_word(word)) {
      for (const LexicalRule& r : g.rules_for_word(word)) {
        ChartEntry entry;
        entry.log_prob = r.log_prob;
        cell.emplace(r.lhs, entry);  // one rule per (lhs, word); no tie possible
      }
    } else {
      for (const std::string& preterminal : g.unknown_preterminals()) {
        ChartEntry entry;
        entry.log_prob = std::log(g.unknown_prob());
        cell.emplace(preterminal, entry);
      }
    }
  }

  for (int width = 2; width <= n; ++width) {
    for (int start = 0; start + width <= n; ++start) {
      Cell& cell = chart[static_cast<std::size_t>(start)][static_cast<std::size_t>(width)];
      for (int split = 1; split < width; ++split) {
        const Cell& left = chart[static_cast<std::size_t>(start)][static_cast<std::size_t>(split)];
        if (left.empty()) {
          continue;
        }
        const Cell& right = chart[static_cast<std::size_t>(start + split)]
                                 [static_cast<std::size_t>(width - split)];
        if (right.empty()) {
          continue;
        }
        for (const BinaryRule& rule : g.binary_rules()) {
          const auto l = left.find(rule.rhs1);
          if (l == left.end()) {
            continue;
          }
          const auto r = right.find(rule.rhs2);
          if (r == right.end()) {
            continue;
          }
          const double cand = rule.log_prob + l->second.log_prob + r->second.log_prob;
          const auto at = cell.find(rule.lhs);
          // Strict improvement only: with splits ascending and rules in
          // (lhs, rhs1, rhs2) order, ties keep the earliest candidate.
          if (at == cell.end() || cand > at->second.log_prob) {
            ChartEntry entry;
            entry.log_prob = cand;
            entry.rule = &rule;
            entry.split = split;
            cell[rule.lhs] = entry;
          }
        }
      }
    }
  }

  const Cell& top = chart[0][static_cast<std::size_t>(n)];
  if (top.find(g.start()) == top.end()) {
    return TreeOutcome{nullptr, "no parse"};
  }
  return TreeOutcome{build_tree(chart, words, 0, n, g.start()), ""};
}

TreeOutcome cyk_parse(const PcfgGrammar& g, const Sentence& s) {
  std::vector<std::string> words;
  words.reserve(s.tokens.size());
  for (const Token& t : s.tokens) {
    words.push_back(t.text);
  }
  return cyk_parse(g, words);
}

namespace {

std::unique_ptr<ParseTree> clone_tree(const ParseTree& src) {
  auto copy = std::make_unique<ParseTree>();
  copy->symbol = src.symbol;
  copy->word = src.word;
  copy->log_prob = src.log_prob;
  if (!src.is_leaf()) {
    copy->left = clone_tree(*src.left);
    copy->right = clone_tree(*src.right);
  }
  return copy;
}

// All derivations of symbol over words[start, start+width). Fresh trees each
// call; no sharing with the chart parser.
std::vector<std::unique_ptr<ParseTree>> derive_all(const PcfgGrammar& g,
                                                   const std::vector<std::string>& words,
                                                   int start, int width,
                                                   const std::string& symbol) {
  std::vector<std::unique_ptr<ParseTree>> out;
  if (width == 1) {
    const std::string& word = words[static_cast<std::size_t>(start)];
    if (g.knows_word(word)) {
      for (const LexicalRule& r : g.rules_for_word(word)) {
        if (r.lhs != symbol) {
          continue;
        }
        auto leaf = std::make_unique<ParseTree>();
        leaf->symbol = symbol;
        leaf->word = word;
        leaf->log_prob = r.log_prob;
        out.push_back(std::move(leaf));
      }
    } else if (g.unknown_preterminals().count(symbol) > 0) {
      auto leaf = std::make_unique<ParseTree>();
      leaf->symbol = symbol;
      leaf->word = word;
      leaf->log_prob = std::log(g.unknown_prob());
      out.push_back(std::move(leaf));
    }
    return out;
  }

  for (const BinaryRule& rule : g.binary_rules()) {
    if (rule.lhs != symbol) {
      continue;
    }
    for (int split = 1; split < width; ++split) {
      const auto lefts = derive_all(g, words, start, split, rule.rhs1);
      if (lefts.empty()) {
        continue;
      }
      const auto rights = derive_all(g, words, start + split, width - split, rule.rhs2);
      for (const auto& l : lefts) {
        for (const auto& r : rights) {
          auto node = std::make_unique<ParseTree>();
          node->symbol = symbol;
          // Each derivation owns its subtrees.
          node->left = clone_tree(*l);
          node->right = clone_tree(*r);
          node->log_prob = rule.log_prob + l->log_prob + r->log_prob;
          out.push_back(std::move(node));
        }
      }
    }
  }
  return out;
}

}  // namespace

std::vector<std::unique_ptr<ParseTree>> enumerate_parses(const PcfgGrammar& g,
                                                         const std::vector<std::string>& words) {
  if (words.size() > 8) {
    throw std::invalid_argument("enumerate_parses is limited to 8 words");
  }
  if (words.empty()) {
    return {};
  }
  return derive_all(g, words, 0, static_cast<int>(words.size()), g.start());
}

}  // namespace robusteval

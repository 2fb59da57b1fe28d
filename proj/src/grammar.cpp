#include "robusteval/grammar.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "robusteval/io_util.hpp"

namespace robusteval {

namespace {

[[noreturn]] void grammar_error(const std::string& source, int line_no, const std::string& why) {
  throw std::runtime_error(source + ":" + std::to_string(line_no) + ": " + why);
}

std::string strip_comment(const std::string& line) {
  const std::size_t at = line.find('#');
  return at == std::string::npos ? line : line.substr(0, at);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string field;
  while (in >> field) {
    out.push_back(field);
  }
  return out;
}

double parse_prob(const std::string& source, int line_no, const std::string& text) {
  std::size_t consumed = 0;
  double p = 0.0;
  try {
    p = std::stod(text, &consumed);
  } catch (const std::exception&) {
    grammar_error(source, line_no, "cannot parse probability \"" + text + "\"");
  }
  if (consumed != text.size()) {
    grammar_error(source, line_no, "cannot parse probability \"" + text + "\"");
  }
  if (!(p > 0.0) || p > 1.0) {
    grammar_error(source, line_no, "probability must lie in (0, 1]");
  }
  return p;
}

// Splits "LHS -> BODY : p" into lhs, body tokens and probability text.
struct RuleLine {
  std::string lhs;
  std::vector<std::string> body;
  std::string prob_text;
};

bool parse_rule_line(const std::string& line, RuleLine& out) {
  const std::size_t arrow = line.find("->");
  if (arrow == std::string::npos) {
    return false;
  }
  const std::size_t colon = line.rfind(':');
  if (colon == std::string::npos || colon < arrow) {
    return false;
  }
  const std::vector<std::string> lhs_fields = split_ws(line.substr(0, arrow));
  if (lhs_fields.size() != 1) {
    return false;
  }
  out.lhs = lhs_fields[0];
  out.body = split_ws(line.substr(arrow + 2, colon - arrow - 2));
  const std::vector<std::string> prob_fields = split_ws(line.substr(colon + 1));
  if (prob_fields.size() != 1) {
    return false;
  }
  out.prob_text = prob_fields[0];
  return true;
}

bool is_quoted(const std::string& s) {
  return s.size() >= 3 && s.front() == '\'' && s.back() == '\'';
}

}  // namespace

PcfgGrammar PcfgGrammar::parse(std::string_view text, const std::string& source) {
  PcfgGrammar g;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;

  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = strip_comment(raw);
    const std::vector<std::string> fields = split_ws(line);
    if (fields.empty()) {
      continue;
    }
    if (fields[0] == "%start") {
      if (fields.size() != 2) {
        grammar_error(source, line_no, "%start takes exactly one symbol");
      }
      g.start_ = fields[1];
      continue;
    }
    if (fields[0] == "%unknown") {
      // "%unknown A B : 1e-6" (the colon may be glued to the probability).
      std::vector<std::string> rest(fields.begin() + 1, fields.end());
      std::string prob_text;
      if (rest.size() >= 2 && rest[rest.size() - 2] == ":") {
        prob_text = rest.back();
        rest.resize(rest.size() - 2);
      } else if (!rest.empty() && rest.back().size() > 1 && rest.back()[0] == ':') {
        prob_text = rest.back().substr(1);
        rest.pop_back();
      } else {
        grammar_error(source, line_no, "%unknown needs \": probability\"");
      }
      if (rest.empty()) {
        grammar_error(source, line_no, "%unknown needs at least one preterminal");
      }
      g.unknown_prob_ = parse_prob(source, line_no, prob_text);
      g.unknown_preterminals_.insert(rest.begin(), rest.end());
      continue;
    }

    RuleLine rule;
    if (!parse_rule_line(line, rule)) {
      grammar_error(source, line_no, "cannot parse rule \"" + line + "\"");
    }
    const double p = parse_prob(source, line_no, rule.prob_text);
    if (rule.body.size() == 1 && is_quoted(rule.body[0])) {
      const std::string word = rule.body[0].substr(1, rule.body[0].size() - 2);
      g.lexical_rules_.push_back(LexicalRule{rule.lhs, word, p, std::log(p)});
    } else if (rule.body.size() == 2 && !is_quoted(rule.body[0]) && !is_quoted(rule.body[1])) {
      g.binary_rules_.push_back(BinaryRule{rule.lhs, rule.body[0], rule.body[1], p, std::log(p)});
    } else {
      grammar_error(source, line_no,
                    "not in Chomsky normal form (need two nonterminals or one quoted terminal)");
    }
    if (g.start_.empty()) {
      g.start_ = rule.lhs;
    }
  }

  g.finalize(source);
  return g;
}

PcfgGrammar PcfgGrammar::load(const std::string& path) {
  return parse(read_file(path), path);
}

void PcfgGrammar::finalize(const std::string& source) {
  if (binary_rules_.empty() && lexical_rules_.empty()) {
    throw std::runtime_error(source + ": grammar has no rules");
  }
  if (start_.empty()) {
    throw std::runtime_error(source + ": no start symbol");
  }

  std::sort(binary_rules_.begin(), binary_rules_.end(), [](const BinaryRule& x, const BinaryRule& y) {
    return std::tie(x.lhs, x.rhs1, x.rhs2) < std::tie(y.lhs, y.rhs1, y.rhs2);
  });
  std::sort(lexical_rules_.begin(), lexical_rules_.end(),
            [](const LexicalRule& x, const LexicalRule& y) {
              return std::tie(x.lhs, x.word) < std::tie(y.lhs, y.word);
            });
  for (std::size_t i = 1; i < binary_rules_.size(); ++i) {
    const BinaryRule& a = binary_rules_[i - 1];
    const BinaryRule& b = binary_rules_[i];
    if (a.lhs == b.lhs && a.rhs1 == b.rhs1 && a.rhs2 == b.rhs2) {
      throw std::runtime_error(source + ": duplicate rule " + a.lhs + " -> " + a.rhs1 + " " +
                               a.rhs2);
    }
  }
  for (std::size_t i = 1; i < lexical_rules_.size(); ++i) {
    const LexicalRule& a = lexical_rules_[i - 1];
    const LexicalRule& b = lexical_rules_[i];
    if (a.lhs == b.lhs && a.word == b.word) {
      throw std::runtime_error(source + ": duplicate rule " + a.lhs + " -> '" + a.word + "'");
    }
  }

  nonterminals_.insert(start_);
  for (const BinaryRule& r : binary_rules_) {
    nonterminals_.insert(r.lhs);
    nonterminals_.insert(r.rhs1);
    nonterminals_.insert(r.rhs2);
  }
  for (const LexicalRule& r : lexical_rules_) {
    nonterminals_.insert(r.lhs);
    by_word_[r.word].push_back(r);
  }
  nonterminals_.insert(unknown_preterminals_.begin(), unknown_preterminals_.end());

  validate(source);
}

void PcfgGrammar::validate(const std::string& source) const {
  std::map<std::string, double> mass;
  for (const BinaryRule& r : binary_rules_) {
    mass[r.lhs] += r.prob;
  }
  for (const LexicalRule& r : lexical_rules_) {
    mass[r.lhs] += r.prob;
  }
  for (const auto& [lhs, total] : mass) {
    if (std::abs(total - 1.0) > 1e-6) {
      std::ostringstream msg;
      msg << source << ": rules for " << lhs << " sum to " << total << ", expected 1";
      throw std::runtime_error(msg.str());
    }
  }
  if (!unknown_preterminals_.empty() && !(unknown_prob_ > 0.0 && unknown_prob_ <= 1.0)) {
    throw std::runtime_error(source + ": unknown-word probability must lie in (0, 1]");
  }
}

bool PcfgGrammar::knows_word(const std::string& word) const {
  return by_word_.count(word) > 0;
}

const std::vector<LexicalRule>& PcfgGrammar::rules_for_word(const std::string& word) const {
  static const std::vector<LexicalRule> kEmpty;
  const auto it = by_word_.find(word);
  return it == by_word_.end() ? kEmpty : it->second;
}

}  // namespace robusteval

#pragma once

#include <map>
#include <string>
#include <string_view>

#include "robusteval/cyk.hpp"
#include "robusteval/parse_graph.hpp"

namespace robusteval {

enum class HeadSide { kLeftmost, kRightmost };

// Which child of a constituent carries the lexical head. Nonterminals
// without an entry default to the leftmost child.
class HeadRules {
 public:
  // Lines "NONTERM leftmost|rightmost"; '#' comments.
  static HeadRules parse(std::string_view text, const std::string& source = "<string>");
  static HeadRules load(const std::string& path);

  HeadRules() = default;

  HeadSide side_for(const std::string& nonterminal) const;

 private:
  std::map<std::string, HeadSide> sides_;
};

// Head-percolation conversion of a derivation tree into a directed dependency
// graph: at each binary constituent the non-head child's lexical head attaches
// to the head child's lexical head, labeled with the non-head child's
// nonterminal; the sentence's lexical head attaches to the virtual root with
// label "root".
ParseGraph tree_to_dependencies(const ParseTree& t, const HeadRules& rules);

}  // namespace robusteval

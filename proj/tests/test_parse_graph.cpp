#include <doctest.h>

#include <string>
#include <vector>

#include "robusteval/parse_graph.hpp"
#include "robusteval/rng.hpp"
#include "test_util.hpp"

using namespace robusteval;

TEST_SUITE_BEGIN("parsegraph");

namespace {

ParseGraph directed(int n, std::vector<LabeledEdge> edges) {
  return ParseGraph(GraphMode::kDirected, n, edges);
}

ParseGraph undirected(int n, std::vector<LabeledEdge> edges) {
  return ParseGraph(GraphMode::kUndirected, n, edges);
}

// Random dependency tree over n tokens: token 1 is the root, token i > 1
// takes an earlier token as head; exactly one root, no cycles.
ParseGraph random_tree(int n, Rng& rng, const std::vector<std::string>& labels) {
  std::vector<LabeledEdge> edges;
  for (int dependent = 1; dependent <= n; ++dependent) {
    const int head = dependent == 1 ? 0 : 1 + static_cast<int>(rng.below(dependent - 1));
    edges.push_back(LabeledEdge{head, dependent, labels[rng.index(labels.size())]});
  }
  return ParseGraph(GraphMode::kDirected, n, edges);
}

}  // namespace

TEST_CASE("unlabeled_edges erases labels and skips the root pair") {
  const ParseGraph g = directed(2, {{2, 1, "det"}, {0, 2, "root"}});
  CHECK(unlabeled_edges(g) == std::set<std::pair<int, int>>{{2, 1}});
  CHECK(g.root_index() == 2);
}

TEST_CASE("undirected edges canonicalize to (min, max) pairs") {
  const ParseGraph g1 = undirected(3, {{1, 3, "Ss"}});
  const ParseGraph g2 = undirected(3, {{3, 1, "Ss"}});
  CHECK(g1.edges() == g2.edges());
  CHECK(unlabeled_edges(g1) == std::set<std::pair<int, int>>{{1, 3}});
  CHECK(labeled_equal(g1, g2));
  // duplicate rows collapse
  const ParseGraph g3 = undirected(3, {{1, 3, "Ss"}, {3, 1, "Ss"}});
  CHECK(g3.edges().size() == 1);
}

TEST_CASE("empty edge set is allowed in undirected mode") {
  const ParseGraph g = undirected(1, {});
  CHECK(unlabeled_edges(g).empty());
}

TEST_CASE("canonicalization is idempotent") {
  const ParseGraph once = undirected(4, {{4, 1, "a"}, {3, 2, "b"}, {2, 4, "c"}});
  const ParseGraph twice =
      ParseGraph(GraphMode::kUndirected, 4,
                 std::vector<LabeledEdge>(once.edges().begin(), once.edges().end()));
  CHECK(once == twice);
}

TEST_CASE("equality predicate examples") {
  const ParseGraph g = directed(2, {{2, 1, "ncsubj"}, {0, 2, "root"}});
  CHECK(structure_equal(g, g));
  CHECK(labeled_equal(g, g));

  const ParseGraph relabeled = directed(2, {{2, 1, "dobj"}, {0, 2, "root"}});
  CHECK(structure_equal(g, relabeled));
  CHECK_FALSE(labeled_equal(g, relabeled));

  const ParseGraph extra = directed(3, {{2, 1, "ncsubj"}, {0, 2, "root"}, {2, 3, "dobj"}});
  const ParseGraph missing = directed(3, {{2, 1, "ncsubj"}, {0, 2, "root"}});
  CHECK_FALSE(structure_equal(extra, missing));
  CHECK_FALSE(labeled_equal(extra, missing));
}

TEST_CASE("moving the root is a structural change") {
  const ParseGraph a = directed(2, {{0, 1, "root"}, {1, 2, "x"}});
  const ParseGraph b = directed(2, {{2, 1, "x"}, {0, 2, "root"}});
  CHECK_FALSE(structure_equal(a, b));
  // relabeling only the root edge is a labeling change, not structural
  const ParseGraph c = directed(2, {{0, 1, "top"}, {1, 2, "x"}});
  CHECK(structure_equal(a, c));
  CHECK_FALSE(labeled_equal(a, c));
}

TEST_CASE("incomparable graphs raise") {
  const ParseGraph d2 = directed(2, {{0, 1, "root"}, {1, 2, "x"}});
  const ParseGraph d3 = directed(3, {{0, 1, "root"}, {1, 2, "x"}, {2, 3, "y"}});
  const ParseGraph u2 = undirected(2, {{1, 2, "x"}});
  CHECK_THROWS_AS(structure_equal(d2, d3), std::runtime_error);
  CHECK_THROWS_AS(labeled_equal(d2, d3), std::runtime_error);
  CHECK_THROWS_AS(structure_equal(d2, u2), std::runtime_error);
}

TEST_CASE("graph shape violations are rejected") {
  CHECK_THROWS_AS(directed(2, {{1, 1, "x"}}), std::invalid_argument);          // self loop
  CHECK_THROWS_AS(directed(2, {{1, 3, "x"}}), std::invalid_argument);          // out of range
  CHECK_THROWS_AS(directed(2, {{1, 2, "x"}, {0, 2, "y"}}), std::invalid_argument);  // two heads
  CHECK_THROWS_AS(directed(2, {{0, 1, "r"}, {0, 2, "r"}}), std::invalid_argument);  // two roots
  CHECK_THROWS_AS(directed(2, {{1, 2, ""}}), std::invalid_argument);           // empty label
  CHECK_THROWS_AS(undirected(3, {{0, 1, "x"}}), std::invalid_argument);        // 0 endpoint
}

TEST_CASE("read_conll_block parses a directed block") {
  const ParseOutcome outcome = read_conll_block("1\tThe\t2\tdet\n2\tdog\t0\troot\n",
                                                GraphMode::kDirected);
  REQUIRE(outcome.ok());
  CHECK(outcome.graph().n_tokens() == 2);
  CHECK(outcome.graph().root_index() == 2);
  CHECK(outcome.graph().edges() ==
        std::set<LabeledEdge>{{0, 2, "root"}, {2, 1, "det"}});
}

TEST_CASE("read_conll_block failure and malformed rows") {
  const ParseOutcome failed = read_conll_block("#FAIL timeout\n", GraphMode::kDirected);
  CHECK_FALSE(failed.ok());
  CHECK(failed.failure_reason() == "timeout");

  const ParseOutcome bare = read_conll_block("#FAIL\n", GraphMode::kDirected);
  CHECK_FALSE(bare.ok());
  CHECK(bare.failure_reason() == "parse failure");

  for (const char* bad : {
           "1\tThe\tx\tdet\n",              // non-numeric head
           "1\tThe\t2\n",                   // missing column
           "2\tThe\t0\troot\n",             // index not in order
           "1\tThe\t1\tdet\n",              // self head
           "1\tThe\t9\tdet\n",              // head out of range
           "1\tThe\t2\tdet\n2\tdog\t1\t\n"  // empty label
       }) {
    const ParseOutcome outcome = read_conll_block(bad, GraphMode::kDirected);
    CHECK_FALSE(outcome.ok());
    CHECK(outcome.failure_reason() == "malformed output");
  }

  CHECK_FALSE(read_conll_block("", GraphMode::kDirected).ok());
  CHECK_FALSE(read_conll_block("\n\n", GraphMode::kDirected).ok());
}

TEST_CASE("read_conll_block undirected links") {
  const ParseOutcome outcome =
      read_conll_block("1\tthe\t3\tSs\n2\tcat\t3\tDs\n", GraphMode::kUndirected);
  REQUIRE(outcome.ok());
  CHECK(outcome.graph().n_tokens() == 3);
  CHECK_FALSE(outcome.graph().root_index().has_value());
  CHECK(unlabeled_edges(outcome.graph()) == std::set<std::pair<int, int>>{{1, 3}, {2, 3}});

  // larger endpoint must sit in the head column
  CHECK_FALSE(read_conll_block("3\tthe\t1\tSs\n", GraphMode::kUndirected).ok());
  CHECK_FALSE(read_conll_block("1\tthe\t0\tSs\n", GraphMode::kUndirected).ok());
}

TEST_CASE("read_conll_block never throws on arbitrary bytes") {
  Rng rng(31337);
  for (int i = 0; i < 2000; ++i) {
    std::string junk;
    const std::size_t len = rng.below(80);
    for (std::size_t j = 0; j < len; ++j) {
      junk += static_cast<char>(rng.below(256));
    }
    const GraphMode mode = rng.below(2) == 0 ? GraphMode::kDirected : GraphMode::kUndirected;
    CHECK_NOTHROW((void)read_conll_block(junk, mode));
  }
}

TEST_CASE("labeled equality implies structural equality on random trees") {
  Rng rng(99);
  const std::vector<std::string> labels = {"a", "b", "c"};
  for (int i = 0; i < 500; ++i) {
    const int n = 1 + static_cast<int>(rng.below(8));
    const ParseGraph g1 = random_tree(n, rng, labels);
    const ParseGraph g2 = random_tree(n, rng, labels);
    if (labeled_equal(g1, g2)) {
      CHECK(structure_equal(g1, g2));
    }
    // reflexivity and symmetry
    CHECK(labeled_equal(g1, g1));
    CHECK(structure_equal(g2, g2));
    CHECK(structure_equal(g1, g2) == structure_equal(g2, g1));
    CHECK(labeled_equal(g1, g2) == labeled_equal(g2, g1));
  }
}

TEST_CASE("equality predicates are transitive across random triples") {
  Rng rng(123);
  const std::vector<std::string> labels = {"a", "b"};
  int transitive_hits = 0;
  for (int i = 0; i < 3000; ++i) {
    const int n = 1 + static_cast<int>(rng.below(3));  // tiny graphs collide often
    const ParseGraph g1 = random_tree(n, rng, labels);
    const ParseGraph g2 = random_tree(n, rng, labels);
    const ParseGraph g3 = random_tree(n, rng, labels);
    if (structure_equal(g1, g2) && structure_equal(g2, g3)) {
      CHECK(structure_equal(g1, g3));
      ++transitive_hits;
    }
    if (labeled_equal(g1, g2) && labeled_equal(g2, g3)) {
      CHECK(labeled_equal(g1, g3));
    }
  }
  CHECK(transitive_hits > 0);  // the premise actually fired
}

TEST_CASE("write then read round-trips directed graphs") {
  const ParseGraph g = directed(3, {{0, 2, "root"}, {2, 1, "det"}, {2, 3, "obj"}});
  const std::string block = write_conll_block(ParseOutcome::parsed(g), {"the", "dog", "ran"});
  const ParseOutcome back = read_conll_block(block, GraphMode::kDirected);
  REQUIRE(back.ok());
  CHECK(labeled_equal(back.graph(), g));

  const std::string fail_block = write_conll_block(ParseOutcome::failed("no parse"), {});
  CHECK_FALSE(read_conll_block(fail_block, GraphMode::kDirected).ok());
}

TEST_SUITE_END();

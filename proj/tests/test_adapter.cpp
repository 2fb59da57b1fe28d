#include <doctest.h>

#include <sys/stat.h>

#include <string>
#include <vector>

#include "robusteval/adapter.hpp"
#include "robusteval/text.hpp"
#include "test_util.hpp"

using namespace robusteval;

TEST_SUITE_BEGIN("adapters");

namespace {

std::vector<Sentence> sentences(std::initializer_list<const char*> texts) {
  std::vector<Sentence> out;
  int i = 0;
  for (const char* text : texts) {
    out.push_back(tokenize(text, "s" + std::to_string(++i)));
  }
  return out;
}

std::string script(const testutil::TempDir& dir, const std::string& body) {
  const std::string path = dir.write("adapter.sh", "#!/bin/sh\n" + body);
  ::chmod(path.c_str(), 0755);
  return path;
}

AdapterConfig config(const std::string& path) {
  AdapterConfig cfg;
  cfg.name = "fixture";
  cfg.command = {path};
  cfg.timeout_per_sentence = 5.0;
  return cfg;
}

}  // namespace

TEST_CASE("echo adapter answers every sentence") {
  testutil::TempDir dir;
  const std::string path = script(dir, R"SH(while read line; do
  printf '1\tThe\t2\tdet\n2\tdog\t0\troot\n\n'
done
)SH");
  const auto outcomes = run_external(config(path), sentences({"one two", "three four", "five"}));
  REQUIRE(outcomes.size() == 3);
  for (const ParseOutcome& o : outcomes) {
    REQUIRE(o.ok());
    CHECK(o.graph().n_tokens() == 2);
    CHECK(o.graph().root_index() == 2);
  }
}

TEST_CASE("adapter sees detokenized sentences one per line") {
  testutil::TempDir dir;
  // Parrot each word count back as a chain of that length.
  const std::string path = script(dir, R"SH(while read line; do
  i=0
  for w in $line; do
    i=$((i+1))
    printf '%d\t%s\t%d\tchain\n' "$i" "$w" "$((i-1))"
  done
  printf '\n'
done
)SH");
  const auto outcomes = run_external(config(path), sentences({"a b c", "d e"}));
  REQUIRE(outcomes.size() == 2);
  REQUIRE(outcomes[0].ok());
  REQUIRE(outcomes[1].ok());
  CHECK(outcomes[0].graph().n_tokens() == 3);
  CHECK(outcomes[1].graph().n_tokens() == 2);
}

TEST_CASE("immediate exit fails every sentence") {
  testutil::TempDir dir;
  const std::string path = script(dir, "exit 0\n");
  const auto outcomes = run_external(config(path), sentences({"one", "two", "three"}));
  REQUIRE(outcomes.size() == 3);
  for (const ParseOutcome& o : outcomes) {
    CHECK_FALSE(o.ok());
    CHECK(o.failure_reason() == "process exited");
  }
}

TEST_CASE("answers before a crash are kept") {
  testutil::TempDir dir;
  const std::string path = script(dir, R"SH(read line
printf '1\tx\t0\troot\n\n'
exit 1
)SH");
  const auto outcomes = run_external(config(path), sentences({"one", "two", "three"}));
  REQUIRE(outcomes.size() == 3);
  CHECK(outcomes[0].ok());
  CHECK_FALSE(outcomes[1].ok());
  CHECK(outcomes[1].failure_reason() == "process exited");
  CHECK_FALSE(outcomes[2].ok());
}

TEST_CASE("a timeout fails the pending sentence and the tail") {
  testutil::TempDir dir;
  const std::string path = script(dir, R"SH(read line
printf '1\tx\t0\troot\n\n'
read line
printf '1\tx\t0\troot\n\n'
sleep 60
)SH");
  AdapterConfig cfg = config(path);
  cfg.timeout_per_sentence = 0.3;
  const auto outcomes = run_external(cfg, sentences({"one", "two", "three", "four", "five"}));
  REQUIRE(outcomes.size() == 5);
  CHECK(outcomes[0].ok());
  CHECK(outcomes[1].ok());
  for (std::size_t i = 2; i < 5; ++i) {
    CHECK_FALSE(outcomes[i].ok());
    CHECK(outcomes[i].failure_reason() == "timeout");
  }
}

TEST_CASE("unknown command is a hard error") {
  AdapterConfig cfg;
  cfg.name = "ghost";
  cfg.command = {"/nonexistent/parser-binary"};
  CHECK_THROWS_AS(run_external(cfg, sentences({"one"})), SpawnError);
}

TEST_CASE("fail rows and malformed blocks become failed outcomes") {
  testutil::TempDir dir;
  const std::string path = script(dir, R"SH(read line
printf '#FAIL too hard\n\n'
read line
printf 'not\ta\tvalid row\n\n'
)SH");
  const auto outcomes = run_external(config(path), sentences({"one", "two"}));
  REQUIRE(outcomes.size() == 2);
  CHECK_FALSE(outcomes[0].ok());
  CHECK(outcomes[0].failure_reason() == "too hard");
  CHECK_FALSE(outcomes[1].ok());
  CHECK(outcomes[1].failure_reason() == "malformed output");
}

TEST_CASE("batch adapters that wait for EOF need batch mode") {
  testutil::TempDir dir;
  // Reads all of stdin before answering anything.
  const std::string path = script(dir, R"SH(total=0
while read line; do total=$((total+1)); done
i=0
while [ $i -lt $total ]; do
  printf '1\tx\t0\troot\n\n'
  i=$((i+1))
done
)SH");
  AdapterConfig cfg = config(path);
  cfg.batch = true;
  const auto outcomes = run_external(cfg, sentences({"one", "two", "three"}));
  REQUIRE(outcomes.size() == 3);
  for (const ParseOutcome& o : outcomes) {
    CHECK(o.ok());
  }

  // The same adapter deadlocks in lockstep mode and times out instead.
  AdapterConfig lockstep = config(path);
  lockstep.timeout_per_sentence = 0.3;
  const auto stuck = run_external(lockstep, sentences({"one", "two"}));
  REQUIRE(stuck.size() == 2);
  CHECK_FALSE(stuck[0].ok());
}

TEST_CASE("surplus blocks are ignored") {
  testutil::TempDir dir;
  const std::string path = script(dir, R"SH(read line
printf '1\tx\t0\troot\n\n'
printf '1\ty\t0\troot\n\n'
printf '1\tz\t0\troot\n\n'
)SH");
  const auto outcomes = run_external(config(path), sentences({"one"}));
  REQUIRE(outcomes.size() == 1);
  CHECK(outcomes[0].ok());
}

TEST_CASE("undirected adapters emit links") {
  testutil::TempDir dir;
  const std::string path = script(dir, R"SH(while read line; do
  printf '1\tw\t2\tSs\n2\tw\t3\tDs\n\n'
done
)SH");
  AdapterConfig cfg = config(path);
  cfg.mode = GraphMode::kUndirected;
  const auto outcomes = run_external(cfg, sentences({"a b c"}));
  REQUIRE(outcomes.size() == 1);
  REQUIRE(outcomes[0].ok());
  CHECK(outcomes[0].graph().mode() == GraphMode::kUndirected);
  CHECK(outcomes[0].graph().n_tokens() == 3);
}

TEST_CASE("config validation") {
  AdapterConfig cfg;
  cfg.name = "bad";
  CHECK_THROWS_AS(run_external(cfg, sentences({"one"})), std::invalid_argument);
  cfg.command = {"cat"};
  cfg.timeout_per_sentence = 0.0;
  CHECK_THROWS_AS(run_external(cfg, sentences({"one"})), std::invalid_argument);
  cfg.timeout_per_sentence = 1.0;
  CHECK_THROWS_AS(run_external(cfg, {}), std::invalid_argument);
}

TEST_SUITE_END();

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "robusteval/parse_graph.hpp"
#include "robusteval/text.hpp"

namespace robusteval {

// The adapter process could not be started at all (unknown command, fork or
// pipe failure). Anything after a successful start is reported through the
// outcomes instead.
struct SpawnError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// External parser run as a child process speaking the line protocol: one
// detokenized sentence per input line, one block (rows or "#FAIL reason")
// terminated by a blank line per sentence, order preserved.
struct AdapterConfig {
  std::string name;
  std::vector<std::string> command;  // argv; resolved via PATH
  GraphMode mode = GraphMode::kDirected;
  double timeout_per_sentence = 60.0;  // seconds
  // batch: write every sentence up front and close stdin, for adapters that
  // read all input before answering. Default is lockstep, one line per block.
  bool batch = false;
};

// Runs the adapter over the sentences. The result is always index-aligned
// with the input: a per-sentence timeout marks that sentence and all later
// ones failed ("timeout") and kills the child; a child that exits early
// leaves the unanswered tail failed ("process exited"). A command that
// cannot be started at all throws SpawnError before any parsing.
// Ignores SIGPIPE for the whole process on first use.
std::vector<ParseOutcome> run_external(const AdapterConfig& cfg,
                                       const std::vector<Sentence>& sentences);

}  // namespace robusteval

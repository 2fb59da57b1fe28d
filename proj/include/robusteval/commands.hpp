#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace robusteval {

// Exit codes shared by every subcommand. A parser failing on a sentence is
// data, not an error; runs that only record failures still exit 0.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;  // bad flags, bad config, bad file content
inline constexpr int kExitIo = 2;     // filesystem trouble, adapter would not start

struct CorruptOptions {
  std::string input_path;    // clean sentences, one per line
  std::string lexicon_path;  // word list
  std::string plan_text;     // "1:255,2:94,3:94" (totals per error level)
  std::uint64_t seed = 0;
  std::string out_path;  // corpus JSONL; plain-text exports land next to it
};
int cmd_corrupt(const CorruptOptions& options, std::ostream& out, std::ostream& err);

struct ParseCmdOptions {
  std::string corpus_path;
  // "builtin:chain", "builtin:cyk", or "name=command arg ...". The command
  // is split on whitespace; no shell is involved.
  std::vector<std::string> adapter_specs;
  std::string grammar_path;  // builtin:cyk
  std::string heads_path;    // builtin:cyk
  std::string out_dir;
  std::vector<std::string> mode_overrides;     // "name=directed|undirected"
  std::vector<std::string> timeout_overrides;  // "name=seconds"
  std::vector<std::string> batch_adapters;     // names switched to batch I/O
};
int cmd_parse(const ParseCmdOptions& options, std::ostream& out, std::ostream& err);

struct ScoreOptions {
  std::string outcomes_dir;
  std::string out_path;  // report JSON; CSV outputs share its stem
};
int cmd_score(const ScoreOptions& options, std::ostream& out, std::ostream& err);

struct ReportOptions {
  std::vector<std::string> report_paths;
  // "name:precision,recall" — published preciseness figures to turn into
  // F-scores next to the measured robustness.
  std::vector<std::string> pr_specs;
};
int cmd_report(const ReportOptions& options, std::ostream& out, std::ostream& err);

}  // namespace robusteval

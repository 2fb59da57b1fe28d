#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "robusteval/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"robusteval - parser robustness evaluation against misspelled input"};
  app.require_subcommand(1);

  robusteval::CorruptOptions corrupt;
  CLI::App* corrupt_cmd =
      app.add_subcommand("corrupt", "Build a noisy test corpus from clean sentences");
  corrupt_cmd->add_option("--in", corrupt.input_path, "Clean sentences, one per line")
      ->required();
  corrupt_cmd->add_option("--lexicon", corrupt.lexicon_path, "Word list, one word per line")
      ->required();
  corrupt_cmd
      ->add_option("--plan", corrupt.plan_text,
                   "Noisy sentences per error level, e.g. 1:255,2:94,3:94")
      ->required();
  corrupt_cmd->add_option("--seed", corrupt.seed, "Corpus seed")->required();
  corrupt_cmd->add_option("--out", corrupt.out_path, "Corpus JSONL path")->required();

  robusteval::ParseCmdOptions parse;
  CLI::App* parse_cmd = app.add_subcommand("parse", "Run parsers over a corpus");
  parse_cmd->add_option("--corpus", parse.corpus_path, "Corpus JSONL")->required();
  parse_cmd
      ->add_option("--adapter", parse.adapter_specs,
                   "builtin:chain | builtin:cyk | name=command arg ... (repeatable)")
      ->type_size(1)
      ->required();
  parse_cmd->add_option("--grammar", parse.grammar_path, "PCFG file for builtin:cyk");
  parse_cmd->add_option("--heads", parse.heads_path, "Head-rules file for builtin:cyk");
  parse_cmd->add_option("--out", parse.out_dir, "Outcomes directory")->required();
  parse_cmd
      ->add_option("--mode", parse.mode_overrides,
                   "Adapter graph mode, name=directed|undirected (repeatable)")
      ->type_size(1);
  parse_cmd
      ->add_option("--timeout", parse.timeout_overrides,
                   "Per-sentence timeout in seconds, name=value (repeatable)")
      ->type_size(1);
  parse_cmd
      ->add_option("--batch", parse.batch_adapters,
                   "Adapter reads all input before answering (repeatable)")
      ->type_size(1);

  robusteval::ScoreOptions score;
  CLI::App* score_cmd =
      app.add_subcommand("score", "Compare clean/noisy outcomes and compute robustness scores");
  score_cmd->add_option("--outcomes", score.outcomes_dir, "Outcomes directory from 'parse'")
      ->required();
  score_cmd->add_option("--out", score.out_path, "Report JSON path")->required();

  robusteval::ReportOptions report;
  CLI::App* report_cmd = app.add_subcommand("report", "Summarize one or more reports");
  report_cmd->add_option("reports", report.report_paths, "Report JSON files")->required();
  report_cmd
      ->add_option("--pr", report.pr_specs,
                   "Published preciseness as name:precision,recall (repeatable)")
      ->type_size(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return robusteval::kExitUsage;
  }

  if (corrupt_cmd->parsed()) {
    return robusteval::cmd_corrupt(corrupt, std::cout, std::cerr);
  }
  if (parse_cmd->parsed()) {
    return robusteval::cmd_parse(parse, std::cout, std::cerr);
  }
  if (score_cmd->parsed()) {
    return robusteval::cmd_score(score, std::cout, std::cerr);
  }
  return robusteval::cmd_report(report, std::cout, std::cerr);
}

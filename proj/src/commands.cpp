#include "robusteval/commands.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <filesystem>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "robusteval/adapter.hpp"
#include "robusteval/builtin_parsers.hpp"
#include "robusteval/corpus.hpp"
#include "robusteval/io_util.hpp"
#include "robusteval/report_io.hpp"
#include "robusteval/scoring.hpp"

namespace robusteval {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

int exit_code_for(const std::exception& ex) {
  if (dynamic_cast<const IoError*>(&ex) != nullptr ||
      dynamic_cast<const SpawnError*>(&ex) != nullptr ||
      dynamic_cast<const fs::filesystem_error*>(&ex) != nullptr) {
    return kExitIo;
  }
  return kExitUsage;
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return exit_code_for(ex);
  }
}

CorpusPlan parse_plan(const std::string& text) {
  CorpusPlan plan;
  std::istringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    const std::size_t colon = part.find(':');
    if (colon == std::string::npos) {
      throw std::invalid_argument("plan entry \"" + part + "\" is not level:count");
    }
    int level = 0;
    std::size_t count = 0;
    const std::string level_text = part.substr(0, colon);
    const std::string count_text = part.substr(colon + 1);
    const auto parse_number = [](const std::string& s, auto& out) {
      const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
      return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
    };
    if (!parse_number(level_text, level) || !parse_number(count_text, count)) {
      throw std::invalid_argument("plan entry \"" + part + "\" is not level:count");
    }
    if (level < 1 || level > 3) {
      throw std::invalid_argument("plan level must be 1, 2 or 3");
    }
    if (!plan.emplace(level, count).second) {
      throw std::invalid_argument("plan repeats level " + std::to_string(level));
    }
  }
  if (plan.empty()) {
    throw std::invalid_argument("empty corruption plan");
  }
  return plan;
}

std::string output_stem(const std::string& path) {
  const fs::path p(path);
  fs::path stem = p;
  if (p.extension() == ".jsonl" || p.extension() == ".json") {
    stem = p.parent_path() / p.stem();
  }
  return stem.string();
}

std::size_t word_count(const Sentence& s) {
  std::size_t n = 0;
  for (const Token& t : s.tokens) {
    if (std::any_of(t.text.begin(), t.text.end(), [](unsigned char c) {
          return std::isalnum(c) != 0;
        })) {
      ++n;
    }
  }
  return n;
}

}  // namespace

int cmd_corrupt(const CorruptOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() {
    const CorpusPlan plan = parse_plan(options.plan_text);
    const Lexicon lexicon = Lexicon::load(options.lexicon_path);

    std::vector<Sentence> base;
    {
      std::istringstream in(read_file(options.input_path));
      std::string line;
      int line_no = 0;
      while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
          continue;
        }
        std::ostringstream id;
        id << "s" << std::setw(3) << std::setfill('0') << (base.size() + 1);
        try {
          base.push_back(tokenize(line, id.str()));
        } catch (const std::exception& ex) {
          throw std::runtime_error(options.input_path + ":" + std::to_string(line_no) + ": " +
                                   ex.what());
        }
      }
    }
    if (base.empty()) {
      throw std::runtime_error("no sentences in " + options.input_path);
    }

    const TestCorpus corpus = build_corpus(base, plan, options.seed, lexicon);
    write_corpus(corpus, options.out_path);

    const std::string stem = output_stem(options.out_path);
    const CorpusTextExport text = export_plain_text(corpus);
    write_file_atomic(stem + "_clean.txt", text.clean);
    for (const auto& [level, contents] : text.noisy_by_level) {
      write_file_atomic(stem + "_noisy_" + std::to_string(level) + ".txt", contents);
    }

    std::size_t words = 0;
    for (const Sentence& s : corpus.base) {
      words += word_count(s);
    }
    out << corpus.base.size() << " base sentences\n";
    out << corpus.noisy.size() << " noisy sentences";
    const char* sep = " (";
    for (const auto& [level, count] : plan) {
      out << sep << "level " << level << ": " << count;
      sep = ", ";
    }
    out << ")\n";
    out << "average base length: "
        << format2(static_cast<double>(words) / static_cast<double>(corpus.base.size()))
        << " words\n";
    out << "corpus written to " << options.out_path << "\n";
    return kExitOk;
  });
}

namespace {

struct AdapterPlan {
  enum class Kind { kChain, kCyk, kExternal };
  Kind kind = Kind::kExternal;
  AdapterConfig config;  // fully populated for external adapters
};

bool valid_adapter_name(const std::string& name) {
  if (name.empty()) {
    return false;
  }
  return std::all_of(name.begin(), name.end(), [](unsigned char c) {
    return std::isalnum(c) != 0 || c == '_' || c == '-' || c == '.';
  });
}

std::vector<std::string> split_ws(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  std::string field;
  while (in >> field) {
    out.push_back(field);
  }
  return out;
}

std::map<std::string, std::string> parse_overrides(const std::vector<std::string>& specs,
                                                   const std::string& flag) {
  std::map<std::string, std::string> out;
  for (const std::string& spec : specs) {
    const std::size_t eq = spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 >= spec.size()) {
      throw std::invalid_argument(flag + " needs name=value, got \"" + spec + "\"");
    }
    out[spec.substr(0, eq)] = spec.substr(eq + 1);
  }
  return out;
}

std::vector<AdapterPlan> resolve_adapters(const ParseCmdOptions& options) {
  std::vector<AdapterPlan> plans;
  const auto modes = parse_overrides(options.mode_overrides, "--mode");
  const auto timeouts = parse_overrides(options.timeout_overrides, "--timeout");

  for (const std::string& spec : options.adapter_specs) {
    AdapterPlan plan;
    if (spec == "builtin:chain") {
      plan.kind = AdapterPlan::Kind::kChain;
      plan.config.name = "chain";
    } else if (spec == "builtin:cyk") {
      plan.kind = AdapterPlan::Kind::kCyk;
      plan.config.name = "cyk";
      if (options.grammar_path.empty() || options.heads_path.empty()) {
        throw std::invalid_argument("builtin:cyk needs --grammar and --heads");
      }
    } else {
      const std::size_t eq = spec.find('=');
      if (eq == std::string::npos) {
        throw std::invalid_argument("adapter spec \"" + spec +
                                    "\" is neither builtin:... nor name=command");
      }
      plan.kind = AdapterPlan::Kind::kExternal;
      plan.config.name = spec.substr(0, eq);
      plan.config.command = split_ws(spec.substr(eq + 1));
      if (plan.config.command.empty()) {
        throw std::invalid_argument("adapter \"" + plan.config.name + "\" has an empty command");
      }
    }
    if (!valid_adapter_name(plan.config.name)) {
      throw std::invalid_argument("adapter name \"" + plan.config.name +
                                  "\" (use letters, digits, '_', '-', '.')");
    }

    if (const auto it = modes.find(plan.config.name); it != modes.end()) {
      plan.config.mode = graph_mode_from_string(it->second);
    }
    if (const auto it = timeouts.find(plan.config.name); it != timeouts.end()) {
      plan.config.timeout_per_sentence = std::stod(it->second);
      if (!(plan.config.timeout_per_sentence > 0)) {
        throw std::invalid_argument("timeout for \"" + plan.config.name + "\" must be positive");
      }
    }
    plan.config.batch = std::find(options.batch_adapters.begin(), options.batch_adapters.end(),
                                  plan.config.name) != options.batch_adapters.end();
    plans.push_back(std::move(plan));
  }
  if (plans.empty()) {
    throw std::invalid_argument("at least one --adapter is required");
  }
  std::map<std::string, int> names;
  for (const AdapterPlan& plan : plans) {
    if (++names[plan.config.name] > 1) {
      throw std::invalid_argument("duplicate adapter name \"" + plan.config.name + "\"");
    }
  }
  return plans;
}

std::vector<std::string> forms_of(const std::vector<Token>& tokens) {
  std::vector<std::string> forms;
  forms.reserve(tokens.size());
  for (const Token& t : tokens) {
    forms.push_back(t.text);
  }
  return forms;
}

std::string outcomes_to_file(const std::vector<ParseOutcome>& outcomes,
                             const std::vector<std::vector<std::string>>& forms) {
  std::string out;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    out += write_conll_block(outcomes[i], forms[i]);
    out += '\n';
  }
  return out;
}

constexpr const char* kManifestName = "manifest.json";

}  // namespace

int cmd_parse(const ParseCmdOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() {
    const std::vector<AdapterPlan> plans = resolve_adapters(options);
    const TestCorpus corpus = read_corpus(options.corpus_path);
    fs::create_directories(options.out_dir);

    // Sub-corpora: the clean sentences, then one noisy list per level.
    std::map<int, std::vector<const NoisySentence*>> by_level;
    for (const NoisySentence& ns : corpus.noisy) {
      by_level[ns.error_level].push_back(&ns);
    }

    for (const AdapterPlan& plan : plans) {
      std::optional<CykDependencyParser> cyk;
      if (plan.kind == AdapterPlan::Kind::kCyk) {
        cyk.emplace(PcfgGrammar::load(options.grammar_path), HeadRules::load(options.heads_path));
      }

      const auto parse_batch =
          [&](const std::vector<Sentence>& sentences) -> std::vector<ParseOutcome> {
        switch (plan.kind) {
          case AdapterPlan::Kind::kChain: {
            std::vector<ParseOutcome> outcomes;
            outcomes.reserve(sentences.size());
            for (const Sentence& s : sentences) {
              outcomes.push_back(ParseOutcome::parsed(chain_parse(s)));
            }
            return outcomes;
          }
          case AdapterPlan::Kind::kCyk: {
            std::vector<ParseOutcome> outcomes;
            outcomes.reserve(sentences.size());
            for (const Sentence& s : sentences) {
              outcomes.push_back(cyk->parse(s));
            }
            return outcomes;
          }
          case AdapterPlan::Kind::kExternal:
            return run_external(plan.config, sentences);
        }
        throw std::logic_error("unreachable adapter kind");
      };

      const auto write_outcomes = [&](const std::string& tag,
                                      const std::vector<Sentence>& sentences) {
        const std::vector<ParseOutcome> outcomes = parse_batch(sentences);
        std::vector<std::vector<std::string>> forms;
        forms.reserve(sentences.size());
        for (const Sentence& s : sentences) {
          forms.push_back(forms_of(s.tokens));
        }
        const fs::path path = fs::path(options.out_dir) / (plan.config.name + "." + tag + ".out");
        write_file_atomic(path.string(), outcomes_to_file(outcomes, forms));
        std::size_t failures = 0;
        for (const ParseOutcome& o : outcomes) {
          if (!o.ok()) {
            ++failures;
          }
        }
        out << plan.config.name << "." << tag << ": " << outcomes.size() << " sentences, "
            << failures << " parse failures\n";
      };

      write_outcomes("cs", corpus.base);
      for (const auto& [level, group] : by_level) {
        std::vector<Sentence> sentences;
        sentences.reserve(group.size());
        for (const NoisySentence* ns : group) {
          sentences.push_back(Sentence{ns->base_id, ns->tokens});
        }
        write_outcomes("ns" + std::to_string(level), sentences);
      }
    }

    // Manifest: pairing metadata for cmd_score. Adapters merge across runs
    // so sub-corpora can be parsed by different invocations.
    const fs::path manifest_path = fs::path(options.out_dir) / kManifestName;
    ordered_json manifest;
    if (fs::exists(manifest_path)) {
      manifest = ordered_json::parse(read_file(manifest_path.string()));
    }
    ordered_json base_ids = ordered_json::array();
    for (const Sentence& s : corpus.base) {
      base_ids.push_back(s.id);
    }
    ordered_json levels;
    for (const auto& [level, group] : by_level) {
      ordered_json ids = ordered_json::array();
      for (const NoisySentence* ns : group) {
        ids.push_back(ns->base_id);
      }
      levels[std::to_string(level)] = std::move(ids);
    }
    if (manifest.contains("base_ids") &&
        (manifest["base_ids"] != base_ids || manifest["levels"] != levels)) {
      throw std::runtime_error("outcomes directory was built from a different corpus; "
                               "use a fresh --out directory");
    }
    manifest["corpus"] = options.corpus_path;
    manifest["base_ids"] = std::move(base_ids);
    manifest["levels"] = std::move(levels);
    if (!manifest.contains("adapters")) {
      manifest["adapters"] = ordered_json::array();
    }
    for (const AdapterPlan& plan : plans) {
      bool known = false;
      for (auto& entry : manifest["adapters"]) {
        if (entry["name"] == plan.config.name) {
          entry["mode"] = std::string(to_string(plan.config.mode));
          known = true;
        }
      }
      if (!known) {
        ordered_json entry;
        entry["name"] = plan.config.name;
        entry["mode"] = std::string(to_string(plan.config.mode));
        manifest["adapters"].push_back(std::move(entry));
      }
    }
    write_file_atomic(manifest_path.string(), manifest.dump(2) + "\n");
    return kExitOk;
  });
}

int cmd_score(const ScoreOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() {
    const fs::path dir(options.outcomes_dir);
    const ordered_json manifest = ordered_json::parse(read_file((dir / kManifestName).string()));
    const auto base_ids = manifest.at("base_ids").get<std::vector<std::string>>();
    std::map<std::string, std::size_t> base_index;
    for (std::size_t i = 0; i < base_ids.size(); ++i) {
      base_index[base_ids[i]] = i;
    }

    std::vector<RobustnessReport> reports;
    for (const auto& entry : manifest.at("adapters")) {
      const std::string name = entry.at("name").get<std::string>();
      const GraphMode mode = graph_mode_from_string(entry.at("mode").get<std::string>());

      const auto read_blocks = [&](const std::string& tag) {
        const fs::path path = dir / (name + "." + tag + ".out");
        std::vector<ParseOutcome> outcomes;
        for (const std::string& block : split_blocks(read_file(path.string()))) {
          outcomes.push_back(read_conll_block(block, mode));
        }
        return outcomes;
      };

      const std::vector<ParseOutcome> cs = read_blocks("cs");
      if (cs.size() != base_ids.size()) {
        throw std::runtime_error(name + ".cs.out holds " + std::to_string(cs.size()) +
                                 " outcomes for " + std::to_string(base_ids.size()) +
                                 " clean sentences");
      }

      std::vector<PairVerdict> verdicts;
      for (int level = 1; level <= 3; ++level) {
        const std::string key = std::to_string(level);
        if (!manifest.at("levels").contains(key)) {
          continue;
        }
        const fs::path path = dir / (name + ".ns" + key + ".out");
        if (!fs::exists(path)) {
          out << "note: " << path.filename().string() << " missing; level " << level
              << " not scored for " << name << "\n";
          continue;
        }
        const auto pair_ids = manifest.at("levels").at(key).get<std::vector<std::string>>();
        const std::vector<ParseOutcome> ns = read_blocks("ns" + key);
        if (ns.size() != pair_ids.size()) {
          throw std::runtime_error(name + ".ns" + key + ".out holds " +
                                   std::to_string(ns.size()) + " outcomes for " +
                                   std::to_string(pair_ids.size()) + " noisy sentences");
        }
        for (std::size_t j = 0; j < ns.size(); ++j) {
          const auto at = base_index.find(pair_ids[j]);
          if (at == base_index.end()) {
            throw std::runtime_error("manifest pairs level " + key + " with unknown base \"" +
                                     pair_ids[j] + "\"");
          }
          verdicts.push_back(compare_pair(cs[at->second], ns[j], level, pair_ids[j]));
        }
      }
      if (verdicts.empty()) {
        throw std::runtime_error("no noisy outcomes found for adapter \"" + name + "\"");
      }

      RobustnessReport report = score_verdicts(name, verdicts);
      check_report_invariants(report);
      reports.push_back(std::move(report));
    }
    if (reports.empty()) {
      throw std::runtime_error("manifest lists no adapters");
    }

    const std::string stem = output_stem(options.out_path);
    for (const RobustnessReport& report : reports) {
      const std::string path = reports.size() == 1
                                   ? options.out_path
                                   : stem + "." + report.parser + ".json";
      write_file_atomic(path, report_to_json(report));
      out << "report for " << report.parser << ": overall unlabeled "
          << format2(report.overall_unlabeled) << ", labeled " << format2(report.overall_labeled)
          << " -> " << path << "\n";
    }
    write_file_atomic(stem + ".csv", reports_to_csv(reports));
    write_file_atomic(stem + "_plot_unlabeled.csv",
                      reports_to_plot_csv(reports, Metric::kUnlabeled));
    write_file_atomic(stem + "_plot_labeled.csv", reports_to_plot_csv(reports, Metric::kLabeled));
    return kExitOk;
  });
}

int cmd_report(const ReportOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() {
    std::vector<RobustnessReport> reports;
    for (const std::string& path : options.report_paths) {
      try {
        reports.push_back(report_from_json(read_file(path)));
      } catch (const IoError&) {
        throw;
      } catch (const std::exception& ex) {
        throw IoError("unreadable report " + path + ": " + ex.what());
      }
    }
    std::sort(reports.begin(), reports.end(),
              [](const RobustnessReport& x, const RobustnessReport& y) {
                return x.overall_unlabeled > y.overall_unlabeled;
              });

    const auto cell = [](double v) { return format2(v); };
    out << std::left << std::setw(14) << "parser";
    for (const char* column : {"unlab", "u1", "u2", "u3", "lab", "l1", "l2", "l3"}) {
      out << std::right << std::setw(8) << column;
    }
    out << "\n";
    for (const RobustnessReport& r : reports) {
      out << std::left << std::setw(14) << r.parser;
      const auto level = [&r](int k) -> const LevelScore* {
        for (const LevelScore& s : r.levels) {
          if (s.level == k) {
            return &s;
          }
        }
        return nullptr;
      };
      out << std::right << std::setw(8) << cell(r.overall_unlabeled);
      for (int k = 1; k <= 3; ++k) {
        out << std::right << std::setw(8) << (level(k) != nullptr ? cell(level(k)->unlabeled_incl) : "-");
      }
      out << std::right << std::setw(8) << cell(r.overall_labeled);
      for (int k = 1; k <= 3; ++k) {
        out << std::right << std::setw(8) << (level(k) != nullptr ? cell(level(k)->labeled_incl) : "-");
      }
      out << "\n";
    }

    out << "\n";
    for (const RobustnessReport& r : reports) {
      const auto print_drop = [&](const char* metric, const std::optional<double>& value) {
        if (value.has_value()) {
          char buf[32];
          std::snprintf(buf, sizeof(buf), "%.1f", *value);
          out << r.parser << ": " << metric << " degradation level 1 -> 3: " << buf << "%\n";
        }
      };
      print_drop("unlabeled", r.degradation.unlabeled);
      print_drop("labeled", r.degradation.labeled);
      // Supplementary: the level 1 -> 2 drop, from the reported level scores.
      const LevelScore* first = nullptr;
      const LevelScore* second = nullptr;
      for (const LevelScore& s : r.levels) {
        if (s.level == 1) {
          first = &s;
        }
        if (s.level == 2) {
          second = &s;
        }
      }
      if (first != nullptr && second != nullptr && first->unlabeled_incl > 0.0) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.1f",
                      degradation(first->unlabeled_incl, second->unlabeled_incl));
        out << r.parser << ": unlabeled degradation level 1 -> 2: " << buf << "%\n";
      }
    }

    for (const std::string& spec : options.pr_specs) {
      const std::size_t colon = spec.find(':');
      const std::size_t comma = spec.find(',', colon == std::string::npos ? 0 : colon);
      if (colon == std::string::npos || comma == std::string::npos) {
        throw std::invalid_argument("--pr needs name:precision,recall, got \"" + spec + "\"");
      }
      const std::string name = spec.substr(0, colon);
      const double precision = std::stod(spec.substr(colon + 1, comma - colon - 1));
      const double recall = std::stod(spec.substr(comma + 1));
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.1f", fscore(precision, recall));
      out << "F-score " << name << ": " << buf << " (P " << precision << ", R " << recall
          << ")\n";
    }
    return kExitOk;
  });
}

}  // namespace robusteval

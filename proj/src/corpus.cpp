#include "robusteval/corpus.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "robusteval/io_util.hpp"
#include "robusteval/keyboard.hpp"

namespace robusteval {

namespace {

using ordered_json = nlohmann::ordered_json;

struct WordUncorruptible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<int> swap_positions(const std::string& word) {
  std::vector<int> out;
  for (int i = 0; i + 1 < static_cast<int>(word.size()); ++i) {
    if (word[static_cast<std::size_t>(i)] != word[static_cast<std::size_t>(i) + 1]) {
      out.push_back(i);
    }
  }
  return out;
}

// One uniform draw from the legal edit space. Returns false when the drawn
// op has no legal position (all-equal adjacent characters rule out swaps).
bool draw_edit(const std::string& word, Rng& rng, Edit& out) {
  const auto len = static_cast<int>(word.size());
  switch (rng.below(3)) {
    case 0: {
      out = Edit{0, EditOp::kDelete, static_cast<int>(rng.below(static_cast<std::uint64_t>(len))),
                 '\0'};
      return true;
    }
    case 1: {
      const int pos = static_cast<int>(rng.below(static_cast<std::uint64_t>(len)));
      const std::string neighbors = keyboard_neighbors(word[static_cast<std::size_t>(pos)]);
      const char c = neighbors[rng.index(neighbors.size())];
      out = Edit{0, EditOp::kAdd, pos, c};
      return true;
    }
    default: {
      const std::vector<int> legal = swap_positions(word);
      if (legal.empty()) {
        return false;
      }
      out = Edit{0, EditOp::kSwap, legal[rng.index(legal.size())], '\0'};
      return true;
    }
  }
}

// Canonical-order scan of every legal edit; used once sampling has given up.
std::pair<std::string, Edit> scan_edit_space(const std::string& word, const Lexicon& lexicon) {
  const auto len = static_cast<int>(word.size());
  for (int pos = 0; pos < len; ++pos) {
    const Edit e{0, EditOp::kDelete, pos, '\0'};
    const std::string candidate = apply_edit(word, e);
    if (!lexicon.contains(candidate)) {
      return {candidate, e};
    }
  }
  for (int pos = 0; pos < len; ++pos) {
    for (char c : keyboard_neighbors(word[static_cast<std::size_t>(pos)])) {
      const Edit e{0, EditOp::kAdd, pos, c};
      const std::string candidate = apply_edit(word, e);
      if (!lexicon.contains(candidate)) {
        return {candidate, e};
      }
    }
  }
  for (int pos : swap_positions(word)) {
    const Edit e{0, EditOp::kSwap, pos, '\0'};
    const std::string candidate = apply_edit(word, e);
    if (!lexicon.contains(candidate)) {
      return {candidate, e};
    }
  }
  throw WordUncorruptible("word uncorruptible: \"" + word + "\"");
}

std::string edit_fingerprint(const std::vector<Edit>& edits) {
  std::string fp;
  for (const Edit& e : edits) {
    fp += std::to_string(e.word_index);
    fp += ':';
    fp += to_string(e.op);
    fp += ':';
    fp += std::to_string(e.char_index);
    if (e.op == EditOp::kAdd) {
      fp += ':';
      fp += e.inserted_char;
    }
    fp += ';';
  }
  return fp;
}

[[noreturn]] void corpus_error(const std::string& what) {
  throw std::runtime_error("invalid corpus: " + what);
}

void validate_corpus(const TestCorpus& c) {
  if (c.base.empty()) {
    corpus_error("no base sentences");
  }
  std::unordered_map<std::string, const Sentence*> by_id;
  for (const Sentence& s : c.base) {
    if (s.id.empty()) {
      corpus_error("base sentence with empty id");
    }
    if (!by_id.emplace(s.id, &s).second) {
      corpus_error("duplicate base id \"" + s.id + "\"");
    }
    if (s.tokens.empty()) {
      corpus_error("sentence \"" + s.id + "\" has no tokens");
    }
    if (s.tokens.size() > kMaxSentenceTokens) {
      corpus_error("sentence \"" + s.id + "\" exceeds " + std::to_string(kMaxSentenceTokens) +
                   " tokens");
    }
    for (const Token& t : s.tokens) {
      if (t.text.empty()) {
        corpus_error("sentence \"" + s.id + "\" has an empty token");
      }
      if (t.text.find_first_of(" \t\r\n") != std::string::npos) {
        corpus_error("sentence \"" + s.id + "\" has a token containing whitespace");
      }
    }
  }
  for (const NoisySentence& ns : c.noisy) {
    const auto it = by_id.find(ns.base_id);
    if (it == by_id.end()) {
      corpus_error("noisy sentence references unknown base \"" + ns.base_id + "\"");
    }
    const Sentence& base = *it->second;
    if (ns.error_level < 1 || ns.error_level > 3) {
      corpus_error("error_level out of range for base \"" + ns.base_id + "\"");
    }
    if (ns.tokens.size() != base.tokens.size()) {
      corpus_error("token count differs from base \"" + ns.base_id + "\"");
    }
    if (ns.edits.size() != static_cast<std::size_t>(ns.error_level)) {
      corpus_error("edit count does not equal error_level for base \"" + ns.base_id + "\"");
    }
    std::set<int> edited;
    for (const Edit& e : ns.edits) {
      if (e.word_index < 1 || e.word_index > static_cast<int>(base.tokens.size())) {
        corpus_error("edit word_index out of range for base \"" + ns.base_id + "\"");
      }
      if (!edited.insert(e.word_index).second) {
        corpus_error("duplicate edit word_index for base \"" + ns.base_id + "\"");
      }
      const std::string& original = base.tokens[static_cast<std::size_t>(e.word_index) - 1].text;
      const std::string& corrupted = ns.tokens[static_cast<std::size_t>(e.word_index) - 1].text;
      std::string expected;
      try {
        expected = apply_edit(original, e);
      } catch (const std::invalid_argument& ex) {
        corpus_error(std::string("edit not applicable to base \"") + ns.base_id + "\": " +
                     ex.what());
      }
      if (expected != corrupted) {
        corpus_error("corrupted token does not match its edit for base \"" + ns.base_id + "\"");
      }
    }
    for (std::size_t i = 0; i < ns.tokens.size(); ++i) {
      if (edited.count(static_cast<int>(i) + 1) == 0 && ns.tokens[i].text != base.tokens[i].text) {
        corpus_error("unedited token differs from base \"" + ns.base_id + "\"");
      }
    }
  }
}

std::vector<Token> tokens_from_texts(const std::vector<std::string>& texts) {
  std::vector<Token> tokens;
  tokens.reserve(texts.size());
  for (std::size_t i = 0; i < texts.size(); ++i) {
    Token t;
    t.index = static_cast<int>(i) + 1;
    t.text = texts[i];
    t.corruptible = is_corruptible_word(t.text);
    tokens.push_back(std::move(t));
  }
  return tokens;
}

std::vector<std::string> texts_of(const std::vector<Token>& tokens) {
  std::vector<std::string> texts;
  texts.reserve(tokens.size());
  for (const Token& t : tokens) {
    texts.push_back(t.text);
  }
  return texts;
}

}  // namespace

const Sentence& TestCorpus::base_by_id(const std::string& id) const {
  for (const Sentence& s : base) {
    if (s.id == id) {
      return s;
    }
  }
  throw std::runtime_error("no base sentence with id \"" + id + "\"");
}

std::size_t TestCorpus::count_at_level(int level) const {
  std::size_t n = 0;
  for (const NoisySentence& ns : noisy) {
    if (ns.error_level == level) {
      ++n;
    }
  }
  return n;
}

std::pair<std::string, Edit> corrupt_word(const std::string& word, const Lexicon& lexicon,
                                          Rng& rng) {
  if (!is_corruptible_word(word)) {
    throw std::invalid_argument("word not corruptible: \"" + word + "\"");
  }
  constexpr int kMaxRejected = 100;
  int rejected = 0;
  while (rejected < kMaxRejected) {
    Edit e;
    if (!draw_edit(word, rng, e)) {
      ++rejected;
      continue;
    }
    std::string candidate = apply_edit(word, e);
    if (lexicon.contains(candidate)) {
      ++rejected;
      continue;
    }
    return {std::move(candidate), e};
  }
  return scan_edit_space(word, lexicon);
}

NoisySentence corrupt_sentence(const Sentence& s, int k, const Lexicon& lexicon, Rng& rng) {
  if (k < 1) {
    throw std::invalid_argument("error level must be at least 1");
  }
  std::vector<int> pool;
  for (const Token& t : s.tokens) {
    if (t.corruptible) {
      pool.push_back(t.index);
    }
  }
  if (static_cast<std::size_t>(k) > pool.size()) {
    throw std::runtime_error("not enough corruptible words");
  }

  // Uncorruptible picks (every legal edit of the word is itself a word) are
  // put back and another position is drawn.
  std::map<int, std::pair<std::string, Edit>> picked;
  while (picked.size() < static_cast<std::size_t>(k)) {
    if (pool.empty()) {
      throw std::runtime_error("not enough corruptible words");
    }
    const std::size_t at = rng.index(pool.size());
    const int pos = pool[at];
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(at));
    try {
      picked.emplace(pos, corrupt_word(s.tokens[static_cast<std::size_t>(pos) - 1].text, lexicon, rng));
    } catch (const WordUncorruptible&) {
      continue;
    }
  }

  NoisySentence ns;
  ns.base_id = s.id;
  ns.error_level = k;
  ns.tokens = s.tokens;
  for (auto& [pos, result] : picked) {
    Token& t = ns.tokens[static_cast<std::size_t>(pos) - 1];
    t.text = result.first;
    t.corruptible = is_corruptible_word(t.text);
    Edit e = result.second;
    e.word_index = pos;
    ns.edits.push_back(e);
  }
  return ns;
}

TestCorpus build_corpus(const std::vector<Sentence>& base, const CorpusPlan& plan,
                        std::uint64_t seed, const Lexicon& lexicon) {
  TestCorpus corpus;
  corpus.base = base;
  corpus.seed = seed;
  corpus.lexicon_source = lexicon.source();

  for (const auto& [level, count] : plan) {
    if (level < 1 || level > 3) {
      throw std::invalid_argument("plan level out of range: " + std::to_string(level));
    }
    (void)count;
  }
  // Fails fast on duplicate ids, empty tokens and the like.
  validate_corpus(corpus);

  constexpr int kMaxAttemptsPerVariant = 1000;
  const std::size_t n_base = base.size();
  std::map<std::pair<std::string, int>, std::set<std::string>> seen;

  for (const auto& [level, count] : plan) {
    for (std::size_t t = 0; t < count; ++t) {
      const Sentence& b = base[t % n_base];
      const std::uint64_t ordinal = t / n_base;
      Rng rng(derive_stream(seed, b.id, level, ordinal));
      auto& fingerprints = seen[{b.id, level}];

      bool placed = false;
      for (int attempt = 0; attempt < kMaxAttemptsPerVariant && !placed; ++attempt) {
        NoisySentence ns;
        try {
          ns = corrupt_sentence(b, level, lexicon, rng);
        } catch (const std::runtime_error& ex) {
          throw std::runtime_error("cannot corrupt base sentence \"" + b.id + "\" at level " +
                                   std::to_string(level) + ": " + ex.what());
        }
        if (fingerprints.insert(edit_fingerprint(ns.edits)).second) {
          corpus.noisy.push_back(std::move(ns));
          placed = true;
        }
      }
      if (!placed) {
        throw std::runtime_error("edit space exhausted for base sentence \"" + b.id +
                                 "\" at level " + std::to_string(level));
      }
    }
  }
  return corpus;
}

std::string corpus_to_jsonl(const TestCorpus& c) {
  std::string out;
  {
    ordered_json header;
    header["seed"] = c.seed;
    header["lexicon_source"] = c.lexicon_source;
    out += header.dump();
    out += '\n';
  }
  for (const Sentence& s : c.base) {
    ordered_json rec;
    rec["kind"] = "base";
    rec["id"] = s.id;
    rec["tokens"] = texts_of(s.tokens);
    out += rec.dump();
    out += '\n';
  }
  for (const NoisySentence& ns : c.noisy) {
    ordered_json rec;
    rec["kind"] = "noisy";
    rec["base_id"] = ns.base_id;
    rec["error_level"] = ns.error_level;
    rec["tokens"] = texts_of(ns.tokens);
    ordered_json edits = ordered_json::array();
    for (const Edit& e : ns.edits) {
      ordered_json je;
      je["word_index"] = e.word_index;
      je["op"] = std::string(to_string(e.op));
      je["char_index"] = e.char_index;
      if (e.op == EditOp::kAdd) {
        je["inserted_char"] = std::string(1, e.inserted_char);
      }
      edits.push_back(std::move(je));
    }
    rec["edits"] = std::move(edits);
    out += rec.dump();
    out += '\n';
  }
  return out;
}

TestCorpus corpus_from_jsonl(const std::string& text) {
  TestCorpus corpus;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool have_header = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    ordered_json rec;
    try {
      rec = ordered_json::parse(line);
    } catch (const nlohmann::json::exception& ex) {
      throw std::runtime_error("corpus line " + std::to_string(line_no) + ": " + ex.what());
    }
    try {
      if (!have_header) {
        corpus.seed = rec.at("seed").get<std::uint64_t>();
        corpus.lexicon_source = rec.at("lexicon_source").get<std::string>();
        have_header = true;
        continue;
      }
      const std::string kind = rec.at("kind").get<std::string>();
      if (kind == "base") {
        Sentence s;
        s.id = rec.at("id").get<std::string>();
        s.tokens = tokens_from_texts(rec.at("tokens").get<std::vector<std::string>>());
        corpus.base.push_back(std::move(s));
      } else if (kind == "noisy") {
        NoisySentence ns;
        ns.base_id = rec.at("base_id").get<std::string>();
        ns.error_level = rec.at("error_level").get<int>();
        ns.tokens = tokens_from_texts(rec.at("tokens").get<std::vector<std::string>>());
        for (const auto& je : rec.at("edits")) {
          Edit e;
          e.word_index = je.at("word_index").get<int>();
          e.op = edit_op_from_string(je.at("op").get<std::string>());
          e.char_index = je.at("char_index").get<int>();
          if (e.op == EditOp::kAdd) {
            const std::string c = je.at("inserted_char").get<std::string>();
            if (c.size() != 1) {
              throw std::runtime_error("inserted_char must be a single character");
            }
            e.inserted_char = c[0];
          }
          ns.edits.push_back(e);
        }
        corpus.noisy.push_back(std::move(ns));
      } else {
        throw std::runtime_error("unknown record kind \"" + kind + "\"");
      }
    } catch (const nlohmann::json::exception& ex) {
      throw std::runtime_error("corpus line " + std::to_string(line_no) + ": " + ex.what());
    } catch (const std::exception& ex) {
      throw std::runtime_error("corpus line " + std::to_string(line_no) + ": " + ex.what());
    }
  }
  if (!have_header) {
    throw std::runtime_error("corpus line 1: missing header record");
  }
  validate_corpus(corpus);
  return corpus;
}

void write_corpus(const TestCorpus& c, const std::string& path) {
  write_file_atomic(path, corpus_to_jsonl(c));
}

TestCorpus read_corpus(const std::string& path) {
  return corpus_from_jsonl(read_file(path));
}

CorpusTextExport export_plain_text(const TestCorpus& c) {
  CorpusTextExport out;
  for (const Sentence& s : c.base) {
    out.clean += detokenize(s);
    out.clean += '\n';
  }
  for (const NoisySentence& ns : c.noisy) {
    Sentence view;
    view.tokens = ns.tokens;
    out.noisy_by_level[ns.error_level] += detokenize(view);
    out.noisy_by_level[ns.error_level] += '\n';
  }
  return out;
}

}  // namespace robusteval

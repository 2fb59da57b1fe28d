#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "robusteval/edit.hpp"
#include "robusteval/lexicon.hpp"
#include "robusteval/rng.hpp"
#include "robusteval/text.hpp"

namespace robusteval {

// A corrupted copy of a base sentence. error_level counts the misspelled
// words; every edit touches a distinct word, and every corrupted word is a
// non-word under the lexicon the corpus was built with.
struct NoisySentence {
  std::string base_id;
  int error_level = 0;
  std::vector<Token> tokens;
  std::vector<Edit> edits;  // sorted by word_index

  bool operator==(const NoisySentence&) const = default;
};

struct TestCorpus {
  std::vector<Sentence> base;
  std::vector<NoisySentence> noisy;
  std::uint64_t seed = 0;
  std::string lexicon_source;

  bool operator==(const TestCorpus&) const = default;

  const Sentence& base_by_id(const std::string& id) const;
  std::size_t count_at_level(int level) const;
};

// Requested number of noisy sentences per error level (total, not per base).
using CorpusPlan = std::map<int, std::size_t>;

// Draws one edit uniformly from the legal edit space of the word and retries
// until the result is not in the lexicon. After 100 rejected draws the legal
// space is scanned exhaustively; if even that finds nothing, throws
// std::runtime_error ("word uncorruptible ..."). The returned Edit has
// word_index 0; the caller binds it to a token position.
// Precondition: is_corruptible_word(word).
std::pair<std::string, Edit> corrupt_word(const std::string& word, const Lexicon& lexicon,
                                          Rng& rng);

// Corrupts k distinct corruptible tokens of s, chosen uniformly at random.
// Throws std::runtime_error ("not enough corruptible words") when fewer than
// k corruptible tokens can be corrupted.
NoisySentence corrupt_sentence(const Sentence& s, int k, const Lexicon& lexicon, Rng& rng);

// Builds the full corpus: for each level, plan[level] noisy variants are
// generated round-robin over the base sentences (variant t belongs to base
// t % base.size()), and two variants of the same base and level always differ
// in at least one edit. Deterministic in (base, plan, seed, lexicon).
TestCorpus build_corpus(const std::vector<Sentence>& base, const CorpusPlan& plan,
                        std::uint64_t seed, const Lexicon& lexicon);

// JSON Lines: a header record {"seed":..., "lexicon_source":...}, then one
// record per base sentence and one per noisy sentence.
std::string corpus_to_jsonl(const TestCorpus& c);
TestCorpus corpus_from_jsonl(const std::string& text);

void write_corpus(const TestCorpus& c, const std::string& path);
TestCorpus read_corpus(const std::string& path);

// Plain-text view: one detokenized sentence per line. Returns the clean file
// contents and one file per level present in the corpus. With round-robin
// generation, line j of a level file pairs with line j % base.size() of the
// clean file.
struct CorpusTextExport {
  std::string clean;
  std::map<int, std::string> noisy_by_level;
};
CorpusTextExport export_plain_text(const TestCorpus& c);

}  // namespace robusteval

#pragma once

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace robusteval {

// Word list used to decide whether a corrupted string is still a valid word.
// Membership is case-insensitive; queries are lowercased before lookup.
class Lexicon {
 public:
  // UTF-8, one word per line; '#' lines and blank lines are ignored.
  static Lexicon load(const std::string& path);

  static Lexicon from_words(const std::vector<std::string>& words, std::string source);

  bool contains(std::string_view word) const;

  std::size_t size() const { return words_.size(); }
  const std::string& source() const { return source_; }

 private:
  Lexicon(std::unordered_set<std::string> words, std::string source);

  std::unordered_set<std::string> words_;
  std::string source_;
};

}  // namespace robusteval

#include "robusteval/lexicon.hpp"

#include <cctype>
#include <fstream>
#include <stdexcept>

#include "robusteval/io_util.hpp"

namespace robusteval {

namespace {

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::string trim(const std::string& s) {
  std::size_t lo = 0;
  std::size_t hi = s.size();
  while (lo < hi && std::isspace(static_cast<unsigned char>(s[lo]))) {
    ++lo;
  }
  while (hi > lo && std::isspace(static_cast<unsigned char>(s[hi - 1]))) {
    --hi;
  }
  return s.substr(lo, hi - lo);
}

}  // namespace

Lexicon::Lexicon(std::unordered_set<std::string> words, std::string source)
    : words_(std::move(words)), source_(std::move(source)) {
  if (words_.empty()) {
    throw std::invalid_argument("empty lexicon: " + source_);
  }
}

Lexicon Lexicon::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open lexicon file: " + path);
  }
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    const std::string word = trim(line);
    if (word.empty() || word[0] == '#') {
      continue;
    }
    words.insert(lowercase(word));
  }
  return Lexicon(std::move(words), path);
}

Lexicon Lexicon::from_words(const std::vector<std::string>& words, std::string source) {
  std::unordered_set<std::string> set;
  for (const auto& w : words) {
    set.insert(lowercase(w));
  }
  return Lexicon(std::move(set), std::move(source));
}

bool Lexicon::contains(std::string_view word) const {
  return words_.count(lowercase(word)) > 0;
}

}  // namespace robusteval

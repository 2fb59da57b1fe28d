#include "robusteval/text.hpp"

#include <cctype>
#include <stdexcept>

namespace robusteval {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

bool is_ascii_alpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

// ASCII punctuation only; bytes outside ASCII belong to multi-byte UTF-8
// sequences and are treated as word characters.
bool is_punct(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u < 0x80 && std::ispunct(u) != 0;
}

void push_token(Sentence& s, std::string text) {
  Token t;
  t.index = static_cast<int>(s.tokens.size()) + 1;
  t.corruptible = is_corruptible_word(text);
  t.text = std::move(text);
  s.tokens.push_back(std::move(t));
}

}  // namespace

bool is_corruptible_word(std::string_view text) {
  if (text.size() < 3) {
    return false;
  }
  for (char c : text) {
    if (!is_ascii_alpha(c)) {
      return false;
    }
  }
  return true;
}

Sentence tokenize(std::string_view text, std::string id) {
  Sentence s;
  s.id = std::move(id);

  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && is_space(text[pos])) {
      ++pos;
    }
    std::size_t end = pos;
    while (end < text.size() && !is_space(text[end])) {
      ++end;
    }
    if (end == pos) {
      break;
    }
    const std::string_view chunk = text.substr(pos, end - pos);
    pos = end;

    std::size_t lo = 0;
    std::size_t hi = chunk.size();
    while (lo < hi && is_punct(chunk[lo])) {
      ++lo;
    }
    while (hi > lo && is_punct(chunk[hi - 1])) {
      --hi;
    }
    for (std::size_t i = 0; i < lo; ++i) {
      push_token(s, std::string(1, chunk[i]));
    }
    if (hi > lo) {
      push_token(s, std::string(chunk.substr(lo, hi - lo)));
    }
    for (std::size_t i = hi; i < chunk.size(); ++i) {
      push_token(s, std::string(1, chunk[i]));
    }
  }

  if (s.tokens.empty()) {
    throw std::invalid_argument("empty sentence");
  }
  if (s.tokens.size() > kMaxSentenceTokens) {
    throw std::invalid_argument("sentence exceeds " + std::to_string(kMaxSentenceTokens) +
                                " tokens");
  }
  return s;
}

std::string detokenize(const Sentence& s) {
  std::string out;
  for (const Token& t : s.tokens) {
    if (!out.empty()) {
      out += ' ';
    }
    out += t.text;
  }
  return out;
}

}  // namespace robusteval

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace robusteval {

struct Token {
  int index = 0;  // 1-based position in the sentence
  std::string text;
  bool corruptible = false;

  bool operator==(const Token&) const = default;
};

struct Sentence {
  std::string id;
  std::vector<Token> tokens;

  bool operator==(const Sentence&) const = default;
};

inline constexpr std::size_t kMaxSentenceTokens = 1000;

// A word is eligible for corruption when it is purely ASCII-alphabetic and at
// least three characters long. Shorter words almost always have valid-word
// neighbours, and a two-letter word cannot survive a deletion.
bool is_corruptible_word(std::string_view text);

// Whitespace split; leading and trailing punctuation characters of each chunk
// become tokens of their own, interior characters are left alone.
// "The dog barks." -> ["The", "dog", "barks", "."]
Sentence tokenize(std::string_view text, std::string id = "");

// Tokens joined by single spaces.
std::string detokenize(const Sentence& s);

}  // namespace robusteval

#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace robusteval {

enum class EditOp { kDelete, kAdd, kSwap };

std::string_view to_string(EditOp op);

// Throws std::invalid_argument on an unknown name.
EditOp edit_op_from_string(std::string_view name);

// One character-level edit applied to one word of a sentence.
//   delete: remove the character at char_index (result stays >= 2 chars)
//   add:    insert inserted_char immediately after char_index; the inserted
//           letter must be keyboard-adjacent to the character it follows
//   swap:   exchange the characters at char_index and char_index + 1, which
//           must differ
struct Edit {
  int word_index = 0;  // 1-based token position; 0 while unbound
  EditOp op = EditOp::kDelete;
  int char_index = 0;  // 0-based position within the word
  char inserted_char = '\0';  // add only

  auto operator<=>(const Edit&) const = default;
};

// Applies e to word, validating the Edit constraints against it. The result
// always differs from the input. Throws std::invalid_argument ("invalid
// edit: ...") when a constraint is violated.
std::string apply_edit(const std::string& word, const Edit& e);

}  // namespace robusteval

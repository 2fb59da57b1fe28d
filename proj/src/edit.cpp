#include "robusteval/edit.hpp"

#include <stdexcept>

#include "robusteval/keyboard.hpp"

namespace robusteval {

namespace {

[[noreturn]] void invalid(const std::string& why) {
  throw std::invalid_argument("invalid edit: " + why);
}

}  // namespace

std::string_view to_string(EditOp op) {
  switch (op) {
    case EditOp::kDelete:
      return "delete";
    case EditOp::kAdd:
      return "add";
    case EditOp::kSwap:
      return "swap";
  }
  throw std::logic_error("unreachable edit op");
}

EditOp edit_op_from_string(std::string_view name) {
  if (name == "delete") {
    return EditOp::kDelete;
  }
  if (name == "add") {
    return EditOp::kAdd;
  }
  if (name == "swap") {
    return EditOp::kSwap;
  }
  throw std::invalid_argument("unknown edit op: \"" + std::string(name) + "\"");
}

std::string apply_edit(const std::string& word, const Edit& e) {
  const auto len = static_cast<int>(word.size());
  switch (e.op) {
    case EditOp::kDelete: {
      if (e.char_index < 0 || e.char_index >= len) {
        invalid("delete position out of range");
      }
      if (len - 1 < 2) {
        invalid("deletion would leave fewer than two characters");
      }
      std::string out = word;
      out.erase(static_cast<std::size_t>(e.char_index), 1);
      return out;
    }
    case EditOp::kAdd: {
      if (e.char_index < 0 || e.char_index >= len) {
        invalid("add position out of range");
      }
      if (!keyboard_adjacent(word[static_cast<std::size_t>(e.char_index)], e.inserted_char)) {
        invalid("inserted character is not keyboard-adjacent");
      }
      std::string out = word;
      out.insert(static_cast<std::size_t>(e.char_index) + 1, 1, e.inserted_char);
      return out;
    }
    case EditOp::kSwap: {
      if (e.char_index < 0 || e.char_index + 1 >= len) {
        invalid("swap position out of range");
      }
      const auto i = static_cast<std::size_t>(e.char_index);
      if (word[i] == word[i + 1]) {
        invalid("swapped characters are identical");
      }
      std::string out = word;
      std::swap(out[i], out[i + 1]);
      return out;
    }
  }
  throw std::logic_error("unreachable edit op");
}

}  // namespace robusteval

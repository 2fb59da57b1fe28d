#pragma once

#include <stdexcept>
#include <string>

namespace robusteval {

// Raised for filesystem-level trouble (open/rename failures); commands map
// it to a distinct exit code from content errors.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path);

// Whole-file atomic write: the content lands in a temporary file next to the
// target, which is then renamed over it.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace robusteval

#pragma once

#include <string>

namespace robusteval {

// Letter adjacency on a US QWERTY layout. The three letter rows sit on a
// grid with horizontal offsets of 0, 1 and 3 quarter-keys and one key of
// vertical spacing; two letters are adjacent when their Euclidean distance is
// at most 1.3 key widths. The predicate is evaluated in scaled integer
// arithmetic, so it is exact.

// True when a and b are distinct letters within adjacency range.
// Case-insensitive.
bool keyboard_adjacent(char a, char b);

// Neighbour set of c as a sorted string of distinct lowercase letters.
// Symmetric, irreflexive and never empty. Throws std::invalid_argument
// ("not a letter") on non-letter input.
std::string keyboard_neighbors(char c);

}  // namespace robusteval

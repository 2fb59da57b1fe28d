#include "robusteval/keyboard.hpp"

#include <array>
#include <cctype>
#include <stdexcept>

namespace robusteval {

namespace {

struct Coord {
  int x = 0;  // quarter key widths
  int y = 0;
};

// Row offsets: "qwertyuiop" at 0, "asdfghjkl" at +1/4, "zxcvbnm" at +3/4.
// One key width = 4 units, one row = 4 units.
std::array<Coord, 26> make_coords() {
  std::array<Coord, 26> coords{};
  const char* rows[3] = {"qwertyuiop", "asdfghjkl", "zxcvbnm"};
  const int x_offset[3] = {0, 1, 3};
  for (int row = 0; row < 3; ++row) {
    int col = 0;
    for (const char* p = rows[row]; *p != '\0'; ++p, ++col) {
      coords[*p - 'a'] = Coord{4 * col + x_offset[row], 4 * row};
    }
  }
  return coords;
}

const std::array<Coord, 26>& coords() {
  static const std::array<Coord, 26> table = make_coords();
  return table;
}

int fold(char c) {
  if (c >= 'a' && c <= 'z') {
    return c - 'a';
  }
  if (c >= 'A' && c <= 'Z') {
    return c - 'A';
  }
  return -1;
}

// (1.3 * 4)^2 = 27.04; squared distances are integers, so <= 27 is exact.
constexpr int kMaxSquaredDistance = 27;

}  // namespace

bool keyboard_adjacent(char a, char b) {
  const int ia = fold(a);
  const int ib = fold(b);
  if (ia < 0 || ib < 0 || ia == ib) {
    return false;
  }
  const Coord ca = coords()[static_cast<std::size_t>(ia)];
  const Coord cb = coords()[static_cast<std::size_t>(ib)];
  const int dx = ca.x - cb.x;
  const int dy = ca.y - cb.y;
  return dx * dx + dy * dy <= kMaxSquaredDistance;
}

std::string keyboard_neighbors(char c) {
  if (fold(c) < 0) {
    throw std::invalid_argument("not a letter");
  }
  std::string out;
  for (char other = 'a'; other <= 'z'; ++other) {
    if (keyboard_adjacent(c, other)) {
      out += other;
    }
  }
  return out;
}

}  // namespace robusteval

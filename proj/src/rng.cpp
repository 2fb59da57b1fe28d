#include "robusteval/rng.hpp"

#include <stdexcept>

namespace robusteval {

std::uint64_t Rng::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) {
    throw std::invalid_argument("Rng::below: empty range");
  }
  // Rejection sampling; rejects at most half the draws for any bound.
  const std::uint64_t threshold = -bound % bound;
  for (;;) {
    const std::uint64_t r = next();
    if (r >= threshold) {
      return r % bound;
    }
  }
}

std::uint64_t derive_stream(std::uint64_t seed, std::string_view base_id, int level,
                            std::uint64_t ordinal) {
  // FNV-1a over the stream coordinates, then one splitmix round to spread
  // low-entropy inputs over the whole state space.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  const auto mix_u64 = [&h](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xffULL;
      h *= 0x100000001b3ULL;
    }
  };
  mix_u64(seed);
  for (unsigned char c : base_id) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  mix_u64(static_cast<std::uint64_t>(level));
  mix_u64(ordinal);
  return Rng(h).next();
}

}  // namespace robusteval

#pragma once

#include <cstdint>
#include <string_view>

namespace robusteval {

// Deterministic 64-bit generator (splitmix64). The standard <random>
// distributions are implementation-defined, so corpora built with them would
// not be reproducible across toolchains; everything random in this project
// goes through this class instead.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();

  // Uniform draw in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  std::size_t index(std::size_t size) { return static_cast<std::size_t>(below(size)); }

 private:
  std::uint64_t state_;
};

// Seed for the generator stream of one noisy sentence. Mixing the corpus
// seed with the base id, error level and variant ordinal makes every stream
// independent of generation order, which keeps parallel generation and
// incremental regeneration byte-identical.
std::uint64_t derive_stream(std::uint64_t seed, std::string_view base_id, int level,
                            std::uint64_t ordinal);

}  // namespace robusteval

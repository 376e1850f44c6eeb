#pragma once

#include <cstdint>
#include <random>

namespace sap {

using Rng = std::mt19937_64;

// Uniform integer in [0, bound). Rejection sampling on the raw engine output
// so sequences are identical across standard library implementations.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = Rng::max() - (Rng::max() % bound);
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return draw % bound;
}

}  // namespace sap

#pragma once

#include <cstdint>

#include "plr/lattice.hpp"

namespace plr {

/// Randomness source for nested base-2 scrambling. Swap bits are drawn by a
/// counter-based hash keyed on (seed, coordinate, digit index, digit prefix
/// of the input point), so scrambling is deterministic, O(1) memory, and two
/// points share permutations exactly as far as they share input prefixes.
/// identity = true forces every swap bit to zero (zero-padded passthrough).
struct ScrambleRandomness {
  std::uint64_t seed = 0;
  int depth = 53;
  bool identity = false;

  static ScrambleRandomness hashed(std::uint64_t seed, int depth = 53) {
    return ScrambleRandomness{seed, depth, false};
  }
  static ScrambleRandomness identity_padding(int depth = 53) {
    return ScrambleRandomness{0, depth, true};
  }
};

/// Owen-scrambles every coordinate of every point to `depth` digits.
/// Requires depth >= ps.precision_bits and depth <= 62. Digits up to the
/// input precision are permuted, deeper digits are fresh uniform bits.
PointSet owen_scramble(const PointSet& ps, const ScrambleRandomness& rnd);

/// First `digits` output digits of the scramble of a single coordinate
/// value; depends only on the first `digits` input digits (nestedness).
std::uint64_t owen_scramble_prefix(std::uint64_t numer, int precision_bits, int digits,
                                   int coordinate, const ScrambleRandomness& rnd);

}

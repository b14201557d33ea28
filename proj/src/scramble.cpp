#include "plr/scramble.hpp"

#include <stdexcept>

namespace plr {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ull;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebull;
  z ^= z >> 31;
  return z;
}

std::uint64_t swap_bit(std::uint64_t seed, int coordinate, int digit, std::uint64_t prefix) {
  std::uint64_t h = mix64(seed ^ 0x6a09e667f3bcc908ull);
  h = mix64(h ^ (static_cast<std::uint64_t>(coordinate) * 0xb5297a4d3a2dd93dull));
  h = mix64(h ^ (static_cast<std::uint64_t>(digit) * 0x68e31da4a61cbb4full));
  h = mix64(h ^ prefix);
  return h & 1;
}

std::uint64_t scramble_value(std::uint64_t a, int mb, int depth, int coordinate,
                             const ScrambleRandomness& rnd) {
  std::uint64_t y = 0;
  for (int k = 1; k <= mb; ++k) {
    const std::uint64_t prefix = a >> (mb - k + 1);
    const std::uint64_t b = rnd.identity ? 0 : swap_bit(rnd.seed, coordinate, k, prefix);
    const std::uint64_t xk = (a >> (mb - k)) & 1;
    y = (y << 1) | (xk ^ b);
  }
  for (int k = mb + 1; k <= depth; ++k) {
    const std::uint64_t b = rnd.identity ? 0 : swap_bit(rnd.seed, coordinate, k, a);
    y = (y << 1) | b;
  }
  return y;
}

}  // namespace

std::uint64_t owen_scramble_prefix(std::uint64_t numer, int precision_bits, int digits,
                                   int coordinate, const ScrambleRandomness& rnd) {
  require(digits >= 0 && digits <= 62, "scramble: digit count out of range");
  require(precision_bits >= 0 && precision_bits <= 62, "scramble: precision out of range");
  if (digits <= precision_bits) {
    return scramble_value(numer >> (precision_bits - digits), digits, digits, coordinate, rnd);
  }
  return scramble_value(numer, precision_bits, digits, coordinate, rnd);
}

PointSet owen_scramble(const PointSet& ps, const ScrambleRandomness& rnd) {
  require(rnd.depth >= ps.precision_bits, "scramble: depth below input precision");
  require(rnd.depth <= 62, "scramble: depth above 62 digits");
  PointSet out;
  out.n = ps.n;
  out.s = ps.s;
  out.precision_bits = rnd.depth;
  out.numer.resize(ps.numer.size());
  for (std::size_t row = 0; row < ps.n; ++row) {
    for (int j = 0; j < ps.s; ++j) {
      out.numer[row * ps.s + j] =
          scramble_value(ps.numerator(row, j), ps.precision_bits, rnd.depth, j, rnd);
    }
  }
  return out;
}

}

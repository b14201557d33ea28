#include "plr/walsh.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace plr {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

int wal(std::uint64_t k, std::uint64_t numer, int precision_bits) {
  require(precision_bits >= 0 && precision_bits <= 62, "wal: precision out of range");
  require(precision_bits == 62 || numer < (std::uint64_t{1} << precision_bits),
          "wal: numerator exceeds precision");
  // Digit i+1 of the point pairs with digit i of k; reversing the numerator
  // aligns the two so the exponent is one popcount.
  std::uint64_t rev = 0;
  std::uint64_t a = numer;
  for (int i = 0; i < precision_bits; ++i) {
    rev = (rev << 1) | (a & 1);
    a >>= 1;
  }
  return (std::popcount(rev & k) & 1) ? -1 : 1;
}

int wal_product(std::span<const std::uint64_t> k, std::span<const std::uint64_t> numer,
                int precision_bits) {
  require(k.size() == numer.size(), "wal_product: length mismatch");
  int sign = 1;
  for (std::size_t j = 0; j < k.size(); ++j) sign *= wal(k[j], numer[j], precision_bits);
  return sign;
}

double psi(std::uint64_t k) {
  if (k == 0) return 1.0;
  return std::ldexp(1.0, -2 * std::bit_width(k));
}

double psi_product(std::span<const std::uint64_t> k) {
  double p = 1.0;
  for (std::uint64_t kj : k) p *= psi(kj);
  return p;
}

double r_coeff(std::uint64_t k, std::uint64_t l) {
  if (k == 0 && l == 0) return 1.0 / 3.0;
  if (k == l) {
    return (1.0 / 3.0) * std::ldexp(1.0, -2 * std::bit_width(k));
  }
  if (k == 0 || l == 0) {
    const std::uint64_t t = k | l;
    const int a1 = std::bit_width(t);
    const std::uint64_t t2 = t ^ (std::uint64_t{1} << (a1 - 1));
    if (t2 == 0) return std::ldexp(1.0, -(a1 + 2));
    const int a2 = std::bit_width(t2);
    if (t2 == (std::uint64_t{1} << (a2 - 1))) return -std::ldexp(1.0, -(a1 + a2 + 2));
    return 0.0;
  }
  int a1 = std::bit_width(k);
  int b1 = std::bit_width(l);
  if (a1 == b1) return 0.0;
  std::uint64_t hi = k, lo = l;
  if (a1 < b1) {
    std::swap(hi, lo);
    std::swap(a1, b1);
  }
  const std::uint64_t hi2 = hi ^ (std::uint64_t{1} << (a1 - 1));
  // Same digit count, identical below the leading digit.
  if (hi2 == (lo ^ (std::uint64_t{1} << (b1 - 1)))) return std::ldexp(1.0, -(a1 + b1 + 2));
  // Two extra leading digits on one side, identical below them.
  if (hi2 != 0) {
    const int a2 = std::bit_width(hi2);
    if ((hi2 ^ (std::uint64_t{1} << (a2 - 1))) == lo) return -std::ldexp(1.0, -(a1 + a2 + 2));
  }
  return 0.0;
}

}

#pragma once

#include <bit>
#include <cstdint>
#include <string>

namespace plr {

/// Polynomial over GF(2). Bit i of `mask` is the coefficient of x^i.
/// Degrees are capped at 62 so every intermediate of the modular
/// arithmetic below stays inside one 64-bit word.
struct Gf2Poly {
  std::uint64_t mask = 0;

  static constexpr int max_degree = 62;

  constexpr Gf2Poly() = default;
  constexpr explicit Gf2Poly(std::uint64_t m) : mask(m) {}

  static constexpr Gf2Poly zero() { return Gf2Poly{0}; }
  static constexpr Gf2Poly one() { return Gf2Poly{1}; }
  static constexpr Gf2Poly x() { return Gf2Poly{2}; }

  constexpr bool is_zero() const { return mask == 0; }

  /// Degree of the polynomial; -1 stands in for deg(0) = -infinity.
  constexpr int degree() const { return std::bit_width(mask) - 1; }

  friend constexpr Gf2Poly operator+(Gf2Poly a, Gf2Poly b) { return Gf2Poly{a.mask ^ b.mask}; }
  friend constexpr bool operator==(Gf2Poly a, Gf2Poly b) { return a.mask == b.mask; }
  friend constexpr bool operator!=(Gf2Poly a, Gf2Poly b) { return a.mask != b.mask; }
  /// Bitmask order; used for deterministic tie-breaks.
  friend constexpr bool operator<(Gf2Poly a, Gf2Poly b) { return a.mask < b.mask; }
};

/// a mod p. Throws std::invalid_argument if p = 0.
Gf2Poly poly_mod(Gf2Poly a, Gf2Poly p);

/// a * b mod p, never forming the unreduced product.
Gf2Poly mul_mod(Gf2Poly a, Gf2Poly b, Gf2Poly p);

/// a^e mod p by square and multiply.
Gf2Poly pow_mod(Gf2Poly a, std::uint64_t e, Gf2Poly p);

Gf2Poly poly_gcd(Gf2Poly a, Gf2Poly b);

/// Rabin irreducibility test. Requires deg(p) >= 1.
bool is_irreducible(Gf2Poly p);

/// Smallest irreducible polynomial of the given degree in bitmask order.
/// Requires 1 <= degree <= Gf2Poly::max_degree.
Gf2Poly find_irreducible(int degree);

/// Numerator of v_m(n(x) q(x) / p(x)): the first m Laurent coefficients
/// t_1..t_m of nq/p packed as sum_l t_l 2^(m-l). Pure integer synthetic
/// division. Requires p irreducible with deg(p) = m, deg(n) < m, deg(q) < m.
std::uint64_t laurent_truncate_vm(Gf2Poly n, Gf2Poly q, Gf2Poly p, int m);

/// A generator of the cyclic unit group of GF(2)[x]/p. Requires p
/// irreducible; verified via g^((2^m-1)/r) != 1 for every prime r | 2^m-1.
/// Returns the smallest generator in bitmask order.
Gf2Poly unit_group_generator(Gf2Poly p);

/// Hex round trip, e.g. x^4+x+1 <-> "0x13".
std::string to_hex(Gf2Poly p);
Gf2Poly poly_from_hex(const std::string& text);

}

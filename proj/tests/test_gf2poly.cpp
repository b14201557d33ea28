#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "plr/gf2poly.hpp"
#include "support/oracles.hpp"

using plr::Gf2Poly;

namespace {

// Carry-less product, no reduction.
std::uint64_t clmul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  while (b) {
    if (b & 1) r ^= a;
    a <<= 1;
    b >>= 1;
  }
  return r;
}

// Quotient of the polynomial division a / p.
std::uint64_t poly_quotient(std::uint64_t a, std::uint64_t p) {
  std::uint64_t quot = 0;
  const int dp = static_cast<int>(std::bit_width(p)) - 1;
  while (a != 0 && static_cast<int>(std::bit_width(a)) - 1 >= dp) {
    const int shift = static_cast<int>(std::bit_width(a)) - 1 - dp;
    quot |= std::uint64_t{1} << shift;
    a ^= p << shift;
  }
  return quot;
}

int mobius(int n) {
  int mu = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      mu = -mu;
    }
  }
  if (n > 1) mu = -mu;
  return mu;
}

}  // namespace

TEST_CASE("polynomial addition is coefficientwise xor") {
  const Gf2Poly a{0b111};  // x^2+x+1
  const Gf2Poly b{0b011};  // x+1
  CHECK(a + b == Gf2Poly{0b100});
  CHECK(a + Gf2Poly::zero() == a);
  CHECK(a + a == Gf2Poly::zero());
}

TEST_CASE("degree and zero sentinel") {
  CHECK(Gf2Poly::zero().degree() == -1);
  CHECK(Gf2Poly::one().degree() == 0);
  CHECK(Gf2Poly::x().degree() == 1);
  CHECK(Gf2Poly{0b10011}.degree() == 4);
}

TEST_CASE("mul_mod basics") {
  const Gf2Poly p{0b111};
  CHECK(plr::mul_mod(Gf2Poly::x(), Gf2Poly::x(), p) == Gf2Poly{0b11});
  const Gf2Poly a{0b10110};
  CHECK(plr::mul_mod(a, Gf2Poly::one(), p) == plr::poly_mod(a, p));
  CHECK(plr::mul_mod(a, Gf2Poly::zero(), p) == Gf2Poly::zero());
  CHECK_THROWS_AS(plr::poly_mod(a, Gf2Poly::zero()), std::invalid_argument);
}

TEST_CASE("mul_mod agrees with carry-less multiply plus reduction") {
  std::mt19937_64 rng(7);
  const Gf2Poly p{0x211};  // degree 9
  for (int it = 0; it < 2000; ++it) {
    const std::uint64_t a = rng() & 0x1FF;
    const std::uint64_t b = rng() & 0x1FF;
    const Gf2Poly lib = plr::mul_mod(Gf2Poly{a}, Gf2Poly{b}, p);
    const Gf2Poly ref = plr::poly_mod(Gf2Poly{clmul(a, b)}, p);
    CHECK(lib == ref);
  }
}

TEST_CASE("mul_mod associativity") {
  std::mt19937_64 rng(11);
  for (const std::uint64_t pmask : {0x7ull, 0x13ull, 0x25ull, 0x203ull}) {
    const Gf2Poly p{pmask};
    const std::uint64_t lim = (std::uint64_t{1} << p.degree()) - 1;
    for (int it = 0; it < 500; ++it) {
      const Gf2Poly a{rng() & lim}, b{rng() & lim}, c{rng() & lim};
      CHECK(plr::mul_mod(plr::mul_mod(a, b, p), c, p) ==
            plr::mul_mod(a, plr::mul_mod(b, c, p), p));
    }
  }
}

TEST_CASE("irreducibility examples") {
  CHECK(plr::is_irreducible(Gf2Poly{0b111}));     // x^2+x+1
  CHECK_FALSE(plr::is_irreducible(Gf2Poly{0b101}));  // (x+1)^2
  CHECK(plr::is_irreducible(Gf2Poly{0b10011}));   // x^4+x+1
  CHECK_THROWS_AS(plr::is_irreducible(Gf2Poly::one()), std::invalid_argument);
}

TEST_CASE("irreducibility agrees with trial division up to degree 12") {
  for (std::uint64_t mask = 2; mask < (std::uint64_t{1} << 13); ++mask) {
    CHECK(plr::is_irreducible(Gf2Poly{mask}) == oracle::is_irreducible_trial(Gf2Poly{mask}));
  }
}

TEST_CASE("irreducible counts match the necklace formula") {
  for (int m = 1; m <= 10; ++m) {
    int expected = 0;
    for (int d = 1; d <= m; ++d) {
      if (m % d == 0) expected += mobius(d) * static_cast<int>(1 << (m / d));
    }
    expected /= m;
    int found = 0;
    for (std::uint64_t mask = std::uint64_t{1} << m; mask < (std::uint64_t{2} << m); ++mask) {
      if (plr::is_irreducible(Gf2Poly{mask})) ++found;
    }
    CHECK(found == expected);
  }
}

TEST_CASE("field inverses exist for irreducible moduli") {
  for (int m = 2; m <= 8; ++m) {
    const Gf2Poly p = plr::find_irreducible(m);
    for (std::uint64_t a = 1; a < (std::uint64_t{1} << m); ++a) {
      bool found = false;
      for (std::uint64_t b = 1; b < (std::uint64_t{1} << m); ++b) {
        if (plr::mul_mod(Gf2Poly{a}, Gf2Poly{b}, p) == Gf2Poly::one()) {
          found = true;
          break;
        }
      }
      CHECK(found);
    }
  }
}

TEST_CASE("find_irreducible returns the smallest mask") {
  CHECK(plr::find_irreducible(1) == Gf2Poly{0b10});
  CHECK(plr::find_irreducible(2) == Gf2Poly{0b111});
  CHECK(plr::find_irreducible(4) == Gf2Poly{0b10011});
  for (int m = 1; m <= 10; ++m) {
    const Gf2Poly p = plr::find_irreducible(m);
    CHECK(p.degree() == m);
    CHECK(oracle::is_irreducible_trial(p));
    for (std::uint64_t mask = std::uint64_t{1} << m; mask < p.mask; ++mask) {
      CHECK_FALSE(oracle::is_irreducible_trial(Gf2Poly{mask}));
    }
  }
}

TEST_CASE("laurent truncation examples") {
  CHECK(plr::laurent_truncate_vm(Gf2Poly::zero(), Gf2Poly::one(), Gf2Poly{0b111}, 2) == 0);
  CHECK(plr::laurent_truncate_vm(Gf2Poly::x(), Gf2Poly::one(), Gf2Poly{0b111}, 2) == 3);
  CHECK(plr::laurent_truncate_vm(Gf2Poly::one(), Gf2Poly::one(), Gf2Poly{0b111}, 2) == 1);
  CHECK_THROWS_AS(plr::laurent_truncate_vm(Gf2Poly::one(), Gf2Poly::one(), Gf2Poly{0b101}, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(plr::laurent_truncate_vm(Gf2Poly{0b100}, Gf2Poly::one(), Gf2Poly{0b111}, 2),
                  std::invalid_argument);
}

TEST_CASE("laurent truncation equals one-shot long division") {
  // v_m picks digits t_1..t_m of (nq mod p)/p; equivalently the quotient of
  // (nq mod p) * x^m by p.
  for (const int m : {3, 5, 8}) {
    const Gf2Poly p = plr::find_irreducible(m);
    for (std::uint64_t q = 1; q < (std::uint64_t{1} << m); ++q) {
      for (std::uint64_t n = 0; n < (std::uint64_t{1} << m); ++n) {
        const std::uint64_t red = plr::poly_mod(Gf2Poly{clmul(n, q)}, p).mask;
        const std::uint64_t want = poly_quotient(red << m, p.mask);
        CHECK(plr::laurent_truncate_vm(Gf2Poly{n}, Gf2Poly{q}, p, m) == want);
      }
    }
  }
}

TEST_CASE("laurent truncation is a bijection in n") {
  std::mt19937_64 rng(23);
  for (int m = 1; m <= 12; ++m) {
    const Gf2Poly p = plr::find_irreducible(m);
    std::vector<std::uint64_t> qs;
    if (m <= 9) {
      for (std::uint64_t q = 1; q < (std::uint64_t{1} << m); ++q) qs.push_back(q);
    } else {
      qs = {1, (std::uint64_t{1} << m) - 1};
      for (int i = 0; i < 16; ++i) qs.push_back(1 + rng() % ((std::uint64_t{1} << m) - 1));
    }
    for (const std::uint64_t q : qs) {
      std::vector<bool> seen(std::size_t{1} << m, false);
      for (std::uint64_t n = 0; n < (std::uint64_t{1} << m); ++n) {
        const std::uint64_t v = plr::laurent_truncate_vm(Gf2Poly{n}, Gf2Poly{q}, p, m);
        REQUIRE(v < (std::uint64_t{1} << m));
        CHECK_FALSE(seen[v]);
        seen[v] = true;
      }
    }
  }
}

TEST_CASE("unit group generators") {
  CHECK(plr::unit_group_generator(Gf2Poly{0b111}) == Gf2Poly::x());
  CHECK(plr::unit_group_generator(Gf2Poly{0b10011}) == Gf2Poly::x());
  CHECK(plr::unit_group_generator(Gf2Poly::x()) == Gf2Poly::one());

  // x^4+x^3+x^2+x+1 divides x^5 - 1, so x has order 5 and cannot generate.
  const Gf2Poly p{0b11111};
  const Gf2Poly g = plr::unit_group_generator(p);
  CHECK(plr::pow_mod(Gf2Poly::x(), 5, p) == Gf2Poly::one());
  CHECK(g != Gf2Poly::x());
  CHECK(plr::pow_mod(g, 15, p) == Gf2Poly::one());
  CHECK(plr::pow_mod(g, 3, p) != Gf2Poly::one());
  CHECK(plr::pow_mod(g, 5, p) != Gf2Poly::one());
  // Smallest generator in mask order: nothing below g generates.
  for (std::uint64_t mask = 1; mask < g.mask; ++mask) {
    const bool generates = plr::pow_mod(Gf2Poly{mask}, 3, p) != Gf2Poly::one() &&
                           plr::pow_mod(Gf2Poly{mask}, 5, p) != Gf2Poly::one();
    CHECK_FALSE(generates);
  }
}

TEST_CASE("generator powers enumerate every nonzero residue") {
  for (const int m : {3, 4, 6, 10}) {
    const Gf2Poly p = plr::find_irreducible(m);
    const Gf2Poly g = plr::unit_group_generator(p);
    const std::uint64_t order = (std::uint64_t{1} << m) - 1;
    std::vector<bool> seen(std::size_t{1} << m, false);
    Gf2Poly acc = Gf2Poly::one();
    for (std::uint64_t i = 0; i < order; ++i) {
      CHECK_FALSE(seen[acc.mask]);
      seen[acc.mask] = true;
      acc = plr::mul_mod(acc, g, p);
    }
    CHECK(acc == Gf2Poly::one());
  }
}

TEST_CASE("hex round trip") {
  CHECK(plr::to_hex(Gf2Poly{0x13}) == "0x13");
  CHECK(plr::poly_from_hex("0x13") == Gf2Poly{0x13});
  CHECK(plr::poly_from_hex(plr::to_hex(Gf2Poly{0x7FD3})) == Gf2Poly{0x7FD3});
  CHECK_THROWS_AS(plr::poly_from_hex("13"), std::invalid_argument);
  CHECK_THROWS_AS(plr::poly_from_hex("0xZZ"), std::invalid_argument);
}

#include "plr/gf2poly.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "vm_internal.hpp"

namespace plr {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// --- integer factorization helpers for unit_group_generator -------------

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % n);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t n) {
  std::uint64_t r = 1 % n;
  a %= n;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, n);
    a = mulmod_u64(a, a, n);
    e >>= 1;
  }
  return r;
}

bool miller_rabin(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  // Deterministic witness set for 64-bit integers.
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 0; i < s - 1; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) { witness = false; break; }
    }
    if (witness) return false;
  }
  return true;
}

std::uint64_t pollard_rho(std::uint64_t n) {
  if ((n & 1) == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t x) { return (mulmod_u64(x, x, n) + c) % n; };
    std::uint64_t x = 2, y = 2, d = 1;
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      std::uint64_t diff = x > y ? x - y : y - x;
      if (diff == 0) { d = n; break; }
      d = std::gcd(diff, n);
    }
    if (d != n) return d;
  }
}

void factor_into(std::uint64_t n, std::vector<std::uint64_t>& primes) {
  if (n == 1) return;
  if (miller_rabin(n)) {
    primes.push_back(n);
    return;
  }
  std::uint64_t d = pollard_rho(n);
  factor_into(d, primes);
  factor_into(n / d, primes);
}

std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = 2; p * p <= n && p < 1000; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      primes.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  factor_into(n, primes);
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  return primes;
}

}  // namespace

Gf2Poly poly_mod(Gf2Poly a, Gf2Poly p) {
  require(!p.is_zero(), "poly_mod: zero modulus");
  const int dp = p.degree();
  std::uint64_t r = a.mask;
  while (static_cast<int>(std::bit_width(r)) - 1 >= dp && r != 0) {
    r ^= p.mask << (static_cast<int>(std::bit_width(r)) - 1 - dp);
  }
  return Gf2Poly{r};
}

Gf2Poly mul_mod(Gf2Poly a, Gf2Poly b, Gf2Poly p) {
  require(!p.is_zero(), "mul_mod: zero modulus");
  require(a.degree() <= Gf2Poly::max_degree && b.degree() <= Gf2Poly::max_degree &&
              p.degree() <= Gf2Poly::max_degree,
          "mul_mod: degree above cap");
  const int m = p.degree();
  std::uint64_t x = poly_mod(a, p).mask;
  std::uint64_t y = poly_mod(b, p).mask;
  std::uint64_t acc = 0;
  while (y) {
    if (y & 1) acc ^= x;
    y >>= 1;
    x <<= 1;
    if ((x >> m) & 1) x ^= p.mask;
  }
  return Gf2Poly{acc};
}

Gf2Poly pow_mod(Gf2Poly a, std::uint64_t e, Gf2Poly p) {
  require(!p.is_zero(), "pow_mod: zero modulus");
  Gf2Poly base = poly_mod(a, p);
  Gf2Poly r = poly_mod(Gf2Poly::one(), p);
  while (e) {
    if (e & 1) r = mul_mod(r, base, p);
    base = mul_mod(base, base, p);
    e >>= 1;
  }
  return r;
}

Gf2Poly poly_gcd(Gf2Poly a, Gf2Poly b) {
  while (!b.is_zero()) {
    Gf2Poly r = poly_mod(a, b);
    a = b;
    b = r;
  }
  return a;
}

bool is_irreducible(Gf2Poly p) {
  const int m = p.degree();
  require(m >= 1, "is_irreducible: degree must be at least 1");
  require(m <= Gf2Poly::max_degree, "is_irreducible: degree above cap");
  if (m == 1) return true;
  // Rabin: x^(2^m) == x mod p, and gcd(x^(2^(m/r)) - x, p) = 1 for prime r | m.
  Gf2Poly xp = Gf2Poly::x();
  std::vector<Gf2Poly> chain(static_cast<std::size_t>(m) + 1);
  chain[0] = poly_mod(Gf2Poly::x(), p);
  for (int i = 1; i <= m; ++i) chain[i] = mul_mod(chain[i - 1], chain[i - 1], p);
  if (chain[m] != poly_mod(xp, p)) return false;
  for (std::uint64_t r : distinct_prime_factors(static_cast<std::uint64_t>(m))) {
    Gf2Poly y = chain[m / r] + poly_mod(xp, p);
    if (poly_gcd(p, y).degree() != 0) return false;
  }
  return true;
}

Gf2Poly find_irreducible(int degree) {
  require(degree >= 1 && degree <= Gf2Poly::max_degree, "find_irreducible: degree out of range");
  if (degree == 1) return Gf2Poly::x();
  // For degree >= 2 an irreducible polynomial must have nonzero constant term.
  const std::uint64_t lo = std::uint64_t{1} << degree;
  for (std::uint64_t mask = lo | 1; mask < (lo << 1); mask += 2) {
    if (is_irreducible(Gf2Poly{mask})) return Gf2Poly{mask};
  }
  throw std::logic_error("find_irreducible: no irreducible polynomial found");
}

std::uint64_t laurent_truncate_vm(Gf2Poly n, Gf2Poly q, Gf2Poly p, int m) {
  require(m >= 1 && m <= Gf2Poly::max_degree, "laurent_truncate_vm: m out of range");
  require(p.degree() == m, "laurent_truncate_vm: deg(p) != m");
  require(n.degree() < m, "laurent_truncate_vm: deg(n) must be below m");
  require(q.degree() < m, "laurent_truncate_vm: deg(q) must be below m");
  require(is_irreducible(p), "laurent_truncate_vm: p is reducible");
  // The polynomial part of nq/p carries no negative powers, so only
  // (nq mod p)/p contributes to the first m Laurent digits.
  return detail::vm_of_reduced(mul_mod(n, q, p).mask, p.mask, m);
}

Gf2Poly unit_group_generator(Gf2Poly p) {
  const int m = p.degree();
  require(m >= 1 && is_irreducible(p), "unit_group_generator: p must be irreducible");
  const std::uint64_t order = (std::uint64_t{1} << m) - 1;
  if (order == 1) return Gf2Poly::one();
  const auto primes = distinct_prime_factors(order);
  for (std::uint64_t mask = 2; mask <= order; ++mask) {
    Gf2Poly g{mask};
    bool ok = true;
    for (std::uint64_t r : primes) {
      if (pow_mod(g, order / r, p) == Gf2Poly::one()) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw std::logic_error("unit_group_generator: no generator found");
}

std::string to_hex(Gf2Poly p) {
  char buf[19];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, p.mask, 16);
  (void)ec;
  return "0x" + std::string(buf, end);
}

Gf2Poly poly_from_hex(const std::string& text) {
  const bool prefixed =
      text.size() >= 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X');
  require(prefixed, "poly_from_hex: expected a 0x-prefixed hex literal");
  const std::size_t pos = 2;
  require(pos < text.size(), "poly_from_hex: empty value");
  std::uint64_t mask = 0;
  auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), mask, 16);
  require(ec == std::errc{} && ptr == text.data() + text.size(), "poly_from_hex: bad hex literal");
  require(std::bit_width(mask) - 1 <= Gf2Poly::max_degree, "poly_from_hex: degree above cap");
  return Gf2Poly{mask};
}

}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

#include "plr/discrepancy.hpp"
#include "plr/lattice.hpp"
#include "plr/walsh.hpp"
#include "plr/weights.hpp"
#include "support/oracles.hpp"

using plr::psi;
using plr::r_coeff;
using plr::wal;

namespace {

// Sum of wal_k over one dyadic block k = 2^(a-1) .. 2^a - 1, evaluated term
// by term. The closed form used by the library collapses this to a single
// digit test; the brute sum is the check.
long block_sum_brute(int a, std::uint64_t numer, int precision_bits) {
  long acc = 0;
  for (std::uint64_t k = std::uint64_t{1} << (a - 1); k < (std::uint64_t{1} << a); ++k)
    acc += wal(k, numer, precision_bits);
  return acc;
}

// Closed form of the same block sum: +-2^(a-1) when digits 1..a-1 of the
// point vanish (sign from digit a), otherwise 0.
long block_sum_closed(int a, std::uint64_t numer, int precision_bits) {
  // digit i of numer / 2^precision is bit (precision - i), zero past the end
  auto digit = [&](int i) -> int {
    if (i > precision_bits) return 0;
    return static_cast<int>((numer >> (precision_bits - i)) & 1);
  };
  for (int i = 1; i < a; ++i)
    if (digit(i) != 0) return 0;
  const long mag = 1L << (a - 1);
  return digit(a) ? -mag : mag;
}

plr::PointSet single_point(std::uint64_t numer, int precision_bits) {
  plr::PointSet ps;
  ps.n = 1;
  ps.s = 1;
  ps.precision_bits = precision_bits;
  ps.numer = {numer};
  return ps;
}

}  // namespace

TEST_CASE("wal basics") {
  // wal_0 is identically +1
  for (std::uint64_t numer : {0ull, 1ull, 5ull, 255ull}) CHECK(wal(0, numer, 8) == 1);
  // wal_1 reads the first digit: +1 on [0, 1/2), -1 on [1/2, 1)
  CHECK(wal(1, 0, 2) == 1);
  CHECK(wal(1, 1, 2) == 1);   // x = 1/4
  CHECK(wal(1, 2, 2) == -1);  // x = 1/2
  CHECK(wal(1, 3, 2) == -1);  // x = 3/4
  // wal_2 reads the second digit
  CHECK(wal(2, 1, 2) == -1);  // x = 1/4
  CHECK(wal(2, 2, 2) == 1);   // x = 1/2
  // wal_3 is the parity of the first two digits
  CHECK(wal(3, 3, 2) == 1);  // x = 3/4
  CHECK(wal(3, 1, 2) == -1);
  // digits of k past the precision pair with zero digits of x
  CHECK(wal(1u << 10, 3, 2) == 1);
  CHECK_THROWS_AS(wal(1, 4, 2), std::invalid_argument);
  CHECK_THROWS_AS(wal(1, 0, 63), std::invalid_argument);
}

TEST_CASE("wal_product multiplies per-coordinate signs") {
  const std::vector<std::uint64_t> k{1, 2, 3};
  const std::vector<std::uint64_t> x{2, 1, 3};  // 1/2, 1/4, 3/4 at precision 2
  CHECK(plr::wal_product(k, x, 2) == wal(1, 2, 2) * wal(2, 1, 2) * wal(3, 3, 2));
  const std::vector<std::uint64_t> short_x{1};
  CHECK_THROWS_AS(plr::wal_product(k, short_x, 2), std::invalid_argument);
}

TEST_CASE("wal is multiplicative in the index") {
  const int prec = 10;
  for (std::uint64_t k = 0; k < 64; ++k)
    for (std::uint64_t l = 0; l < 64; ++l)
      for (std::uint64_t numer = 0; numer < (1u << prec); numer += 7)
        CHECK(wal(k, numer, prec) * wal(l, numer, prec) == wal(k ^ l, numer, prec));
}

TEST_CASE("wal orthonormality on full dyadic grids") {
  for (int m : {1, 2, 3, 4, 6, 8}) {
    const std::uint64_t n = std::uint64_t{1} << m;
    for (std::uint64_t k = 0; k < n; ++k)
      for (std::uint64_t l = 0; l < n; ++l) {
        long acc = 0;
        for (std::uint64_t x = 0; x < n; ++x) acc += wal(k, x, m) * wal(l, x, m);
        CHECK(acc == (k == l ? static_cast<long>(n) : 0L));
      }
  }
}

TEST_CASE("psi values and partial sums") {
  CHECK(psi(0) == 1.0);
  CHECK(psi(1) == 0.25);
  CHECK(psi(2) == 1.0 / 16.0);
  CHECK(psi(3) == 1.0 / 16.0);
  CHECK(psi(4) == 1.0 / 64.0);
  CHECK(plr::psi_product(std::vector<std::uint64_t>{1, 2, 0}) == 0.25 / 16.0);

  // Sum over k = 1 .. 2^a inclusive telescopes to 1/2 - 2^-(a+1) + 4^-(a+1);
  // every partial sum is a representable dyadic, so plain summation is exact.
  auto partial = [](int a) {
    double acc = 0.0;
    for (std::uint64_t k = 1; k <= (std::uint64_t{1} << a); ++k) acc += psi(k);
    return acc;
  };
  const double s20 = partial(20);
  CHECK(s20 == 0.5 - std::ldexp(1.0, -21) + std::ldexp(1.0, -42));
  CHECK(std::abs(s20 - 0.5) < 5e-7);
  const double s22 = partial(22);
  CHECK(s22 == 0.5 - std::ldexp(1.0, -23) + std::ldexp(1.0, -46));
  CHECK(std::abs(s22 - 0.5) < 2e-7);
}

TEST_CASE("r_coeff pinned values and symmetry") {
  CHECK(r_coeff(0, 0) == 1.0 / 3.0);
  CHECK(r_coeff(1, 1) == 1.0 / 12.0);
  CHECK(r_coeff(2, 2) == 1.0 / 48.0);
  CHECK(r_coeff(0, 1) == 1.0 / 8.0);
  CHECK(r_coeff(0, 2) == 1.0 / 16.0);
  CHECK(r_coeff(0, 3) == -1.0 / 32.0);
  CHECK(r_coeff(2, 1) == 1.0 / 32.0);
  CHECK(r_coeff(7, 1) == -1.0 / 128.0);
  CHECK(r_coeff(4, 1) == 1.0 / 64.0);
  CHECK(r_coeff(2, 3) == 0.0);  // same digit count, different index
  CHECK(r_coeff(5, 1) == 0.0);  // disagree below the leading digits
  for (std::uint64_t k = 0; k <= 64; ++k)
    for (std::uint64_t l = 0; l <= 64; ++l) CHECK(r_coeff(k, l) == r_coeff(l, k));
}

TEST_CASE("r_coeff equals the direct kernel integral") {
  auto agree = [](std::uint64_t k, std::uint64_t l) {
    const double direct = oracle::r_kernel_integral(k, l);
    const double table = r_coeff(k, l);
    // the quadrature sums cancel imperfectly, so a zero table entry shows up
    // as ~1e-18 residue in the direct integral
    if (table == 0.0)
      CHECK(std::abs(direct) < 1e-15);
    else
      CHECK(table == doctest::Approx(direct).epsilon(1e-12).scale(0.0));
  };
  for (std::uint64_t k = 0; k <= 32; ++k)
    for (std::uint64_t l = 0; l <= k; ++l) agree(k, l);
  const std::pair<std::uint64_t, std::uint64_t> larger[] = {
      {64, 7}, {100, 37}, {255, 254}, {256, 1}, {129, 128}};
  for (auto [k, l] : larger) agree(k, l);
}

TEST_CASE("block sums of wal collapse to a digit test") {
  const int prec = 10;
  for (int a = 1; a <= 12; ++a)
    for (std::uint64_t numer = 0; numer < (1u << prec); numer += 11)
      CHECK(block_sum_brute(a, numer, prec) == block_sum_closed(a, numer, prec));
  CHECK(block_sum_brute(3, 0, 10) == 4);
  CHECK(block_sum_brute(3, 1u << 7, 10) == -4);  // digit 3 set
  CHECK(block_sum_brute(3, 1u << 9, 10) == 0);   // digit 1 set
}

TEST_CASE("psi-weighted block sums reproduce phi_tilde") {
  // sum_a 4^-a * blocksum(a) telescopes to (1 - 3*2^-c)/2 with c the leading
  // digit position, which is phi_tilde exactly; at zero the cut at a = 30
  // leaves a 2^-31 gap to phi_tilde(0) = 1/2.
  const int prec = 12;
  for (std::uint64_t numer = 1; numer < (1u << prec); numer += 5) {
    double acc = 0.0;
    for (int a = 1; a <= 30; ++a)
      acc += std::ldexp(1.0, -2 * a) * static_cast<double>(block_sum_closed(a, numer, prec));
    CHECK(acc == plr::phi_tilde(numer, prec));
  }
  double at_zero = 0.0;
  for (int a = 1; a <= 30; ++a)
    at_zero += std::ldexp(1.0, -2 * a) * static_cast<double>(block_sum_closed(a, 0, prec));
  CHECK(at_zero == 0.5 - std::ldexp(1.0, -31));
  CHECK(std::abs(at_zero - plr::phi_tilde(0, prec)) < 1e-9);
}

TEST_CASE("absolute coefficient mass approaches its closed totals from below") {
  // Total |r| mass is 3/2 over the full lattice of index pairs and 2/3 along
  // a single row; the truncation error bounds in the series oracle rest on
  // those two constants.
  auto box_mass = [](std::uint64_t kmax) {
    double acc = 0.0;
    for (std::uint64_t k = 0; k <= kmax; ++k)
      for (std::uint64_t l = 0; l <= kmax; ++l) acc += std::abs(r_coeff(k, l));
    return acc;
  };
  auto col_mass = [](std::uint64_t kmax) {
    double acc = 0.0;
    for (std::uint64_t k = 0; k <= kmax; ++k) acc += std::abs(r_coeff(k, 0));
    return acc;
  };
  double prev_box = 0.0, prev_col = 0.0;
  for (std::uint64_t kmax : {16u, 64u, 256u}) {
    const double b = box_mass(kmax);
    const double c = col_mass(kmax);
    CHECK(b > prev_box);
    CHECK(c > prev_col);
    CHECK(b < 1.5);
    CHECK(c < 2.0 / 3.0);
    prev_box = b;
    prev_col = c;
  }
  CHECK(1.5 - prev_box < 0.05);
  CHECK(2.0 / 3.0 - prev_col < 0.01);
}

TEST_CASE("series oracle converges to the closed-form discrepancy") {
  const auto w1 = plr::WeightScheme::preset("unweighted", 1);
  const auto ps = single_point(0, 1);
  const double exact = plr::warnock_l2sq(ps, w1);
  CHECK(exact == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  const double approx = oracle::l2_series_oracle(ps, w1, 256);
  const double bound = oracle::l2_series_tail_bound(w1, 256);
  CHECK(std::abs(approx - exact) <= bound);
  CHECK(std::abs(approx - exact) < 5e-3);

  // truncation error shrinks (weakly) as the cut grows
  const auto p5 = plr::poly_from_hex("0x25");
  const auto rule = plr::PolyLatticeRule::create(
      p5, {plr::Gf2Poly::one(), plr::poly_from_hex("0xd")});
  const auto pts = plr::generate_points(rule);
  const auto geo = plr::WeightScheme::preset("geo09", 2);
  const double closed = plr::warnock_l2sq(pts, geo);
  double prev = 1e300;
  for (std::uint64_t kmax : {4u, 16u, 64u, 256u}) {
    const double err = std::abs(oracle::l2_series_oracle(pts, geo, kmax) - closed);
    CHECK(err <= oracle::l2_series_tail_bound(geo, kmax));
    CHECK(err <= prev + 1e-15);
    prev = err;
  }

  plr::WeightScheme zero = plr::WeightScheme::product({0.0});
  CHECK(oracle::l2_series_oracle(ps, zero, 64) == 0.0);
}

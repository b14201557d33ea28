#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "plr/gf2poly.hpp"

namespace plr {

/// Rank-1 polynomial lattice rule: modulus p (irreducible, deg p = m) and
/// generating vector q with deg(q_j) < m, q_j != 0. The rule has 2^m points
/// x_n = (v_m(n q_1 / p), ..., v_m(n q_s / p)) for n = 0..2^m-1.
struct PolyLatticeRule {
  Gf2Poly p;
  std::vector<Gf2Poly> q;
  int m = 0;
  int s = 0;

  static PolyLatticeRule create(Gf2Poly p, std::vector<Gf2Poly> q);
};

/// Points with dyadic coordinates numer / 2^precision_bits, row-major.
struct PointSet {
  std::size_t n = 0;
  int s = 0;
  int precision_bits = 0;
  std::vector<std::uint64_t> numer;

  std::uint64_t numerator(std::size_t row, int j) const {
    return numer[row * static_cast<std::size_t>(s) + static_cast<std::size_t>(j)];
  }
  double value(std::size_t row, int j) const {
    return std::ldexp(static_cast<double>(numerator(row, j)), -precision_bits);
  }
};

/// Random access to single rows without materializing the full set.
class PointGenerator {
 public:
  explicit PointGenerator(const PolyLatticeRule& rule);
  /// Fills out[0..s-1] with the numerators of point n.
  void row(std::uint64_t n, std::span<std::uint64_t> out) const;
  int m() const { return m_; }
  int s() const { return s_; }
  /// Numerator of v_m((x^i q_j mod p) / p); the point map is GF(2)-linear
  /// in the digits of n with these columns as images.
  std::uint64_t basis(int j, int i) const { return basis_[static_cast<std::size_t>(j) * m_ + i]; }

 private:
  int m_;
  int s_;
  // basis_[j*m + i] = numerator of v_m((x^i q_j mod p) / p); the point map
  // is GF(2)-linear in the digits of n.
  std::vector<std::uint64_t> basis_;
};

/// All 2^m points in row order n = 0..2^m-1. Guarded against oversized
/// materialization; use PointGenerator for larger m.
PointSet generate_points(const PolyLatticeRule& rule);

/// Dual lattice membership of an integer vector k: truncating each k_j to its
/// m low digits as a polynomial, sum_j tr_m(k_j) q_j == 0 mod p.
bool in_dual_lattice(std::span<const std::uint64_t> k, const PolyLatticeRule& rule);

}

#include "plr/lattice.hpp"

#include <bit>
#include <stdexcept>

#include "vm_internal.hpp"

namespace plr {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

PolyLatticeRule PolyLatticeRule::create(Gf2Poly p, std::vector<Gf2Poly> q) {
  PolyLatticeRule r;
  r.m = p.degree();
  require(r.m >= 1 && r.m <= Gf2Poly::max_degree, "rule: deg(p) out of range");
  require(is_irreducible(p), "rule: p is reducible");
  require(!q.empty(), "rule: empty generating vector");
  for (const Gf2Poly& qj : q) {
    require(!qj.is_zero(), "rule: zero component in generating vector");
    require(qj.degree() < r.m, "rule: deg(q_j) must be below m");
  }
  r.p = p;
  r.q = std::move(q);
  r.s = static_cast<int>(r.q.size());
  return r;
}

PointGenerator::PointGenerator(const PolyLatticeRule& rule) : m_(rule.m), s_(rule.s) {
  basis_.resize(static_cast<std::size_t>(s_) * m_);
  for (int j = 0; j < s_; ++j) {
    for (int i = 0; i < m_; ++i) {
      const Gf2Poly w = mul_mod(Gf2Poly{std::uint64_t{1} << i}, rule.q[j], rule.p);
      basis_[static_cast<std::size_t>(j) * m_ + i] = detail::vm_of_reduced(w.mask, rule.p.mask, m_);
    }
  }
}

void PointGenerator::row(std::uint64_t n, std::span<std::uint64_t> out) const {
  require(n < (std::uint64_t{1} << m_), "points: row index out of range");
  require(out.size() >= static_cast<std::size_t>(s_), "points: output span too small");
  for (int j = 0; j < s_; ++j) {
    std::uint64_t x = 0;
    const std::uint64_t* basis = basis_.data() + static_cast<std::size_t>(j) * m_;
    for (std::uint64_t bits = n; bits; bits &= bits - 1) {
      x ^= basis[std::countr_zero(bits)];
    }
    out[j] = x;
  }
}

PointSet generate_points(const PolyLatticeRule& rule) {
  const std::uint64_t count = std::uint64_t{1} << rule.m;
  require(count * static_cast<std::uint64_t>(rule.s) <= (std::uint64_t{1} << 31),
          "points: set too large to materialize, use PointGenerator");
  PointGenerator gen(rule);
  PointSet ps;
  ps.n = count;
  ps.s = rule.s;
  ps.precision_bits = rule.m;
  ps.numer.resize(count * rule.s);
  // x_{n xor n'} = x_n xor x_{n'} digitwise, so row n extends row
  // n & (n-1) by one basis column.
  const int s = rule.s;
  for (int j = 0; j < s; ++j) ps.numer[j] = 0;
  for (std::uint64_t n = 1; n < count; ++n) {
    const std::uint64_t prev = n & (n - 1);
    const int i = std::countr_zero(n);
    for (int j = 0; j < s; ++j) {
      ps.numer[n * s + j] = ps.numer[prev * s + j] ^ gen.basis(j, i);
    }
  }
  return ps;
}

bool in_dual_lattice(std::span<const std::uint64_t> k, const PolyLatticeRule& rule) {
  require(k.size() == static_cast<std::size_t>(rule.s), "dual: k has wrong dimension");
  const std::uint64_t low = (std::uint64_t{1} << rule.m) - 1;
  std::uint64_t acc = 0;
  for (int j = 0; j < rule.s; ++j) {
    acc ^= mul_mod(Gf2Poly{k[j] & low}, rule.q[j], rule.p).mask;
  }
  return acc == 0;
}

}

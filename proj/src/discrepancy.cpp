#include "plr/discrepancy.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "plr/scramble.hpp"
#include "kahan.hpp"
#include "parallel.hpp"

namespace plr {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

constexpr std::size_t pair_block_rows = 256;

std::vector<double> to_doubles(const PointSet& ps) {
  std::vector<double> x(ps.numer.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = std::ldexp(static_cast<double>(ps.numer[i]), -ps.precision_bits);
  }
  return x;
}

// ---- product-weight Warnock path ---------------------------------------

double warnock_product(const PointSet& ps, const std::vector<double>& g) {
  const std::size_t n = ps.n;
  const int s = ps.s;
  const std::vector<double> x = to_doubles(ps);

  double t1 = 1.0;
  for (double gj : g) t1 *= 1.0 + gj / 3.0;
  t1 -= 1.0;

  Kahan sum2;
  for (std::size_t i = 0; i < n; ++i) {
    double prod = 1.0;
    for (int j = 0; j < s; ++j) {
      const double xi = x[i * s + j];
      prod *= 1.0 + g[j] * (1.0 - xi * xi) * 0.5;
    }
    sum2.add(prod - 1.0);
  }

  const std::size_t nblocks = (n + pair_block_rows - 1) / pair_block_rows;
  const std::size_t npairs = nblocks * (nblocks + 1) / 2;
  std::vector<double> partial(npairs, 0.0);
  parallel_for_blocks(npairs, [&](std::size_t pair_id) {
    // pair_id -> (bi <= bj) in row-major upper-triangular order.
    std::size_t bi = 0, rest = pair_id;
    while (rest >= nblocks - bi) {
      rest -= nblocks - bi;
      ++bi;
    }
    const std::size_t bj = bi + rest;
    const std::size_t i0 = bi * pair_block_rows, i1 = std::min(n, i0 + pair_block_rows);
    const std::size_t j0 = bj * pair_block_rows, j1 = std::min(n, j0 + pair_block_rows);
    Kahan acc;
    for (std::size_t i = i0; i < i1; ++i) {
      const double* xi = x.data() + i * s;
      const std::size_t jstart = (bi == bj) ? i : j0;
      for (std::size_t jrow = jstart; jrow < j1; ++jrow) {
        const double* xj = x.data() + jrow * s;
        double prod = 1.0;
        for (int c = 0; c < s; ++c) {
          prod *= 1.0 + g[c] * (1.0 - std::max(xi[c], xj[c]));
        }
        acc.add((jrow == i ? 1.0 : 2.0) * (prod - 1.0));
      }
    }
    partial[pair_id] = acc.value();
  });
  Kahan sum3;
  for (double v : partial) sum3.add(v);

  const double dn = static_cast<double>(n);
  return t1 - 2.0 / dn * sum2.value() + sum3.value() / (dn * dn);
}

// ---- general-weight Warnock path ----------------------------------------

// Weighted subset sum: sum over nonempty u of gamma_u * prod_{j in u} h_j,
// with prod values built by peeling the lowest set bit.
double subset_weighted_sum(const std::vector<double>& gamma_by_mask, const double* h, int s,
                           std::vector<double>& scratch) {
  const std::size_t nmask = std::size_t{1} << s;
  scratch[0] = 1.0;
  double total = 0.0;
  for (std::size_t mask = 1; mask < nmask; ++mask) {
    const double prod = scratch[mask & (mask - 1)] * h[std::countr_zero(mask)];
    scratch[mask] = prod;
    total += gamma_by_mask[mask] * prod;
  }
  return total;
}

double warnock_general(const PointSet& ps, const WeightScheme& w) {
  const std::size_t n = ps.n;
  const int s = ps.s;
  require(s <= WeightScheme::max_general_dimension, "warnock: dimension above general cap");
  const std::vector<double> x = to_doubles(ps);
  const std::vector<double> gam = w.gamma_table();

  double t1 = 0.0;
  {
    std::vector<double> h(static_cast<std::size_t>(s), 1.0 / 3.0);
    std::vector<double> scratch(std::size_t{1} << s);
    t1 = subset_weighted_sum(gam, h.data(), s, scratch);
  }

  Kahan sum2;
  {
    std::vector<double> h(static_cast<std::size_t>(s));
    std::vector<double> scratch(std::size_t{1} << s);
    for (std::size_t i = 0; i < n; ++i) {
      for (int j = 0; j < s; ++j) {
        const double xi = x[i * s + j];
        h[j] = (1.0 - xi * xi) * 0.5;
      }
      sum2.add(subset_weighted_sum(gam, h.data(), s, scratch));
    }
  }

  const std::size_t nblocks = (n + pair_block_rows - 1) / pair_block_rows;
  const std::size_t npairs = nblocks * (nblocks + 1) / 2;
  std::vector<double> partial(npairs, 0.0);
  parallel_for_blocks(npairs, [&](std::size_t pair_id) {
    std::size_t bi = 0, rest = pair_id;
    while (rest >= nblocks - bi) {
      rest -= nblocks - bi;
      ++bi;
    }
    const std::size_t bj = bi + rest;
    const std::size_t i0 = bi * pair_block_rows, i1 = std::min(n, i0 + pair_block_rows);
    const std::size_t j0 = bj * pair_block_rows, j1 = std::min(n, j0 + pair_block_rows);
    std::vector<double> h(static_cast<std::size_t>(s));
    std::vector<double> scratch(std::size_t{1} << s);
    Kahan acc;
    for (std::size_t i = i0; i < i1; ++i) {
      const double* xi = x.data() + i * s;
      const std::size_t jstart = (bi == bj) ? i : j0;
      for (std::size_t jrow = jstart; jrow < j1; ++jrow) {
        const double* xj = x.data() + jrow * s;
        for (int c = 0; c < s; ++c) h[c] = 1.0 - std::max(xi[c], xj[c]);
        acc.add((jrow == i ? 1.0 : 2.0) * subset_weighted_sum(gam, h.data(), s, scratch));
      }
    }
    partial[pair_id] = acc.value();
  });
  Kahan sum3;
  for (double v : partial) sum3.add(v);

  const double dn = static_cast<double>(n);
  return t1 - 2.0 / dn * sum2.value() + sum3.value() / (dn * dn);
}

}  // namespace

double phi(std::uint64_t numer, int precision_bits) {
  require(precision_bits >= 0 && precision_bits <= 62, "phi: precision out of range");
  require(precision_bits == 62 || numer < (std::uint64_t{1} << precision_bits),
          "phi: numerator exceeds precision");
  if (numer == 0) return 0.5;
  const int e = std::bit_width(numer) - 1 - precision_bits;
  return 0.5 - std::ldexp(1.0, e - 1);
}

double phi_tilde(std::uint64_t numer, int precision_bits) {
  require(precision_bits >= 0 && precision_bits <= 62, "phi_tilde: precision out of range");
  require(precision_bits == 62 || numer < (std::uint64_t{1} << precision_bits),
          "phi_tilde: numerator exceeds precision");
  if (numer == 0) return 0.5;
  const int e = std::bit_width(numer) - 1 - precision_bits;
  return 0.5 - 3.0 * std::ldexp(1.0, e - 1);
}

double warnock_l2sq(const PointSet& ps, const WeightScheme& w) {
  require(ps.n >= 1, "warnock: empty point set");
  require(ps.s == w.dimension(), "warnock: dimension mismatch");
  if (w.kind() == WeightKind::product) return warnock_product(ps, w.product_gammas());
  return warnock_general(ps, w);
}

namespace {

// Shared accumulation core so PointSet-backed and rule-streamed evaluation
// produce bit-identical results: identical per-row j order, identical n
// order, identical compensation.
template <typename RowFiller>
std::vector<double> prefixes_core(std::size_t n, int s, int precision_bits,
                                  const std::vector<double>& gammas, RowFiller&& fill) {
  std::vector<std::uint64_t> row(static_cast<std::size_t>(s));
  // tau = 1: exact dyadic path. phi_tilde values and all partial sums are
  // dyadics with denominator 2^(precision+1), so plain summation is exact.
  double sum1 = 0.0;
  std::vector<Kahan> acc(static_cast<std::size_t>(s));
  for (std::size_t i = 0; i < n; ++i) {
    fill(i, row);
    sum1 += phi_tilde(row[0], precision_bits);
    if (s >= 2) {
      double prod = 1.0;
      for (int j = 0; j < s; ++j) {
        prod *= 1.0 + gammas[j] * phi(row[j], precision_bits);
        acc[j].add(prod);
      }
    }
  }
  std::vector<double> out(static_cast<std::size_t>(s));
  out[0] = (gammas[0] / 3.0) * (sum1 / static_cast<double>(n));
  double base = 1.0 + gammas[0] / 3.0;
  for (int j = 1; j < s; ++j) {
    base *= 1.0 + gammas[j] / 3.0;
    out[j] = acc[j].value() / static_cast<double>(n) - base;
  }
  return out;
}

template <typename RowFiller>
double general_criterion_core(std::size_t n, int s, int precision_bits, const WeightScheme& w,
                              RowFiller&& fill) {
  const std::vector<double>& tilde = w.gamma_tilde_table();
  std::vector<std::uint64_t> row(static_cast<std::size_t>(s));
  std::vector<double> h(static_cast<std::size_t>(s));
  std::vector<double> scratch(std::size_t{1} << s);
  Kahan acc;
  for (std::size_t i = 0; i < n; ++i) {
    fill(i, row);
    for (int j = 0; j < s; ++j) h[j] = phi_tilde(row[j], precision_bits);
    acc.add(subset_weighted_sum(tilde, h.data(), s, scratch));
  }
  return acc.value() / static_cast<double>(n);
}

}  // namespace

std::vector<double> mean_square_prefixes(const PointSet& ps, const std::vector<double>& gammas) {
  require(ps.n >= 1, "criterion: empty point set");
  require(gammas.size() == static_cast<std::size_t>(ps.s), "criterion: dimension mismatch");
  return prefixes_core(ps.n, ps.s, ps.precision_bits, gammas,
                       [&](std::size_t i, std::vector<std::uint64_t>& row) {
                         const std::uint64_t* src = ps.numer.data() + i * ps.s;
                         std::copy(src, src + ps.s, row.begin());
                       });
}

std::vector<double> mean_square_prefixes(const PolyLatticeRule& rule,
                                         const std::vector<double>& gammas) {
  require(gammas.size() == static_cast<std::size_t>(rule.s), "criterion: dimension mismatch");
  PointGenerator gen(rule);
  return prefixes_core(std::size_t{1} << rule.m, rule.s, rule.m, gammas,
                       [&](std::size_t i, std::vector<std::uint64_t>& row) {
                         gen.row(i, row);
                       });
}

double mean_square_criterion(const PointSet& ps, const WeightScheme& w) {
  require(ps.n >= 1, "criterion: empty point set");
  require(ps.s == w.dimension(), "criterion: dimension mismatch");
  if (w.kind() == WeightKind::product) {
    return mean_square_prefixes(ps, w.product_gammas()).back();
  }
  return general_criterion_core(ps.n, ps.s, ps.precision_bits, w,
                                [&](std::size_t i, std::vector<std::uint64_t>& row) {
                                  const std::uint64_t* src = ps.numer.data() + i * ps.s;
                                  std::copy(src, src + ps.s, row.begin());
                                });
}

double mean_square_criterion(const PolyLatticeRule& rule, const WeightScheme& w) {
  require(rule.s == w.dimension(), "criterion: dimension mismatch");
  if (w.kind() == WeightKind::product) {
    return mean_square_prefixes(rule, w.product_gammas()).back();
  }
  PointGenerator gen(rule);
  return general_criterion_core(std::size_t{1} << rule.m, rule.s, rule.m, w,
                                [&](std::size_t i, std::vector<std::uint64_t>& row) {
                                  gen.row(i, row);
                                });
}

McEstimate mc_mean_square_estimate(const PointSet& ps, const WeightScheme& w,
                                   std::size_t replicates, std::uint64_t seed, int depth,
                                   bool identity) {
  require(replicates >= 2, "mc: need at least two replicates");
  std::vector<double> values(replicates, 0.0);
  parallel_for_blocks(replicates, [&](std::size_t r) {
    ScrambleRandomness rnd;
    rnd.identity = identity;
    rnd.depth = depth;
    rnd.seed = seed ^ (0x9e3779b97f4a7c15ull * (static_cast<std::uint64_t>(r) + 1));
    values[r] = warnock_l2sq(owen_scramble(ps, rnd), w);
  });
  Kahan total;
  for (double v : values) total.add(v);
  const double mean = total.value() / static_cast<double>(replicates);
  Kahan var;
  for (double v : values) var.add((v - mean) * (v - mean));
  const double se = std::sqrt(var.value() / (static_cast<double>(replicates) *
                                             static_cast<double>(replicates - 1)));
  return McEstimate{mean, se, replicates};
}

}

#pragma once

#include <cstdint>
#include <span>

namespace plr {

/// Walsh function wal_k at the dyadic point numer / 2^precision_bits:
/// (-1)^(sum_i x_{i+1} kappa_i) with x_i the base-2 digits of the point and
/// kappa_i the digits of k. Returns +1 or -1.
int wal(std::uint64_t k, std::uint64_t numer, int precision_bits);

/// Product over coordinates of wal_{k[j]} at row coordinates.
int wal_product(std::span<const std::uint64_t> k, std::span<const std::uint64_t> numer,
                int precision_bits);

/// psi(0) = 1, psi(k) = 4^-(floor(log2 k) + 1) for k >= 1.
double psi(std::uint64_t k);

/// Product of psi over a vector index.
double psi_product(std::span<const std::uint64_t> k);

/// Walsh coefficient r(k, l) of the kernel 1 - max(x, y):
/// r(k, l) = integral of (1 - max(x,y)) wal_k(x) wal_l(y) dx dy.
/// Evaluated by the closed seven-case digit table.
double r_coeff(std::uint64_t k, std::uint64_t l);

}

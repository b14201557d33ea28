#pragma once

#include <cstdint>

#include "plr/gf2poly.hpp"
#include "plr/lattice.hpp"
#include "plr/weights.hpp"

// Independent reference implementations used only by the test suites. Each
// one recomputes a library quantity by a different route (direct integration,
// exhaustive enumeration, series truncation) so agreement is meaningful.
namespace oracle {

/// Weighted squared L2 discrepancy by direct piecewise integration: for each
/// weighted subset u, the local discrepancy is constant-minus-volume on every
/// cell of the grid spanned by the point coordinates, so the integral of its
/// square has a closed form per cell. Cost is O((N+2)^|u|) cells per subset;
/// guarded to N <= 128, s <= 4.
double l2sq_bruteforce(const plr::PointSet& ps, const plr::WeightScheme& w);

/// Integral of wal_k(x) wal_l(y) (1 - max(x, y)) over the unit square,
/// integrating 1 - max exactly over every cell of the dyadic grid on which
/// both Walsh factors are constant.
double r_kernel_integral(std::uint64_t k, std::uint64_t l);

/// Truncated double Walsh series of the squared weighted L2 discrepancy:
/// every kernel factor 1 - max is replaced by its Walsh expansion cut to
/// indices 0..k_max per component. Converges to warnock_l2sq as k_max grows.
/// Guarded to s <= 3, N <= 64, k_max <= 256.
double l2_series_oracle(const plr::PointSet& ps, const plr::WeightScheme& w,
                        std::uint64_t k_max);

/// Rigorous bound on |warnock_l2sq - l2_series_oracle| from the absolute
/// Walsh-coefficient mass outside the truncation box (total mass is exactly
/// 3/2 per factor, 2/3 per single-argument factor).
double l2_series_tail_bound(const plr::WeightScheme& w, std::uint64_t k_max);

/// Trial-division irreducibility test, no library calls.
bool is_irreducible_trial(plr::Gf2Poly p);

/// Mean square criterion evaluated from the dual side: sum over nonempty
/// projections v of gamma_tilde(v) times the psi mass of dual vectors with
/// components in [1, 2^K). Enumerates residue classes mod 2^m, so the cost
/// is O(2^(m |v|)) per projection.
double dual_space_criterion(const plr::PolyLatticeRule& rule, const plr::WeightScheme& w,
                            int K);

/// Bound on |mean_square_criterion - dual_space_criterion(K)| from the
/// geometric psi tail beyond 2^K.
double dual_space_tail_bound(const plr::WeightScheme& w, int K);

}

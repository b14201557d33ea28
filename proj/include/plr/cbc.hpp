#pragma once

#include <optional>
#include <span>
#include <vector>

#include "plr/gf2poly.hpp"
#include "plr/lattice.hpp"
#include "plr/weights.hpp"

namespace plr {

enum class CbcMode { naive, fast, automatic };

struct CbcResult {
  PolyLatticeRule rule;
  /// Criterion value after each step: entry tau-1 is B of the tau-dimensional
  /// prefix rule; product schemes use the tau-truncated weights, general
  /// schemes the full scheme's subset weights restricted to the first tau
  /// coordinates. The last entry matches mean_square_criterion of the rule
  /// bit for bit.
  std::vector<double> criterion_by_dim;
};

/// Component-by-component construction for product weights, extensible in
/// dimension: q_1 = 1, then each q_tau minimizes the prefix criterion with
/// the tau-truncated weights. The fast sweep evaluates all candidate scores
/// of one step as a single cyclic convolution of length 2^m - 1 over the
/// unit-group generator reindexing; candidates within the FFT error margin
/// of the minimum are rescored with the naive path's compensated scorer, so
/// both modes select identical vectors. Ties go to the smallest candidate
/// bitmask within a relative 1e-14 score band. automatic = naive for
/// m <= 10, fast above.
CbcResult cbc_construct_product(int m, int s, const std::vector<double>& gammas,
                                std::optional<Gf2Poly> p = std::nullopt,
                                CbcMode mode = CbcMode::automatic);

/// CBC for a general weight scheme (dimension <= 12, m <= 20; per-point cost
/// grows as 2^s), naive sweep only. Not extensible: the step criterion uses
/// gamma_tilde of the full scheme.
CbcResult cbc_construct_general(int m, const WeightScheme& w,
                                std::optional<Gf2Poly> p = std::nullopt);

/// Criterion value of ((prefix, q)) for every candidate q in R_m, indexed by
/// candidate bitmask minus one. prefix holds the first tau-1 components.
/// Diagnostic surface for re-verifying each construction step.
std::vector<double> step_criteria_product(int m, Gf2Poly p, const std::vector<double>& gammas,
                                          std::span<const Gf2Poly> prefix);
std::vector<double> step_criteria_general(int m, Gf2Poly p, const WeightScheme& w,
                                          std::span<const Gf2Poly> prefix);

/// Upper bound on the constructed criterion after tau steps:
///   (2^m - 1)^(-1/lambda) * [sum over nonempty v of gamma_tilde_v^lambda
///                            (2^(2 lambda) - 2)^(-|v|)]^(1/lambda)
/// for lambda in (1/2, 1]. Product schemes use the closed product form of
/// the subset sum; general schemes enumerate subsets of I_tau.
double theorem_bound(const WeightScheme& w, int tau, int m, double lambda);

/// The dimension-tau ratio whose supremum over tau decides strong
/// tractability: bound numerator (without the (2^m-1) factor) over the sum
/// of gamma_u / 3^|u|.
double tractability_ratio(const WeightScheme& w, int tau, double lambda);

/// tractability_ratio for tau = 1..s_max.
std::vector<double> tractability_profile(const WeightScheme& w, int s_max, double lambda);

/// Global minimizer of the criterion over all generating vectors with
/// q_1 = 1, by full enumeration. Requires (2^m - 1)^s <= 10^7. Ties go to
/// the lexicographically smallest vector in bitmask order.
CbcResult exhaustive_best(int m, const WeightScheme& w,
                          std::optional<Gf2Poly> p = std::nullopt);

}

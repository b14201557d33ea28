#pragma once

#include <cstdint>
#include <vector>

#include "plr/lattice.hpp"
#include "plr/weights.hpp"

namespace plr {

/// phi(x) = (1 - 2^floor(log2 x)) / 2 with phi(0) = 1/2; exact dyadic
/// arithmetic on the numerator (floor(log2) = bit length - 1 - precision).
double phi(std::uint64_t numer, int precision_bits);

/// phi_tilde(x) = (1 - 3 * 2^floor(log2 x)) / 2 with phi_tilde(0) = 1/2.
double phi_tilde(std::uint64_t numer, int precision_bits);

/// Weighted squared L2 discrepancy of the point set, summed in closed form
/// over point pairs:
///   sum_u gamma_u [ 3^-|u| - (2/N) sum_n prod_{j in u} (1-x^2)/2
///                  + (1/N^2) sum_{n,n'} prod_{j in u} (1-max(x,x')) ].
/// Product schemes collapse the subset sum into per-point products; general
/// schemes enumerate subsets (dimension <= 20).
double warnock_l2sq(const PointSet& ps, const WeightScheme& w);

/// Mean square weighted L2 discrepancy over all scrambles, evaluated in
/// closed form. Product schemes:
///   B = -prod_j (1 + gamma_j/3) + (1/N) sum_n prod_j (1 + gamma_j phi).
/// General schemes: per point, sum over nonempty subsets of gamma_tilde
/// times the phi_tilde product.
double mean_square_criterion(const PointSet& ps, const WeightScheme& w);

/// Product-scheme criterion for every coordinate prefix tau = 1..s in one
/// pass. The tau = 1 value is evaluated in the cancellation-free form
/// (gamma_1/3) * mean(phi_tilde), which is exact for m <= 26 because every
/// partial sum of phi_tilde values is a representable dyadic.
std::vector<double> mean_square_prefixes(const PointSet& ps, const std::vector<double>& gammas);

/// Streaming variants that walk the rule's points row by row without
/// materializing them; same accumulation order as the PointSet overloads,
/// so results are bit-identical for equal points.
std::vector<double> mean_square_prefixes(const PolyLatticeRule& rule,
                                         const std::vector<double>& gammas);
double mean_square_criterion(const PolyLatticeRule& rule, const WeightScheme& w);

struct McEstimate {
  double mean = 0.0;
  double stderr_of_mean = 0.0;
  std::size_t replicates = 0;
};

/// Monte Carlo check of the closed form: scrambles the points `replicates`
/// times (depth digits, counter-based randomness derived from seed) and
/// averages warnock_l2sq over the replicates. identity = true forces the
/// all-zero randomness in every replicate.
McEstimate mc_mean_square_estimate(const PointSet& ps, const WeightScheme& w,
                                   std::size_t replicates, std::uint64_t seed, int depth = 53,
                                   bool identity = false);

}

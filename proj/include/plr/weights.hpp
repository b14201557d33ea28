#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace plr {

enum class WeightKind { product, general };

/// Nonnegative weights gamma_u over coordinate subsets u of {1..s}.
/// Subsets are bitmasks: bit j-1 set means coordinate j is in u.
/// gamma of the empty set is fixed to 1 by convention.
class WeightScheme {
 public:
  static constexpr int max_general_dimension = 20;
  static constexpr int max_dimension = 1 << 10;

  static WeightScheme product(std::vector<double> gammas);
  /// by_mask has size 2^s; entry 0 is ignored.
  static WeightScheme general(int s, std::vector<double> by_mask);
  /// entries are (1-based coordinate lists, gamma) pairs; absent subsets get 0.
  static WeightScheme general_from_entries(
      int s, const std::vector<std::pair<std::vector<int>, double>>& entries);
  /// "unweighted" (gamma_j = 1), "geo09" (0.9^j), "invsq" (1/j^2).
  static WeightScheme preset(const std::string& name, int s);

  WeightKind kind() const { return kind_; }
  int dimension() const { return s_; }

  double gamma(std::uint32_t subset_mask) const;

  /// gamma-tilde of a nonempty subset v: sum over supersets u of v of
  /// gamma_u / 3^|u|. Closed product for product schemes.
  double gamma_tilde(std::uint32_t subset_mask) const;

  /// Extensible truncation for product schemes: prod_{j in v} gamma_j/3
  /// times prod_{j in I_tau minus v} (1 + gamma_j/3). Requires v subset of
  /// I_tau. Throws for general schemes.
  double gamma_tilde_truncated(int tau, std::uint32_t subset_mask) const;

  /// Product schemes only: the per-coordinate weights.
  const std::vector<double>& product_gammas() const;

  /// General schemes only. Table over all 2^s masks; entry v>0 is
  /// gamma_tilde(v), entry 0 is the sum of gamma_u/3^|u| over nonempty u.
  const std::vector<double>& gamma_tilde_table() const;

  /// Raw gamma values for all 2^s masks (entry 0 = 1); materialized on
  /// demand for product schemes, so only valid for s <= 20.
  std::vector<double> gamma_table() const;

 private:
  WeightScheme() = default;
  void build_tilde_table();

  WeightKind kind_ = WeightKind::product;
  int s_ = 0;
  std::vector<double> gammas_;        // product
  std::vector<double> gamma_by_mask_; // general
  std::vector<double> tilde_table_;   // general (eager)
};

}

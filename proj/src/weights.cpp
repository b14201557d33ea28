#include "plr/weights.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace plr {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

WeightScheme WeightScheme::product(std::vector<double> gammas) {
  require(!gammas.empty(), "weights: need at least one coordinate");
  require(gammas.size() <= static_cast<std::size_t>(max_dimension), "weights: dimension above cap");
  for (double g : gammas) require(g >= 0.0 && std::isfinite(g), "weights: gamma must be finite and nonnegative");
  WeightScheme w;
  w.kind_ = WeightKind::product;
  w.s_ = static_cast<int>(gammas.size());
  w.gammas_ = std::move(gammas);
  return w;
}

WeightScheme WeightScheme::general(int s, std::vector<double> by_mask) {
  require(s >= 1 && s <= max_general_dimension, "weights: general dimension out of range");
  require(by_mask.size() == (std::size_t{1} << s), "weights: mask table size must be 2^s");
  for (std::size_t u = 1; u < by_mask.size(); ++u) {
    require(by_mask[u] >= 0.0 && std::isfinite(by_mask[u]),
            "weights: gamma must be finite and nonnegative");
  }
  WeightScheme w;
  w.kind_ = WeightKind::general;
  w.s_ = s;
  w.gamma_by_mask_ = std::move(by_mask);
  w.gamma_by_mask_[0] = 1.0;
  w.build_tilde_table();
  return w;
}

WeightScheme WeightScheme::general_from_entries(
    int s, const std::vector<std::pair<std::vector<int>, double>>& entries) {
  require(s >= 1 && s <= max_general_dimension, "weights: general dimension out of range");
  std::vector<double> by_mask(std::size_t{1} << s, 0.0);
  std::vector<bool> seen(by_mask.size(), false);
  for (const auto& [subset, g] : entries) {
    require(!subset.empty(), "weights: empty subset entry");
    std::uint32_t mask = 0;
    for (int j : subset) {
      require(j >= 1 && j <= s, "weights: subset coordinate out of range");
      require(!((mask >> (j - 1)) & 1u), "weights: repeated coordinate in subset");
      mask |= std::uint32_t{1} << (j - 1);
    }
    require(!seen[mask], "weights: duplicate subset entry");
    seen[mask] = true;
    by_mask[mask] = g;
  }
  return general(s, std::move(by_mask));
}

WeightScheme WeightScheme::preset(const std::string& name, int s) {
  require(s >= 1 && s <= max_dimension, "weights: dimension out of range");
  std::vector<double> g(static_cast<std::size_t>(s));
  for (int j = 1; j <= s; ++j) {
    if (name == "unweighted") {
      g[j - 1] = 1.0;
    } else if (name == "geo09") {
      g[j - 1] = std::pow(0.9, j);
    } else if (name == "invsq") {
      g[j - 1] = 1.0 / (static_cast<double>(j) * j);
    } else {
      throw std::invalid_argument("weights: unknown preset '" + name + "'");
    }
  }
  return product(std::move(g));
}

void WeightScheme::build_tilde_table() {
  const std::size_t n = std::size_t{1} << s_;
  tilde_table_.assign(n, 0.0);
  for (std::size_t u = 1; u < n; ++u) {
    tilde_table_[u] =
        gamma_by_mask_[u] / std::pow(3.0, std::popcount(static_cast<std::uint32_t>(u)));
  }
  // Superset-sum transform: table[v] = sum over u >= v of gamma_u / 3^|u|.
  for (int j = 0; j < s_; ++j) {
    for (std::size_t mask = 0; mask < n; ++mask) {
      if (!((mask >> j) & 1u)) tilde_table_[mask] += tilde_table_[mask | (std::size_t{1} << j)];
    }
  }
}

double WeightScheme::gamma(std::uint32_t subset_mask) const {
  require(subset_mask < (std::uint64_t{1} << std::min(s_, 63)), "weights: subset out of range");
  if (subset_mask == 0) return 1.0;
  if (kind_ == WeightKind::general) return gamma_by_mask_[subset_mask];
  double g = 1.0;
  for (std::uint32_t m = subset_mask; m; m &= m - 1) {
    g *= gammas_[std::countr_zero(m)];
  }
  return g;
}

double WeightScheme::gamma_tilde(std::uint32_t subset_mask) const {
  require(subset_mask != 0, "weights: gamma_tilde needs a nonempty subset");
  require(subset_mask < (std::uint64_t{1} << std::min(s_, 63)), "weights: subset out of range");
  if (kind_ == WeightKind::general) return tilde_table_[subset_mask];
  double g = 1.0;
  for (int j = 0; j < s_; ++j) {
    const double gj3 = gammas_[j] / 3.0;
    g *= ((subset_mask >> j) & 1u) ? gj3 : 1.0 + gj3;
  }
  return g;
}

double WeightScheme::gamma_tilde_truncated(int tau, std::uint32_t subset_mask) const {
  require(kind_ == WeightKind::product, "weights: truncated gamma_tilde needs a product scheme");
  require(tau >= 1 && tau <= s_, "weights: tau out of range");
  require(subset_mask != 0, "weights: gamma_tilde needs a nonempty subset");
  require((subset_mask >> tau) == 0, "weights: subset must lie inside the first tau coordinates");
  double g = 1.0;
  for (int j = 0; j < tau; ++j) {
    const double gj3 = gammas_[j] / 3.0;
    g *= ((subset_mask >> j) & 1u) ? gj3 : 1.0 + gj3;
  }
  return g;
}

const std::vector<double>& WeightScheme::product_gammas() const {
  require(kind_ == WeightKind::product, "weights: not a product scheme");
  return gammas_;
}

const std::vector<double>& WeightScheme::gamma_tilde_table() const {
  require(kind_ == WeightKind::general, "weights: tilde table is kept for general schemes only");
  return tilde_table_;
}

std::vector<double> WeightScheme::gamma_table() const {
  require(s_ <= max_general_dimension, "weights: dimension too large to materialize");
  const std::size_t n = std::size_t{1} << s_;
  std::vector<double> t(n);
  if (kind_ == WeightKind::general) {
    t = gamma_by_mask_;
    t[0] = 1.0;
    return t;
  }
  t[0] = 1.0;
  for (std::size_t mask = 1; mask < n; ++mask) {
    const std::size_t low = mask & (mask - 1);
    t[mask] = t[low] * gammas_[std::countr_zero(mask)];
  }
  return t;
}

}

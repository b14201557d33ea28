#include "plr/cbc.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <limits>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "plr/discrepancy.hpp"
#include "kahan.hpp"
#include "parallel.hpp"
#include "vm_internal.hpp"

namespace plr {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// Memory per construction grows as 2^m (per-point accumulators and one
// candidate column); 26 also keeps every v_m numerator exact in a double.
constexpr int max_construct_m = 26;
constexpr int max_general_construct_m = 20;
constexpr int max_general_cbc_dimension = 12;

// Scores within this relative band of the minimum count as tied; the tie
// goes to the smallest candidate bitmask.
constexpr double tie_band = 1e-14;

// Candidates whose FFT-approximated score is within this fraction of the
// total point weight above the approximate minimum get rescored exactly.
// FFT roundoff is ~1e-15 of that scale, the exact tie band ~1e-14, so the
// margin covers both with four orders of magnitude to spare.
constexpr double fft_rescore_margin = 1e-10;

Gf2Poly resolve_modulus(int m, const std::optional<Gf2Poly>& p) {
  if (!p) return find_irreducible(m);
  require(p->degree() == m, "cbc: modulus degree must equal m");
  require(is_irreducible(*p), "cbc: modulus must be irreducible");
  return *p;
}

// phi / phi_tilde of an m-digit numerator depend only on its bit width;
// tabulating by width keeps scoring loops free of libm calls while producing
// the exact same doubles as the phi()/phi_tilde() entry points.
std::vector<double> phi_by_width(int m) {
  std::vector<double> t(static_cast<std::size_t>(m) + 1);
  t[0] = phi(0, m);
  for (int w = 1; w <= m; ++w) t[w] = phi(std::uint64_t{1} << (w - 1), m);
  return t;
}

std::vector<double> phi_tilde_by_width(int m) {
  std::vector<double> t(static_cast<std::size_t>(m) + 1);
  t[0] = phi_tilde(0, m);
  for (int w = 1; w <= m; ++w) t[w] = phi_tilde(std::uint64_t{1} << (w - 1), m);
  return t;
}

// col[n] = numerator of v_m(n q / p), filled through the GF(2)-linear basis
// images of the digit polynomials x^i.
void fill_column(std::uint64_t qmask, std::uint64_t pmask, int m,
                 std::vector<std::uint64_t>& col) {
  std::uint64_t basis[64];
  for (int i = 0; i < m; ++i) {
    const Gf2Poly xi{std::uint64_t{1} << i};
    basis[i] = detail::vm_of_reduced(mul_mod(xi, Gf2Poly{qmask}, Gf2Poly{pmask}).mask, pmask, m);
  }
  col[0] = 0;
  const std::size_t n = col.size();
  for (std::size_t i = 1; i < n; ++i) {
    col[i] = col[i & (i - 1)] ^ basis[std::countr_zero(i)];
  }
}

// One candidate's step score: compensated sum of pointweight[n] times
// phi(x_{n,q}) (or phi_tilde) in ascending point order. Both sweep modes
// select on exactly these values.
double score_candidate(std::uint64_t qmask, std::uint64_t pmask, int m,
                       const std::vector<double>& pointweight,
                       const std::vector<double>& weight_by_width,
                       std::vector<std::uint64_t>& col) {
  fill_column(qmask, pmask, m, col);
  Kahan acc;
  const std::size_t n = col.size();
  for (std::size_t i = 0; i < n; ++i) {
    acc.add(pointweight[i] * weight_by_width[std::bit_width(col[i])]);
  }
  return acc.value();
}

// Scores for every candidate mask 1..2^m-1, indexed by mask-1. Parallel over
// chunks; each score is computed independently, so the result does not
// depend on the thread count.
std::vector<double> sweep_scores(std::uint64_t pmask, int m, const std::vector<double>& pointweight,
                                 const std::vector<double>& weight_by_width) {
  const std::size_t n = pointweight.size();
  const std::size_t count = n - 1;
  std::vector<double> scores(count);
  constexpr std::size_t chunk = 32;
  const std::size_t nchunks = (count + chunk - 1) / chunk;
  parallel_for_blocks(nchunks, [&](std::size_t c) {
    std::vector<std::uint64_t> col(n);
    const std::uint64_t lo = c * chunk + 1;
    const std::uint64_t hi = std::min<std::uint64_t>(count, lo + chunk - 1);
    for (std::uint64_t mask = lo; mask <= hi; ++mask) {
      scores[mask - 1] = score_candidate(mask, pmask, m, pointweight, weight_by_width, col);
    }
  });
  return scores;
}

// Smallest candidate bitmask whose score lies within the tie band of the
// minimum. Order-independent, so naive and rescored-fast selection agree.
template <typename MaskOf>
std::uint64_t select_min_mask(const std::vector<double>& scores, MaskOf&& mask_of) {
  double best = scores[0];
  for (double v : scores) best = std::min(best, v);
  const double tol = tie_band * std::abs(best);
  std::uint64_t chosen = std::numeric_limits<std::uint64_t>::max();
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i] <= best + tol) chosen = std::min(chosen, mask_of(i));
  }
  return chosen;
}

// FFTW's planner is not thread safe; plan creation/destruction serializes on
// this mutex (execution on distinct plans is safe).
std::mutex& fftw_plan_mutex() {
  static std::mutex mtx;
  return mtx;
}

// out[j] = sum_i a[i] b[(i+j) mod len] for all j at once: the reversal of a
// convolved cyclically with b, computed as one zero-padded power-of-two FFT
// pass with the linear convolution folded back to length len.
class CyclicCorrelator {
 public:
  CyclicCorrelator(std::size_t len, const std::vector<double>& b)
      : len_(len), pad_(std::bit_ceil(2 * len - 1)) {
    const std::size_t nfreq = pad_ / 2 + 1;
    real_ = fftw_alloc_real(pad_);
    spec_ = fftw_alloc_complex(nfreq);
    bspec_ = fftw_alloc_complex(nfreq);
    {
      std::lock_guard<std::mutex> lock(fftw_plan_mutex());
      fwd_ = fftw_plan_dft_r2c_1d(static_cast<int>(pad_), real_, spec_, FFTW_ESTIMATE);
      bwd_ = fftw_plan_dft_c2r_1d(static_cast<int>(pad_), spec_, real_, FFTW_ESTIMATE);
    }
    std::fill(real_, real_ + pad_, 0.0);
    std::copy(b.begin(), b.end(), real_);
    fftw_execute(fwd_);
    std::memcpy(bspec_, spec_, nfreq * sizeof(fftw_complex));
  }

  CyclicCorrelator(const CyclicCorrelator&) = delete;
  CyclicCorrelator& operator=(const CyclicCorrelator&) = delete;

  ~CyclicCorrelator() {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex());
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
    fftw_free(real_);
    fftw_free(spec_);
    fftw_free(bspec_);
  }

  void correlate(const std::vector<double>& a, std::vector<double>& out) {
    std::fill(real_, real_ + pad_, 0.0);
    real_[0] = a[0];
    for (std::size_t k = 1; k < len_; ++k) real_[k] = a[len_ - k];
    fftw_execute(fwd_);
    const std::size_t nfreq = pad_ / 2 + 1;
    for (std::size_t f = 0; f < nfreq; ++f) {
      const double re = spec_[f][0] * bspec_[f][0] - spec_[f][1] * bspec_[f][1];
      const double im = spec_[f][0] * bspec_[f][1] + spec_[f][1] * bspec_[f][0];
      spec_[f][0] = re;
      spec_[f][1] = im;
    }
    fftw_execute(bwd_);
    const double inv = 1.0 / static_cast<double>(pad_);
    out.resize(len_);
    for (std::size_t j = 0; j < len_; ++j) {
      const double wrap = (j + len_ <= 2 * len_ - 2) ? real_[j + len_] : 0.0;
      out[j] = (real_[j] + wrap) * inv;
    }
  }

 private:
  std::size_t len_;
  std::size_t pad_;
  double* real_;
  fftw_complex* spec_;
  fftw_complex* bspec_;
  fftw_plan fwd_;
  fftw_plan bwd_;
};

// Fast-sweep state shared across the dimension loop: the unit-group power
// table reindexes nonzero points and candidates so one step's scores become
// a single cyclic correlation, and b's spectrum is fixed per construction.
struct FastSweep {
  std::vector<std::uint64_t> gpow;
  std::vector<double> avec;
  std::vector<double> approx;
  std::unique_ptr<CyclicCorrelator> corr;

  void build(Gf2Poly p, int m, const std::vector<double>& weight_by_width) {
    const std::size_t count = (std::size_t{1} << m) - 1;
    const Gf2Poly g = unit_group_generator(p);
    gpow.resize(count);
    gpow[0] = 1;
    for (std::size_t k = 1; k < count; ++k) {
      gpow[k] = mul_mod(Gf2Poly{gpow[k - 1]}, g, p).mask;
    }
    std::vector<double> b(count);
    for (std::size_t k = 0; k < count; ++k) {
      b[k] = weight_by_width[std::bit_width(detail::vm_of_reduced(gpow[k], p.mask, m))];
    }
    corr = std::make_unique<CyclicCorrelator>(count, b);
    avec.resize(count);
    approx.resize(count);
  }
};

// One fast step: approximate all scores by FFT (the n = 0 term is
// candidate-independent and excluded), rescore everything within the error
// margin with the exact scorer, then apply the shared tie-break.
std::uint64_t fast_step(FastSweep& fs, Gf2Poly p, int m, const std::vector<double>& pointweight,
                        const std::vector<double>& weight_by_width) {
  if (!fs.corr) fs.build(p, m, weight_by_width);
  const std::size_t count = fs.gpow.size();
  for (std::size_t i = 0; i < count; ++i) fs.avec[i] = pointweight[fs.gpow[i]];
  fs.corr->correlate(fs.avec, fs.approx);

  double amin = fs.approx[0];
  for (double v : fs.approx) amin = std::min(amin, v);
  double total = 0.0;
  for (double v : pointweight) total += std::abs(v);
  const double margin = fft_rescore_margin * total;

  std::vector<std::uint64_t> masks;
  for (std::size_t j = 0; j < count; ++j) {
    if (fs.approx[j] <= amin + margin) masks.push_back(fs.gpow[j]);
  }
  std::vector<double> exact(masks.size());
  parallel_for_blocks(masks.size(), [&](std::size_t i) {
    std::vector<std::uint64_t> col(pointweight.size());
    exact[i] = score_candidate(masks[i], p.mask, m, pointweight, weight_by_width, col);
  });
  return select_min_mask(exact, [&](std::size_t i) -> std::uint64_t { return masks[i]; });
}

// B of the first tau coordinates under the full scheme's subset weights
// restricted to I_tau. At tau = s this reproduces mean_square_criterion's
// accumulation order exactly (same DP, same mask order, same compensation).
double general_restricted_criterion(PointGenerator& gen, const std::vector<double>& tilde,
                                    int tau, int precision_bits) {
  const std::size_t n = std::size_t{1} << precision_bits;
  std::vector<std::uint64_t> row(static_cast<std::size_t>(gen.s()));
  std::vector<double> h(static_cast<std::size_t>(tau));
  std::vector<double> dp(std::size_t{1} << tau);
  const std::size_t lim = std::size_t{1} << tau;
  Kahan acc;
  for (std::size_t i = 0; i < n; ++i) {
    gen.row(i, row);
    for (int j = 0; j < tau; ++j) h[j] = phi_tilde(row[j], precision_bits);
    dp[0] = 1.0;
    double total = 0.0;
    for (std::size_t mask = 1; mask < lim; ++mask) {
      dp[mask] = dp[mask & (mask - 1)] * h[std::countr_zero(mask)];
      total += tilde[mask] * dp[mask];
    }
    acc.add(total);
  }
  return acc.value() / static_cast<double>(n);
}

std::vector<double> general_criterion_prefixes(const PolyLatticeRule& rule,
                                               const WeightScheme& w) {
  const std::vector<double>& tilde = w.gamma_tilde_table();
  PointGenerator gen(rule);
  std::vector<double> out(static_cast<std::size_t>(rule.s));
  for (int tau = 1; tau <= rule.s; ++tau) {
    out[tau - 1] = general_restricted_criterion(gen, tilde, tau, rule.m);
  }
  return out;
}

std::vector<double> criterion_prefixes(const PolyLatticeRule& rule, const WeightScheme& w) {
  if (w.kind() == WeightKind::product) {
    std::vector<double> g(w.product_gammas().begin(),
                          w.product_gammas().begin() + rule.s);
    return mean_square_prefixes(rule, g);
  }
  return general_criterion_prefixes(rule, w);
}

}  // namespace

CbcResult cbc_construct_product(int m, int s, const std::vector<double>& gammas,
                                std::optional<Gf2Poly> p_opt, CbcMode mode) {
  require(m >= 1 && m <= max_construct_m, "cbc: m out of range [1, 26]");
  require(s >= 1 && s <= WeightScheme::max_dimension, "cbc: s out of range");
  require(gammas.size() == static_cast<std::size_t>(s), "cbc: need one weight per dimension");
  for (double g : gammas) {
    require(g >= 0.0 && std::isfinite(g), "cbc: weights must be nonnegative and finite");
  }
  const Gf2Poly p = resolve_modulus(m, p_opt);
  const bool use_fast = mode == CbcMode::fast || (mode == CbcMode::automatic && m > 10);

  const std::size_t n = std::size_t{1} << m;
  const std::size_t count = n - 1;
  const std::vector<double> phiw = phi_by_width(m);
  std::vector<double> pw(n, 1.0);
  std::vector<std::uint64_t> col(n);
  std::vector<Gf2Poly> q;
  q.reserve(static_cast<std::size_t>(s));
  FastSweep fs;

  for (int tau = 1; tau <= s; ++tau) {
    std::uint64_t chosen = 1;
    // Step 1 is fixed to q = 1; a zero weight makes the step criterion
    // candidate-independent, where the tie-break would pick 1 anyway.
    if (tau >= 2 && gammas[tau - 1] > 0.0 && count > 1) {
      if (use_fast) {
        chosen = fast_step(fs, p, m, pw, phiw);
      } else {
        const std::vector<double> scores = sweep_scores(p.mask, m, pw, phiw);
        chosen = select_min_mask(scores, [](std::size_t i) -> std::uint64_t { return i + 1; });
      }
    }
    q.push_back(Gf2Poly{chosen});
    fill_column(chosen, p.mask, m, col);
    const double g = gammas[tau - 1];
    for (std::size_t i = 0; i < n; ++i) {
      pw[i] *= 1.0 + g * phiw[std::bit_width(col[i])];
    }
  }

  CbcResult res;
  res.rule = PolyLatticeRule::create(p, std::move(q));
  res.criterion_by_dim = mean_square_prefixes(res.rule, gammas);
  return res;
}

CbcResult cbc_construct_general(int m, const WeightScheme& w, std::optional<Gf2Poly> p_opt) {
  require(w.kind() == WeightKind::general,
          "cbc: product schemes take the product construction path");
  const int s = w.dimension();
  require(s <= max_general_cbc_dimension, "cbc: general construction capped at 12 dimensions");
  require(m >= 1 && m <= max_general_construct_m,
          "cbc: m out of range [1, 20] for general weights");
  const Gf2Poly p = resolve_modulus(m, p_opt);

  const std::size_t n = std::size_t{1} << m;
  const std::size_t count = n - 1;
  const std::vector<double>& tilde = w.gamma_tilde_table();
  const std::vector<double> phitw = phi_tilde_by_width(m);
  std::vector<std::vector<double>> cols;  // phi_tilde of the chosen columns
  std::vector<std::uint64_t> col(n);
  std::vector<double> pointweight(n);
  std::vector<double> dp(std::size_t{1} << s);
  std::vector<Gf2Poly> q;
  q.reserve(static_cast<std::size_t>(s));

  for (int tau = 1; tau <= s; ++tau) {
    std::uint64_t chosen = 1;
    if (tau >= 2 && count > 1) {
      // Per-point weight: the tau-containing part of the criterion with the
      // candidate's phi_tilde factored out.
      const std::uint32_t taubit = std::uint32_t{1} << (tau - 1);
      const std::size_t lim = std::size_t{1} << (tau - 1);
      for (std::size_t i = 0; i < n; ++i) {
        dp[0] = 1.0;
        double acc = tilde[taubit];
        for (std::size_t mask = 1; mask < lim; ++mask) {
          dp[mask] = dp[mask & (mask - 1)] * cols[std::countr_zero(mask)][i];
          acc += tilde[mask | taubit] * dp[mask];
        }
        pointweight[i] = acc;
      }
      const std::vector<double> scores = sweep_scores(p.mask, m, pointweight, phitw);
      chosen = select_min_mask(scores, [](std::size_t i) -> std::uint64_t { return i + 1; });
    }
    q.push_back(Gf2Poly{chosen});
    fill_column(chosen, p.mask, m, col);
    cols.emplace_back(n);
    for (std::size_t i = 0; i < n; ++i) cols.back()[i] = phitw[std::bit_width(col[i])];
  }

  CbcResult res;
  res.rule = PolyLatticeRule::create(p, std::move(q));
  res.criterion_by_dim = general_criterion_prefixes(res.rule, w);
  return res;
}

std::vector<double> step_criteria_product(int m, Gf2Poly p, const std::vector<double>& gammas,
                                          std::span<const Gf2Poly> prefix) {
  require(m >= 1 && m <= max_construct_m, "cbc: m out of range [1, 26]");
  const std::size_t tau = prefix.size() + 1;
  require(gammas.size() >= tau, "cbc: need a weight for the step dimension");
  const std::vector<double> g(gammas.begin(), gammas.begin() + tau);
  const std::size_t count = (std::size_t{1} << m) - 1;
  std::vector<double> out(count);
  constexpr std::size_t chunk = 8;
  const std::size_t nchunks = (count + chunk - 1) / chunk;
  parallel_for_blocks(nchunks, [&](std::size_t c) {
    const std::uint64_t lo = c * chunk + 1;
    const std::uint64_t hi = std::min<std::uint64_t>(count, lo + chunk - 1);
    for (std::uint64_t mask = lo; mask <= hi; ++mask) {
      std::vector<Gf2Poly> q(prefix.begin(), prefix.end());
      q.push_back(Gf2Poly{mask});
      const PolyLatticeRule rule = PolyLatticeRule::create(p, std::move(q));
      out[mask - 1] = mean_square_prefixes(rule, g).back();
    }
  });
  return out;
}

std::vector<double> step_criteria_general(int m, Gf2Poly p, const WeightScheme& w,
                                          std::span<const Gf2Poly> prefix) {
  require(w.kind() == WeightKind::general,
          "cbc: product schemes take the product criteria path");
  require(m >= 1 && m <= max_general_construct_m,
          "cbc: m out of range [1, 20] for general weights");
  const int tau = static_cast<int>(prefix.size()) + 1;
  require(tau <= w.dimension(), "cbc: step dimension exceeds the weight scheme");
  const std::vector<double>& tilde = w.gamma_tilde_table();
  const std::size_t count = (std::size_t{1} << m) - 1;
  std::vector<double> out(count);
  constexpr std::size_t chunk = 8;
  const std::size_t nchunks = (count + chunk - 1) / chunk;
  parallel_for_blocks(nchunks, [&](std::size_t c) {
    const std::uint64_t lo = c * chunk + 1;
    const std::uint64_t hi = std::min<std::uint64_t>(count, lo + chunk - 1);
    for (std::uint64_t mask = lo; mask <= hi; ++mask) {
      std::vector<Gf2Poly> q(prefix.begin(), prefix.end());
      q.push_back(Gf2Poly{mask});
      const PolyLatticeRule rule = PolyLatticeRule::create(p, std::move(q));
      PointGenerator gen(rule);
      out[mask - 1] = general_restricted_criterion(gen, tilde, tau, m);
    }
  });
  return out;
}

double theorem_bound(const WeightScheme& w, int tau, int m, double lambda) {
  require(lambda > 0.5 && lambda <= 1.0, "theorem_bound: lambda must lie in (1/2, 1]");
  require(tau >= 1 && tau <= w.dimension(), "theorem_bound: tau out of range");
  require(m >= 1 && m <= Gf2Poly::max_degree, "theorem_bound: m out of range");
  const double denom = std::exp2(2.0 * lambda) - 2.0;
  double content = 0.0;
  if (w.kind() == WeightKind::product) {
    const std::vector<double>& g = w.product_gammas();
    const double c = (std::exp2(2.0 * lambda) - 1.0) / denom;
    double p1 = 1.0, p2 = 1.0;
    for (int j = 0; j < tau; ++j) {
      p1 *= 1.0 + c * std::pow(g[j] / 3.0, lambda);
      p2 *= std::pow(1.0 + g[j] / 3.0, lambda);
    }
    content = p1 - p2;
  } else {
    const std::vector<double>& tilde = w.gamma_tilde_table();
    Kahan acc;
    const std::size_t lim = std::size_t{1} << tau;
    for (std::size_t mask = 1; mask < lim; ++mask) {
      acc.add(std::pow(tilde[mask], lambda) /
              std::pow(denom, static_cast<double>(std::popcount(mask))));
    }
    content = acc.value();
  }
  content = std::max(content, 0.0);
  const double points = std::ldexp(1.0, m) - 1.0;
  return std::pow(content, 1.0 / lambda) / std::pow(points, 1.0 / lambda);
}

double tractability_ratio(const WeightScheme& w, int tau, double lambda) {
  require(lambda > 0.5 && lambda <= 1.0, "tractability: lambda must lie in (1/2, 1]");
  require(tau >= 1 && tau <= w.dimension(), "tractability: tau out of range");
  const double c = (std::exp2(2.0 * lambda) - 1.0) / (std::exp2(2.0 * lambda) - 2.0);
  double num_inner = 0.0;
  double den = 0.0;
  if (w.kind() == WeightKind::product) {
    const std::vector<double>& g = w.product_gammas();
    double p1 = 1.0, p2 = 1.0, p3 = 1.0;
    for (int j = 0; j < tau; ++j) {
      p1 *= 1.0 + c * std::pow(g[j] / 3.0, lambda);
      p2 *= std::pow(1.0 + g[j] / 3.0, lambda);
      p3 *= 1.0 + g[j] / 3.0;
    }
    num_inner = p1 - p2;
    den = p3 - 1.0;
  } else {
    const std::size_t lim = std::size_t{1} << tau;
    Kahan num_acc, den_acc;
    for (std::size_t mask = 1; mask < lim; ++mask) {
      const int k = std::popcount(mask);
      const double base = w.gamma(static_cast<std::uint32_t>(mask)) /
                          std::pow(3.0, static_cast<double>(k));
      num_acc.add(std::pow(base, lambda) * (std::pow(c, static_cast<double>(k)) - 1.0));
      den_acc.add(base);
    }
    num_inner = num_acc.value();
    den = den_acc.value();
  }
  if (den == 0.0) return 0.0;
  num_inner = std::max(num_inner, 0.0);
  return std::pow(num_inner, 1.0 / lambda) / den;
}

std::vector<double> tractability_profile(const WeightScheme& w, int s_max, double lambda) {
  require(s_max >= 1 && s_max <= w.dimension(), "tractability: s_max out of range");
  std::vector<double> out(static_cast<std::size_t>(s_max));
  for (int tau = 1; tau <= s_max; ++tau) out[tau - 1] = tractability_ratio(w, tau, lambda);
  return out;
}

CbcResult exhaustive_best(int m, const WeightScheme& w, std::optional<Gf2Poly> p_opt) {
  require(m >= 1 && m <= max_construct_m, "exhaustive: m out of range [1, 26]");
  const int s = w.dimension();
  const double budget = std::pow(std::ldexp(1.0, m) - 1.0, static_cast<double>(s));
  require(budget <= 1e7, "exhaustive: candidate budget (2^m-1)^s exceeds 1e7");
  const Gf2Poly p = resolve_modulus(m, p_opt);
  const std::uint64_t count = (std::uint64_t{1} << m) - 1;

  std::vector<Gf2Poly> q(static_cast<std::size_t>(s), Gf2Poly{1});
  PolyLatticeRule best_rule;
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    PolyLatticeRule rule = PolyLatticeRule::create(p, q);
    const double value = mean_square_criterion(rule, w);
    if (value < best) {
      best = value;
      best_rule = std::move(rule);
    }
    int pos = s - 1;
    while (pos >= 1 && q[pos].mask == count) {
      q[pos] = Gf2Poly{1};
      --pos;
    }
    if (pos == 0) break;  // q_1 stays fixed at 1
    q[pos] = Gf2Poly{q[pos].mask + 1};
  }

  CbcResult res;
  res.criterion_by_dim = criterion_prefixes(best_rule, w);
  res.rule = std::move(best_rule);
  return res;
}

}

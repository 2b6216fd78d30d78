#pragma once

// Learning bounded degree-d functions from uniform random examples.
//
// learn_bh: estimate every coefficient of level <= d from N_b samples, keep those with
//   |alpha_S| >= a where a = b (1 + sqrt(d+1)), and output h = sum_{kept} alpha_S w_S.
//   The tolerance b is chosen so that the good event "all |alpha_S - f^(S)| <= b" forces
//   ||h - f||^2 < eps given the Bohnenblust-Hille constant B_d.
// learn_lmn: the Low-Degree Algorithm, which keeps every estimated coefficient.
// learn_auto: whichever of the two needs fewer samples.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bhlearn/combinatorics.hpp"
#include "bhlearn/errors.hpp"
#include "bhlearn/function_zoo.hpp"
#include "bhlearn/growth_bounds.hpp"
#include "bhlearn/hypercube.hpp"
#include "bhlearn/parallel.hpp"
#include "bhlearn/rng.hpp"

namespace bhlearn {

// ---------------------------------------------------------------------------
// Sample-count formulas
// ---------------------------------------------------------------------------

namespace detail {

inline void require_unit_interval(double v, const char* name) {
  require(v > 0.0 && v < 1.0 && std::isfinite(v), std::string(name) + " must lie in (0,1)");
}

/// ceil(raw) as a sample count; raw must be finite, positive and below 2^63.
inline std::uint64_t to_count(double raw, const char* what) {
  if (!std::isfinite(raw) || raw <= 0.0) throw CapacityError(std::string(what) + ": non-finite or non-positive value");
  if (raw >= 0x1p63) throw CapacityError(std::string(what) + ": sample count exceeds 2^63");
  return static_cast<std::uint64_t>(std::ceil(raw));
}

/// ln((2/delta) * sum_{k<=d} C(n,k)).
inline double union_log(std::size_t n, std::size_t d, double delta) {
  return std::log(2.0 / delta) + std::log(static_cast<double>(low_subset_count(n, d)));
}

}  // namespace detail

/// (2 / b^2) ln((2/delta) sum_{k<=d} C(n,k)) before the ceiling.
inline double sample_count_for_b_raw(std::size_t n, std::size_t d, double delta, double b) {
  detail::require_unit_interval(delta, "delta");
  detail::require(b > 0.0 && std::isfinite(b), "b must be positive");
  detail::require(d <= n, "d must not exceed n");
  return (2.0 / (b * b)) * detail::union_log(n, d, delta);
}

/// N_b: enough samples for all level-<=d estimates to be within b of the truth w.p. 1 - delta.
inline std::uint64_t sample_count_for_b(std::size_t n, std::size_t d, double delta, double b) {
  return detail::to_count(sample_count_for_b_raw(n, d, delta, b), "sample_count_for_b");
}

/// b = sqrt(e^-5 d^-1 eps^(d+1) B_d^(-2d)).
inline double choose_b(double eps, std::size_t d, const BHConstantModel& model) {
  detail::require_unit_interval(eps, "eps");
  detail::require(d >= 1, "choose_b needs d >= 1");
  const double dd = static_cast<double>(d);
  const double log_b2 = -5.0 - std::log(dd) + (dd + 1.0) * std::log(eps) - 2.0 * dd * std::log(model(d));
  const double b = std::exp(0.5 * log_b2);
  if (!(b > 0.0) || !std::isnormal(b)) {
    throw CapacityError("coefficient tolerance b underflows for eps=" + std::to_string(eps) +
                        ", d=" + std::to_string(d));
  }
  return b;
}

inline double threshold_a(double b, std::size_t d) {
  detail::require(b > 0.0 && std::isfinite(b), "threshold_a needs b > 0");
  return b * (1.0 + std::sqrt(static_cast<double>(d) + 1.0));
}

struct Theorem2Counts {
  /// ceil(e^6 d B^2d / eps^(d+1) * ln((2/delta) sum_{k<=d} C(n,k))): the count the proof validates.
  std::uint64_t proof_form;
  /// ceil(e^8 d^2 / eps^(d+1) * B^2d * ln(n/delta)): the headline statement.
  std::uint64_t statement_form;
  double proof_form_raw;
  double statement_form_raw;
};

inline Theorem2Counts theorem2_sample_count(std::size_t n, std::size_t d, double eps, double delta,
                                            const BHConstantModel& model) {
  detail::require_unit_interval(eps, "eps");
  detail::require_unit_interval(delta, "delta");
  detail::require(d >= 1 && d <= n, "theorem2_sample_count needs 1 <= d <= n");
  const double dd = static_cast<double>(d);
  const double log_common = 2.0 * dd * std::log(model(d)) - (dd + 1.0) * std::log(eps);
  const double proof = std::exp(6.0 + std::log(dd) + log_common) * detail::union_log(n, d, delta);
  const double statement =
      std::exp(8.0 + 2.0 * std::log(dd) + log_common) * std::log(static_cast<double>(n) / delta);
  return {detail::to_count(proof, "theorem2 proof form"), detail::to_count(statement, "theorem2 statement form"),
          proof, statement};
}

enum class Theorem1Branch { BohnenblustHille, LowDegree };

struct Theorem1Logs {
  /// ln(exp(C d^{3/2} sqrt(ln d)) / eps^(d+1)).
  double log_bh_branch;
  /// ln(4 d n^d / eps).
  double log_lmn_branch;
  /// ln(n / delta).
  double log_factor;
  [[nodiscard]] Theorem1Branch winner() const noexcept {
    return log_bh_branch <= log_lmn_branch ? Theorem1Branch::BohnenblustHille : Theorem1Branch::LowDegree;
  }
};

/// Both branches of min{exp(C d^{3/2} sqrt(ln d)) / eps^(d+1), 4 d n^d / eps} in log form.
inline Theorem1Logs theorem1_branch_logs(std::size_t n, std::size_t d, double eps, double delta, double C) {
  detail::require_unit_interval(eps, "eps");
  detail::require_unit_interval(delta, "delta");
  detail::require(d >= 1 && d <= n, "theorem1 needs 1 <= d <= n");
  detail::require(C >= 0.0 && std::isfinite(C), "C must be finite and nonnegative");
  const double dd = static_cast<double>(d);
  const double root_log = d == 1 ? 0.0 : std::sqrt(std::log(dd));
  const double log_bh = C * std::pow(dd, 1.5) * root_log - (dd + 1.0) * std::log(eps);
  const double log_lmn = std::log(4.0 * dd) + dd * std::log(static_cast<double>(n)) - std::log(eps);
  return {log_bh, log_lmn, std::log(static_cast<double>(n) / delta)};
}

struct Theorem1Count {
  std::uint64_t count;
  Theorem1Branch branch;
  double bh_branch;   // branch value before the ln(n/delta) factor
  double lmn_branch;
};

inline Theorem1Count theorem1_sample_count(std::size_t n, std::size_t d, double eps, double delta, double C) {
  const Theorem1Logs logs = theorem1_branch_logs(n, d, eps, delta, C);
  const Theorem1Branch branch = logs.winner();
  const double best = std::min(logs.log_bh_branch, logs.log_lmn_branch);
  return {detail::to_count(std::exp(best) * logs.log_factor, "theorem1_sample_count"), branch,
          std::exp(logs.log_bh_branch), std::exp(logs.log_lmn_branch)};
}

/// ceil((2 n^d / eps) ln(2 n^d / delta)).
inline std::uint64_t lmn_sample_count(std::size_t n, std::size_t d, double eps, double delta) {
  detail::require_unit_interval(eps, "eps");
  detail::require_unit_interval(delta, "delta");
  detail::require(n >= 1 && d <= n, "lmn_sample_count needs d <= n");
  const double log_nd = static_cast<double>(d) * std::log(static_cast<double>(n));
  const double raw = 2.0 * std::exp(log_nd - std::log(eps)) * (std::log(2.0 / delta) + log_nd);
  return detail::to_count(raw, "lmn_sample_count");
}

// ---------------------------------------------------------------------------
// Empirical spectrum
// ---------------------------------------------------------------------------

/// The index set {S : |S| <= d} in (|S|, mask) order, with flattened bit positions.
struct LowDegreeIndex {
  std::size_t n = 0;
  std::size_t d = 0;
  std::vector<SubsetMask> subsets;
  std::vector<std::uint32_t> positions;  // positions of subsets[i] are [offsets[i], offsets[i+1])
  std::vector<std::size_t> offsets;

  [[nodiscard]] std::size_t size() const noexcept { return subsets.size(); }

  /// Position of s in `subsets`, if |s| <= d.
  [[nodiscard]] std::optional<std::size_t> find(const SubsetMask& s) const {
    if (s.dimension() != n || s.count() > d) return std::nullopt;
    const auto it = std::ranges::lower_bound(subsets, s, [](const SubsetMask& x, const SubsetMask& y) {
      const std::size_t cx = x.count();
      const std::size_t cy = y.count();
      return cx != cy ? cx < cy : x < y;
    });
    if (it == subsets.end() || *it != s) return std::nullopt;
    return static_cast<std::size_t>(it - subsets.begin());
  }
};

inline std::shared_ptr<const LowDegreeIndex> make_low_degree_index(std::size_t n, std::size_t d) {
  auto idx = std::make_shared<LowDegreeIndex>();
  idx->n = n;
  idx->d = d;
  idx->subsets = enumerate_low_subsets(n, d);
  idx->offsets.reserve(idx->subsets.size() + 1);
  idx->offsets.push_back(0);
  for (const auto& s : idx->subsets) {
    for (std::size_t p : s.positions()) idx->positions.push_back(static_cast<std::uint32_t>(p));
    idx->offsets.push_back(idx->positions.size());
  }
  return idx;
}

/// alpha_S = N^-1 sum_j f(X_j) w_S(X_j) for every |S| <= d; zeros are kept.
class EmpiricalSpectrum {
 public:
  EmpiricalSpectrum(std::shared_ptr<const LowDegreeIndex> index, std::vector<double> alpha, std::uint64_t samples)
      : index_(std::move(index)), alpha_(std::move(alpha)), samples_(samples) {
    detail::require(index_ != nullptr && alpha_.size() == index_->size(), "spectrum size does not match index");
  }

  [[nodiscard]] std::size_t dimension() const noexcept { return index_->n; }
  [[nodiscard]] std::size_t degree_bound() const noexcept { return index_->d; }
  [[nodiscard]] std::size_t size() const noexcept { return alpha_.size(); }
  [[nodiscard]] std::uint64_t sample_count() const noexcept { return samples_; }
  [[nodiscard]] const LowDegreeIndex& index() const noexcept { return *index_; }
  [[nodiscard]] std::span<const SubsetMask> subsets() const noexcept { return index_->subsets; }
  [[nodiscard]] std::span<const double> values() const noexcept { return alpha_; }

  [[nodiscard]] double at(const SubsetMask& s) const {
    const auto i = index_->find(s);
    detail::require(i.has_value(), "subset " + s.to_hex() + " is outside the estimated levels");
    return alpha_[*i];
  }

  friend bool operator==(const EmpiricalSpectrum& a, const EmpiricalSpectrum& b) {
    return a.dimension() == b.dimension() && a.degree_bound() == b.degree_bound() && a.alpha_ == b.alpha_;
  }

 private:
  std::shared_ptr<const LowDegreeIndex> index_;
  std::vector<double> alpha_;
  std::uint64_t samples_;
};

enum class EstimatorMode {
  /// Dense for n <= kDenseEstimationCap, direct otherwise.
  Auto,
  /// Per-subset running sums in sample order.
  Direct,
  /// Accumulate f(X_j) into a 2^n histogram, then one butterfly.
  Dense,
};

inline constexpr std::size_t kDenseEstimationCap = 16;

/// Streaming accumulator for the empirical spectrum.
///
/// Direct mode is a literal evaluation of the estimator, parallel over subsets; each
/// subset sums in sample order, so the result does not depend on the thread count.
/// Dense mode computes the same sums through the histogram's Walsh transform; it agrees
/// with Direct up to rounding.
class SpectrumEstimator {
 public:
  static constexpr std::size_t kChunk = 2048;

  explicit SpectrumEstimator(std::shared_ptr<const LowDegreeIndex> index, EstimatorMode mode = EstimatorMode::Auto,
                             unsigned threads = 1)
      : index_(std::move(index)), threads_(std::max(1u, threads)) {
    detail::require(index_ != nullptr, "estimator needs an index");
    const std::size_t n = index_->n;
    if (mode == EstimatorMode::Auto) mode = n <= kDenseEstimationCap ? EstimatorMode::Dense : EstimatorMode::Direct;
    if (mode == EstimatorMode::Dense) detail::require_dense(n, kDefaultDenseCap);
    mode_ = mode;
    words_ = PointMask::words_for(n);
    if (mode_ == EstimatorMode::Dense) {
      histogram_.assign(std::size_t{1} << n, 0.0);
    } else {
      sums_.assign(index_->size(), 0.0);
      buffer_words_.reserve(kChunk * words_);
      buffer_values_.reserve(kChunk);
    }
  }

  [[nodiscard]] EstimatorMode mode() const noexcept { return mode_; }
  [[nodiscard]] std::uint64_t count() const noexcept { return count_; }

  void add(const PointMask& x, double value) {
    detail::require_same_dimension(index_->n, x.dimension());
    ++count_;
    if (mode_ == EstimatorMode::Dense) {
      histogram_[x.to_index()] += value;
      return;
    }
    const auto w = x.words();
    buffer_words_.insert(buffer_words_.end(), w.begin(), w.end());
    buffer_values_.push_back(value);
    if (buffer_values_.size() == kChunk) flush();
  }

  [[nodiscard]] EmpiricalSpectrum finish() {
    detail::require(count_ > 0, "cannot estimate coefficients from zero samples");
    const double inv = 1.0 / static_cast<double>(count_);
    std::vector<double> alpha(index_->size());
    if (mode_ == EstimatorMode::Dense) {
      std::vector<double> v = histogram_;
      hadamard_butterfly(v);
      for (std::size_t i = 0; i < alpha.size(); ++i) alpha[i] = v[index_->subsets[i].to_index()] * inv;
    } else {
      flush();
      for (std::size_t i = 0; i < alpha.size(); ++i) alpha[i] = sums_[i] * inv;
    }
    return EmpiricalSpectrum(index_, std::move(alpha), count_);
  }

 private:
  void flush() {
    const std::size_t m = buffer_values_.size();
    if (m == 0) return;
    const std::size_t subsets = index_->size();
    const std::size_t blocks = std::min<std::size_t>(threads_, subsets);
    parallel_for(blocks, threads_, [&](std::size_t blk) {
      const std::size_t lo = subsets * blk / blocks;
      const std::size_t hi = subsets * (blk + 1) / blocks;
      accumulate_range(lo, hi, m);
    });
    buffer_words_.clear();
    buffer_values_.clear();
  }

  void accumulate_range(std::size_t lo, std::size_t hi, std::size_t m) {
    const auto& pos = index_->positions;
    const auto& off = index_->offsets;
    for (std::size_t j = 0; j < m; ++j) {
      const std::uint64_t* x = buffer_words_.data() + j * words_;
      const double v = buffer_values_[j];
      for (std::size_t s = lo; s < hi; ++s) {
        std::uint64_t parity = 0;
        for (std::size_t k = off[s]; k < off[s + 1]; ++k) parity ^= x[pos[k] >> 6] >> (pos[k] & 63);
        sums_[s] += (parity & 1) ? -v : v;
      }
    }
  }

  std::shared_ptr<const LowDegreeIndex> index_;
  unsigned threads_;
  EstimatorMode mode_ = EstimatorMode::Direct;
  std::size_t words_ = 0;
  std::uint64_t count_ = 0;
  std::vector<double> histogram_;
  std::vector<double> sums_;
  std::vector<std::uint64_t> buffer_words_;
  std::vector<double> buffer_values_;
};

/// Empirical coefficients of all levels <= d from a materialized sample list.
inline EmpiricalSpectrum estimate_coefficients(std::span<const QuerySample> samples, std::size_t n, std::size_t d,
                                               EstimatorMode mode = EstimatorMode::Direct, unsigned threads = 1) {
  detail::require(!samples.empty(), "cannot estimate coefficients from zero samples");
  SpectrumEstimator est(make_low_degree_index(n, d), mode, threads);
  for (const auto& s : samples) est.add(s.point, s.value);
  return est.finish();
}

/// {S : |alpha_S| >= a}; equality is kept.
inline std::vector<SubsetMask> threshold_spectrum(const EmpiricalSpectrum& alpha, double a) {
  detail::require(a > 0.0, "threshold must be positive");
  std::vector<SubsetMask> kept;
  const auto subsets = alpha.subsets();
  const auto values = alpha.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (std::abs(values[i]) >= a) kept.push_back(subsets[i]);
  }
  return kept;
}

/// h = sum_{S in kept} alpha_S w_S.
inline CoefficientMap build_hypothesis(const EmpiricalSpectrum& alpha, std::span<const SubsetMask> kept) {
  CoefficientMap h(alpha.dimension(), alpha.degree_bound());
  for (const auto& s : kept) h.set(s, alpha.at(s));
  return h;
}

// ---------------------------------------------------------------------------
// Learners
// ---------------------------------------------------------------------------

/// All tunables of one learning run.
struct LearnParams {
  std::size_t n = 0;
  std::size_t d = 0;
  double eps = 0.0;
  double delta = 0.0;
  double b = 0.0;
  double a = 0.0;
  std::uint64_t samples = 0;
  BHConstantModel bh_model;

  /// b from choose_b, a from threshold_a and N = N_b.
  static LearnParams for_bh(std::size_t n, std::size_t d, double eps, double delta, const BHConstantModel& model) {
    LearnParams p{n, d, eps, delta, 0.0, 0.0, 1, model};
    p.check_ranges();
    p.b = choose_b(eps, d, model);
    p.a = threshold_a(p.b, d);
    p.samples = sample_count_for_b(n, d, delta, p.b);
    p.validate();
    return p;
  }

  void validate() const {
    check_ranges();
    detail::require(b > 0.0 && a > b, "learning parameters need a > b > 0");
    detail::require(samples >= 1, "learning needs at least one sample");
  }

 private:
  void check_ranges() const {
    detail::require_unit_interval(eps, "eps");
    detail::require_unit_interval(delta, "delta");
    detail::require(d >= 1 && d <= n, "learning needs 1 <= d <= n");
  }
};

enum class Algorithm { BH, LMN, Auto };

inline std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::BH: return "bh";
    case Algorithm::LMN: return "lmn";
    case Algorithm::Auto: return "auto";
  }
  return "?";
}

inline Algorithm parse_algorithm(std::string_view text) {
  if (text == "bh") return Algorithm::BH;
  if (text == "lmn") return Algorithm::LMN;
  if (text == "auto") return Algorithm::Auto;
  throw InvalidArgument("unknown algorithm '" + std::string(text) + "'");
}

struct LearnOptions {
  /// Replaces the algorithm's own sample count.
  std::optional<std::uint64_t> sample_override;
  EstimatorMode mode = EstimatorMode::Auto;
  unsigned threads = 1;
  /// Reused across runs with the same (n, d) when set.
  std::shared_ptr<const LowDegreeIndex> index;
};

struct LearnDiagnostics {
  Algorithm algorithm = Algorithm::BH;
  std::uint64_t samples = 0;
  double b = 0.0;  // 0 for the Low-Degree Algorithm
  double a = 0.0;  // 0 for the Low-Degree Algorithm
  double bh_constant = 1.0;
  std::size_t support_size = 0;
  std::uint64_t queries_used = 0;
  /// (a-b)^{-2d/(d+1)} B_d^{2d/(d+1)}: the cap on |kept| when the good event holds.
  double support_bound = 0.0;
  // Filled by learn_auto.
  std::uint64_t bh_candidate_samples = 0;
  std::uint64_t lmn_candidate_samples = 0;
  std::optional<Theorem1Branch> theorem1_branch;
};

struct LearnResult {
  CoefficientMap hypothesis;
  EmpiricalSpectrum spectrum;
  LearnDiagnostics diagnostics;
};

namespace detail {

/// Streams `count` samples from Rng(seed), the same draws draw_samples(oracle, count, seed) makes.
inline EmpiricalSpectrum sample_spectrum(const QueryOracle& oracle, std::size_t d, std::uint64_t count,
                                         std::uint64_t seed, const LearnOptions& opt) {
  const std::size_t n = oracle.dimension();
  auto index = opt.index && opt.index->n == n && opt.index->d == d ? opt.index : make_low_degree_index(n, d);
  SpectrumEstimator est(std::move(index), opt.mode, opt.threads);
  Rng rng(seed);
  PointMask x(n);
  for (std::uint64_t j = 0; j < count; ++j) {
    rng.fill_point(x);
    est.add(x, oracle.query(x));
  }
  return est.finish();
}

inline void require_oracle(const QueryOracle& oracle, std::size_t n, std::size_t d) {
  require_same_dimension(oracle.dimension(), n);
  require(oracle.degree_bound() <= d, "oracle degree bound exceeds learner degree d");
}

}  // namespace detail

inline LearnResult learn_bh(const QueryOracle& oracle, std::size_t n, std::size_t d, double eps, double delta,
                            const BHConstantModel& model, std::uint64_t seed, const LearnOptions& opt = {}) {
  detail::require_oracle(oracle, n, d);
  LearnParams params = LearnParams::for_bh(n, d, eps, delta, model);
  if (opt.sample_override) params.samples = *opt.sample_override;
  params.validate();

  const std::uint64_t before = oracle.queries();
  EmpiricalSpectrum spectrum = detail::sample_spectrum(oracle, d, params.samples, seed, opt);
  const auto kept = threshold_spectrum(spectrum, params.a);
  CoefficientMap h = build_hypothesis(spectrum, kept);

  LearnDiagnostics diag;
  diag.algorithm = Algorithm::BH;
  diag.samples = params.samples;
  diag.b = params.b;
  diag.a = params.a;
  diag.bh_constant = model(d);
  diag.support_size = kept.size();
  diag.queries_used = oracle.queries() - before;
  const double p = bh_exponent(d);
  diag.support_bound = std::pow(params.a - params.b, -p) * std::pow(diag.bh_constant, p);
  return {std::move(h), std::move(spectrum), diag};
}

inline LearnResult learn_lmn(const QueryOracle& oracle, std::size_t n, std::size_t d, double eps, double delta,
                             std::uint64_t seed, const LearnOptions& opt = {}) {
  detail::require_oracle(oracle, n, d);
  detail::require(d >= 1 && d <= n, "learning needs 1 <= d <= n");
  const std::uint64_t samples = opt.sample_override.value_or(lmn_sample_count(n, d, eps, delta));
  detail::require(samples >= 1, "learning needs at least one sample");

  const std::uint64_t before = oracle.queries();
  EmpiricalSpectrum spectrum = detail::sample_spectrum(oracle, d, samples, seed, opt);
  CoefficientMap h = build_hypothesis(spectrum, spectrum.subsets());

  LearnDiagnostics diag;
  diag.algorithm = Algorithm::LMN;
  diag.samples = samples;
  diag.support_size = spectrum.size();
  diag.queries_used = oracle.queries() - before;
  return {std::move(h), std::move(spectrum), diag};
}

/// Runs learn_bh when its sample count N_b is no larger than the Low-Degree count, else learn_lmn.
/// C only feeds the recorded Theorem-1 branch.
inline LearnResult learn_auto(const QueryOracle& oracle, std::size_t n, std::size_t d, double eps, double delta,
                              const BHConstantModel& model, double C, std::uint64_t seed,
                              const LearnOptions& opt = {}) {
  const std::uint64_t bh_n = LearnParams::for_bh(n, d, eps, delta, model).samples;
  const std::uint64_t lmn_n = lmn_sample_count(n, d, eps, delta);
  LearnResult r = bh_n <= lmn_n ? learn_bh(oracle, n, d, eps, delta, model, seed, opt)
                                : learn_lmn(oracle, n, d, eps, delta, seed, opt);
  r.diagnostics.bh_candidate_samples = bh_n;
  r.diagnostics.lmn_candidate_samples = lmn_n;
  r.diagnostics.theorem1_branch = theorem1_branch_logs(n, d, eps, delta, C).winner();
  return r;
}

/// Pointwise sign of h with sign(0) = +1.
inline TruthTable sign_round(const CoefficientMap& h, std::size_t cap = kDefaultDenseCap) {
  const TruthTable t = to_truth_table(h, cap);
  std::vector<double> v(t.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = t[i] >= 0.0 ? 1.0 : -1.0;
  return TruthTable(h.dimension(), std::move(v), cap);
}

}  // namespace bhlearn

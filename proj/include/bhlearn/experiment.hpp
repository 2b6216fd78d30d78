#pragma once

// Monte-Carlo experiments: learning success rates, log-n scans, the collision event
// behind the log2(n) lower bound, and audits of the growth bounds on function corpora.
//
// Seeds: trial t of cell c with master seed m draws its target from
// derive_seed(m, {c, t, 0}) and its samples from derive_seed(m, {c, t, 1}). Every trial
// owns its generator and writes into its own slot, and aggregation runs in trial order,
// so results never depend on the thread count.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bhlearn/combinatorics.hpp"
#include "bhlearn/errors.hpp"
#include "bhlearn/function_zoo.hpp"
#include "bhlearn/growth_bounds.hpp"
#include "bhlearn/hypercube.hpp"
#include "bhlearn/learner.hpp"
#include "bhlearn/parallel.hpp"
#include "bhlearn/rng.hpp"

namespace bhlearn {

/// Unbiased integer in [0, bound) by rejection.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  detail::require(bound > 0, "uniform_below needs a positive bound");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x = rng.next();
  while (x >= limit) x = rng.next();
  return x % bound;
}

/// Uniform subset of size k of {0..n-1} (Floyd's algorithm).
inline SubsetMask random_subset(Rng& rng, std::size_t n, std::size_t k) {
  detail::require(k <= n, "subset size exceeds dimension");
  SubsetMask s(n);
  for (std::size_t j = n - k; j < n; ++j) {
    const auto t = static_cast<std::size_t>(uniform_below(rng, j + 1));
    s.set(s.test(t) ? j : t);
  }
  return s;
}

/// What each trial learns.
struct TargetSpec {
  enum class Kind {
    Character,        // fixed w_S given by hex
    RandomCharacter,  // fresh w_S with |S| = d per trial
    RandomFixed,      // one random bounded function from a given seed
    RandomFresh,      // fresh random bounded function per trial
    Majority,         // degree-d truncation of majority
  };
  Kind kind = Kind::RandomFresh;
  std::string hex;
  std::uint64_t seed = 0;

  /// "character:<hex>", "character", "random:<seed>", "random" or "majority".
  static TargetSpec parse(std::string_view text) {
    TargetSpec t;
    if (text == "character") {
      t.kind = Kind::RandomCharacter;
    } else if (text.starts_with("character:")) {
      t.kind = Kind::Character;
      t.hex = std::string(text.substr(10));
    } else if (text == "random") {
      t.kind = Kind::RandomFresh;
    } else if (text.starts_with("random:")) {
      t.kind = Kind::RandomFixed;
      t.seed = parse_u64(text.substr(7));
    } else if (text == "majority") {
      t.kind = Kind::Majority;
    } else {
      throw InvalidArgument("unknown target '" + std::string(text) + "'");
    }
    return t;
  }

  [[nodiscard]] bool needs_dense() const noexcept {
    return kind == Kind::RandomFixed || kind == Kind::RandomFresh || kind == Kind::Majority;
  }
};

inline Target make_target(const TargetSpec& spec, std::size_t n, std::size_t d, std::uint64_t trial_seed) {
  switch (spec.kind) {
    case TargetSpec::Kind::Character: {
      const SubsetMask s = SubsetMask::from_hex(n, spec.hex);
      detail::require(s.count() <= d, "character target has degree above d");
      return character_oracle(n, s);
    }
    case TargetSpec::Kind::RandomCharacter: {
      Rng rng(trial_seed);
      return character_oracle(n, random_subset(rng, n, d));
    }
    case TargetSpec::Kind::RandomFixed: return random_bounded_low_degree(n, d, spec.seed);
    case TargetSpec::Kind::RandomFresh: return random_bounded_low_degree(n, d, trial_seed);
    case TargetSpec::Kind::Majority: return scaled_majority_style_oracle(n, d);
  }
  throw InvalidArgument("unknown target kind");
}

/// One grid point of a learning experiment.
struct LearningCell {
  std::size_t n = 0;
  std::size_t d = 1;
  double eps = 0.25;
  double delta = 0.1;
  Algorithm algorithm = Algorithm::BH;
  std::optional<BHConstantModel> bh_model;  // learning_default(d) when unset
  double theorem1_C = 1.0;
  std::optional<std::uint64_t> sample_override;
  TargetSpec target;

  [[nodiscard]] BHConstantModel model() const { return bh_model.value_or(BHConstantModel::learning_default(d)); }

  void validate() const {
    detail::require_unit_interval(eps, "eps");
    detail::require_unit_interval(delta, "delta");
    detail::require(d >= 1 && d <= n, "cell needs 1 <= d <= n");
    if (sample_override) detail::require(*sample_override >= 1, "sample override must be at least 1");
    if (target.needs_dense() && n > kDefaultDenseCap) {
      throw InvalidArgument("target needs a dense table but n=" + std::to_string(n) + " exceeds cap " +
                            std::to_string(kDefaultDenseCap) + "; use a character target");
    }
  }
};

struct TrialRecord {
  std::size_t trial = 0;
  Algorithm algorithm = Algorithm::BH;
  std::uint64_t samples = 0;
  double b = 0.0;
  double a = 0.0;
  std::size_t support_size = 0;
  std::uint64_t queries_used = 0;
  double l2_sq_error = 0.0;
  bool success = false;
  /// All |alpha_S - f^(S)| <= tolerance over levels <= d (b for BH, sqrt(eps / #subsets) for LMN).
  bool good_event = false;
  double support_bound = 0.0;
};

/// Outcome of one trial against a known target.
inline TrialRecord evaluate_trial(const LearnResult& r, const CoefficientMap& truth, double eps) {
  TrialRecord rec;
  const auto& diag = r.diagnostics;
  rec.algorithm = diag.algorithm;
  rec.samples = diag.samples;
  rec.b = diag.b;
  rec.a = diag.a;
  rec.support_size = diag.support_size;
  rec.queries_used = diag.queries_used;
  rec.support_bound = diag.support_bound;
  rec.l2_sq_error = l2_squared_distance(r.hypothesis, truth);
  rec.success = rec.l2_sq_error < eps;
  const double tol = diag.algorithm == Algorithm::BH ? diag.b : std::sqrt(eps / static_cast<double>(r.spectrum.size()));
  bool good = true;
  const auto subsets = r.spectrum.subsets();
  const auto values = r.spectrum.values();
  for (std::size_t i = 0; i < values.size() && good; ++i) good = std::abs(values[i] - truth.at(subsets[i])) <= tol;
  rec.good_event = good;
  return rec;
}

inline LearnResult run_learner(const LearningCell& cell, const QueryOracle& oracle, std::uint64_t seed,
                               const LearnOptions& opt) {
  switch (cell.algorithm) {
    case Algorithm::BH: return learn_bh(oracle, cell.n, cell.d, cell.eps, cell.delta, cell.model(), seed, opt);
    case Algorithm::LMN: return learn_lmn(oracle, cell.n, cell.d, cell.eps, cell.delta, seed, opt);
    case Algorithm::Auto:
      return learn_auto(oracle, cell.n, cell.d, cell.eps, cell.delta, cell.model(), cell.theorem1_C, seed, opt);
  }
  throw InvalidArgument("unknown algorithm");
}

/// Per-trial records for `trials` independent trials of one cell.
inline std::vector<TrialRecord> run_learning_trials(const LearningCell& cell, std::size_t trials,
                                                    std::uint64_t master_seed, std::size_t cell_index = 0,
                                                    unsigned threads = 1) {
  cell.validate();
  detail::require(trials >= 1, "need at least one trial");
  LearnOptions opt;
  opt.sample_override = cell.sample_override;
  opt.index = make_low_degree_index(cell.n, cell.d);
  std::vector<TrialRecord> out(trials);
  parallel_for(trials, threads, [&](std::size_t t) {
    const Target target = make_target(cell.target, cell.n, cell.d, derive_seed(master_seed, {cell_index, t, 0}));
    const LearnResult r = run_learner(cell, target.oracle, derive_seed(master_seed, {cell_index, t, 1}), opt);
    out[t] = evaluate_trial(r, target.truth, cell.eps);
    out[t].trial = t;
  });
  return out;
}

struct CellSummary {
  LearningCell cell;
  std::uint64_t samples = 0;
  std::size_t trials = 0;
  std::size_t successes = 0;
  std::size_t good_events = 0;
  double mean_l2_sq_error = 0.0;
  double mean_support_size = 0.0;
  double mean_queries = 0.0;
  double wall_seconds = 0.0;

  [[nodiscard]] double success_rate() const noexcept {
    return trials == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(trials);
  }
};

/// success_rate >= target - 3 sqrt(target (1 - target) / trials).
inline double three_sigma_floor(double target_rate, std::size_t trials) {
  return target_rate - 3.0 * std::sqrt(target_rate * (1.0 - target_rate) / static_cast<double>(trials));
}

inline CellSummary summarize(const LearningCell& cell, const std::vector<TrialRecord>& records) {
  CellSummary s;
  s.cell = cell;
  s.trials = records.size();
  double err = 0.0;
  double support = 0.0;
  double queries = 0.0;
  for (const auto& r : records) {
    s.samples = std::max(s.samples, r.samples);
    s.successes += r.success ? 1 : 0;
    s.good_events += r.good_event ? 1 : 0;
    err += r.l2_sq_error;
    support += static_cast<double>(r.support_size);
    queries += static_cast<double>(r.queries_used);
  }
  const double t = static_cast<double>(std::max<std::size_t>(1, s.trials));
  s.mean_l2_sq_error = err / t;
  s.mean_support_size = support / t;
  s.mean_queries = queries / t;
  return s;
}

inline CellSummary run_learning_cell(const LearningCell& cell, std::size_t trials, std::uint64_t master_seed,
                                     std::size_t cell_index = 0, unsigned threads = 1) {
  const auto start = std::chrono::steady_clock::now();
  CellSummary s = summarize(cell, run_learning_trials(cell, trials, master_seed, cell_index, threads));
  s.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return s;
}

struct ExperimentReport {
  std::uint64_t master_seed = 0;
  std::vector<CellSummary> rows;
  /// For scans: N(n2)/N(n1) <= 1.1 ln(n2)/ln(n1) on every pair n1 < n2 with n1 >= 2.
  std::optional<bool> log_scaling_ok;
};

/// Checks N(n2)/N(n1) <= 1.1 * ln(n2^d)/ln(n1^d) for every ordered pair of rows.
inline bool log_scaling_holds(const std::vector<CellSummary>& rows) {
  for (const auto& r1 : rows) {
    for (const auto& r2 : rows) {
      if (r1.cell.n < 2 || r2.cell.n <= r1.cell.n) continue;
      const double ratio = static_cast<double>(r2.samples) / static_cast<double>(r1.samples);
      const double allowed = 1.1 * std::log(static_cast<double>(r2.cell.n)) / std::log(static_cast<double>(r1.cell.n));
      if (ratio > allowed) return false;
    }
  }
  return true;
}

/// One cell per n with d, eps, delta fixed. The BH learner runs at the theorem-2
/// proof-form count, whose only n-dependence is ln(sum_{k<=d} C(n,k)).
inline ExperimentReport scan_log_n(std::size_t d, double eps, double delta, const std::vector<std::size_t>& n_list,
                                   Algorithm algorithm, const TargetSpec& target, std::size_t trials,
                                   std::uint64_t master_seed, std::optional<BHConstantModel> model = std::nullopt,
                                   unsigned threads = 1) {
  detail::require(!n_list.empty(), "scan needs at least one n");
  ExperimentReport rep;
  rep.master_seed = master_seed;
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    LearningCell cell;
    cell.n = n_list[i];
    cell.d = d;
    cell.eps = eps;
    cell.delta = delta;
    cell.algorithm = algorithm;
    cell.bh_model = model;
    cell.target = target;
    if (algorithm == Algorithm::BH) {
      cell.sample_override = theorem2_sample_count(cell.n, d, eps, delta, cell.model()).proof_form;
    }
    rep.rows.push_back(run_learning_cell(cell, trials, master_seed, i, threads));
  }
  rep.log_scaling_ok = log_scaling_holds(rep.rows);
  return rep;
}

struct CollisionResult {
  std::size_t n = 0;
  std::size_t samples = 0;
  std::size_t trials = 0;
  std::size_t hits = 0;
  double frequency = 0.0;
  double exact = 0.0;  // 2^-N
  double band = 0.0;   // 3 sqrt(p (1-p) / trials)

  [[nodiscard]] bool within_band() const noexcept { return std::abs(frequency - exact) <= band; }
};

namespace detail {

/// True iff all points of a seeded draw agree on coordinates 1 and 2.
inline bool collision_draw(std::size_t n, std::size_t count, std::uint64_t seed, std::vector<PointMask>* out) {
  Rng rng(seed);
  bool all = true;
  for (std::size_t j = 0; j < count; ++j) {
    PointMask x = rng.uniform_point(n);
    all = all && (x.test(0) == x.test(1));
    if (out) out->push_back(std::move(x));
  }
  return all;
}

}  // namespace detail

/// Frequency of {X_j(1) = X_j(2) for all j} over seeded trials, against its exact value 2^-N.
inline CollisionResult collision_experiment(std::size_t n, std::size_t count, std::size_t trials, std::uint64_t seed,
                                            unsigned threads = 1) {
  detail::require(n >= 2, "collision experiment needs n >= 2");
  detail::require(trials >= 1, "need at least one trial");
  std::vector<char> hit(trials, 0);
  parallel_for(trials, threads, [&](std::size_t t) {
    hit[t] = detail::collision_draw(n, count, derive_seed(seed, {t}), nullptr) ? 1 : 0;
  });
  CollisionResult r;
  r.n = n;
  r.samples = count;
  r.trials = trials;
  r.hits = static_cast<std::size_t>(std::count(hit.begin(), hit.end(), 1));
  r.frequency = static_cast<double>(r.hits) / static_cast<double>(trials);
  r.exact = std::ldexp(1.0, -static_cast<int>(std::min<std::size_t>(count, 2000)));
  r.band = 3.0 * std::sqrt(r.exact * (1.0 - r.exact) / static_cast<double>(trials));
  return r;
}

/// An input on which x -> x_1 and x -> x_2 produce the same examples.
struct IndistinguishabilityWitness {
  std::size_t attempts = 0;
  std::vector<PointMask> points;
  std::vector<double> values_r1;  // X_j(1) as +-1
  std::vector<double> values_r2;  // X_j(2) as +-1
  bool lists_identical = false;
  double l2_sq_gap = 0.0;  // E(r1 - r2)^2, exactly 2
};

/// Searches draws seeded derive_seed(seed, {k}), k < budget, for one inside the collision event.
inline std::optional<IndistinguishabilityWitness> indistinguishability_check(std::size_t n, std::size_t count,
                                                                              std::uint64_t seed,
                                                                              std::size_t budget = 1u << 20) {
  detail::require(n >= 2, "indistinguishability needs n >= 2");
  const SubsetMask e1 = SubsetMask::from_positions(n, {0});
  const SubsetMask e2 = SubsetMask::from_positions(n, {1});
  for (std::size_t k = 0; k < budget; ++k) {
    std::vector<PointMask> pts;
    if (!detail::collision_draw(n, count, derive_seed(seed, {k}), &pts)) continue;
    IndistinguishabilityWitness w;
    w.attempts = k + 1;
    for (const auto& x : pts) {
      w.values_r1.push_back(evaluate_character(e1, x));
      w.values_r2.push_back(evaluate_character(e2, x));
    }
    w.points = std::move(pts);
    w.lists_identical = w.values_r1 == w.values_r2;
    CoefficientMap r1(n);
    r1.set(e1, 1.0);
    CoefficientMap r2(n);
    r2.set(e2, 1.0);
    w.l2_sq_gap = l2_squared_distance(r1, r2);
    return w;
  }
  return std::nullopt;
}

struct AuditCorpus {
  enum class Kind { Random, Characters };
  Kind kind = Kind::Random;
  std::size_t n = 8;
  std::size_t d = 2;
  std::size_t count = 100;
  double kappa = 1.0;
};

/// Observed values against each growth bound. "Certified" bounds are theorems for every d;
/// the BH constant for d >= 2 and the l1 bound for levels >= 2 rest on the heuristic kappa
/// and are only recorded.
struct AuditReport {
  std::size_t functions = 0;
  double max_bh_ratio = 0.0;
  double bh_model_bound = 1.0;
  std::size_t bh_certified_violations = 0;  // degree <= 1
  std::size_t bh_recorded_exceedances = 0;  // degree >= 2
  std::size_t markov_violations = 0;
  std::size_t weak_violations = 0;
  std::size_t l1_certified_violations = 0;  // level 1
  std::size_t l1_recorded_exceedances = 0;  // levels >= 2
  double min_markov_slack = std::numeric_limits<double>::infinity();
  double min_weak_slack = std::numeric_limits<double>::infinity();
  double min_l1_slack = std::numeric_limits<double>::infinity();

  [[nodiscard]] std::size_t certified_violations() const noexcept {
    return bh_certified_violations + markov_violations + weak_violations + l1_certified_violations;
  }
};

inline constexpr double kAuditTolerance = 1e-9;

namespace detail {

struct FunctionAudit {
  double bh_ratio = 0.0;
  double model_bound = 1.0;
  std::size_t degree = 0;
  std::vector<double> markov_slack;  // per level, bound * sup - observed
  std::vector<double> weak_slack;
  std::vector<double> l1_slack;
};

inline FunctionAudit audit_function(const CoefficientMap& c, const TruthTable& f, std::size_t d, double kappa) {
  FunctionAudit a;
  const double sup = linf_norm(f);
  a.degree = degree(c);
  a.bh_ratio = bh_ratio(c, f);
  a.model_bound = dmp_constant_bound(std::max<std::size_t>(1, a.degree), kappa);
  for (std::size_t l = 1; l <= d; ++l) {
    const CoefficientMap rad = rademacher_projection(c, l);
    const double rad_sup = linf_norm(to_truth_table(rad));
    a.markov_slack.push_back(markov_level_bound(d, l) * sup - rad_sup);
    a.weak_slack.push_back(weak_level_bound(d, l) * sup - rad_sup);
    a.l1_slack.push_back(level_l1_bound(c.dimension(), d, l, kappa) * sup - lp_fourier_norm(rad, 1.0));
  }
  return a;
}

}  // namespace detail

inline AuditReport bounds_audit(const AuditCorpus& corpus, std::uint64_t seed, unsigned threads = 1) {
  detail::require(corpus.d >= 1 && corpus.d <= corpus.n, "audit needs 1 <= d <= n");
  detail::require_dense(corpus.n, kDefaultDenseCap);
  std::vector<SubsetMask> characters;
  std::size_t count = corpus.count;
  if (corpus.kind == AuditCorpus::Kind::Characters) {
    characters = enumerate_low_subsets(corpus.n, corpus.d);
    count = std::min(count, characters.size());
  }
  std::vector<detail::FunctionAudit> per(count);
  parallel_for(count, threads, [&](std::size_t i) {
    const Target t = corpus.kind == AuditCorpus::Kind::Characters
                         ? character_oracle(corpus.n, characters[i])
                         : random_bounded_low_degree(corpus.n, corpus.d, derive_seed(seed, {i}));
    per[i] = detail::audit_function(t.truth, *t.table, corpus.d, corpus.kappa);
  });

  AuditReport rep;
  rep.functions = count;
  rep.bh_model_bound = dmp_constant_bound(corpus.d, corpus.kappa);
  for (const auto& a : per) {
    rep.max_bh_ratio = std::max(rep.max_bh_ratio, a.bh_ratio);
    if (a.bh_ratio > a.model_bound + kAuditTolerance) {
      (a.degree <= 1 ? rep.bh_certified_violations : rep.bh_recorded_exceedances) += 1;
    }
    for (std::size_t l = 0; l < a.markov_slack.size(); ++l) {
      if (a.markov_slack[l] < -kAuditTolerance) ++rep.markov_violations;
      if (a.weak_slack[l] < -kAuditTolerance) ++rep.weak_violations;
      if (a.l1_slack[l] < -kAuditTolerance) (l == 0 ? rep.l1_certified_violations : rep.l1_recorded_exceedances) += 1;
      rep.min_markov_slack = std::min(rep.min_markov_slack, a.markov_slack[l]);
      rep.min_weak_slack = std::min(rep.min_weak_slack, a.weak_slack[l]);
      rep.min_l1_slack = std::min(rep.min_l1_slack, a.l1_slack[l]);
    }
  }
  return rep;
}

}  // namespace bhlearn

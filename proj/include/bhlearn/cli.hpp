#pragma once

// The `bhlearn` command line. Subcommands:
//   learn        per-trial learning runs         trial,N,b,a,support_size,queries_used,l2_sq_error,success,good_event
//   scan         success rate across n            n,d,eps,delta,algo,N,trials,successes,success_rate,success_floor,
//                                                 good_events,mean_l2_sq_error,mean_support_size,mean_queries
//   bounds       level bounds for one degree      d,l,markov_bound,weak_bound,bh_exponent,dmp_bound_kappa
//   bh-estimate  empirical BH constant            n,d,trials,seed,max_ratio
//   collision    collision event and witness      n,N,trials,seed,hits,frequency,exact,band,within_band,
//                                                 witness_found,witness_attempts,witness_identical,l2_sq_gap
//   audit        growth-bound audit of a corpus   (see kAuditHeader)
//   budgets      sample-count formulas            formula,N,detail
//
// Exit codes: 0 success, 1 runtime failure, 2 usage error. Every randomized subcommand
// requires --seed. `--config <file>` reads `key=value` lines (# comments); keys are
// long flag names, and flags given on the command line win.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bhlearn/csv.hpp"
#include "bhlearn/experiment.hpp"
#include "bhlearn/growth_bounds.hpp"
#include "bhlearn/learner.hpp"
#include "bhlearn/parallel.hpp"

namespace bhlearn::cli {

/// A usage problem found after flag parsing (cross-flag constraints); exits with 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline CLI::Validator open_unit_interval() {
  return CLI::Validator(
      [](std::string& s) -> std::string {
        double v = 0.0;
        try {
          v = parse_double(s);
        } catch (const std::exception&) {
          return "value " + s + " is not a number";
        }
        if (!(v > 0.0 && v < 1.0)) return "value " + s + " not in range (0,1)";
        return {};
      },
      "(0,1)");
}

inline CLI::Validator bh_model_validator() {
  return CLI::Validator(
      [](std::string& s) -> std::string {
        try {
          (void)BHConstantModel::parse(s);
        } catch (const std::exception& e) {
          return e.what();
        }
        return {};
      },
      "unit|dmp:<kappa>|explicit:<v>");
}

inline CLI::Validator target_validator() {
  return CLI::Validator(
      [](std::string& s) -> std::string {
        try {
          (void)TargetSpec::parse(s);
        } catch (const std::exception& e) {
          return e.what();
        }
        return {};
      },
      "character[:<hex>]|random[:<seed>]|majority");
}

/// Parses `key=value` lines; blank lines and `#` comments are skipped.
inline std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("--config: cannot open '" + path + "'");
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  std::size_t lineno = 0;
  const auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError("--config: line " + std::to_string(lineno) + " is not key=value");
    }
    out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return out;
}

/// Splices config entries into args as `--key value` unless `--key` was given explicitly.
inline std::vector<std::string> apply_config(std::vector<std::string> args) {
  std::optional<std::string> path;
  std::vector<std::string> kept;
  std::set<std::string> given;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "--config" && i + 1 < args.size()) {
      path = args[++i];
      continue;
    }
    if (a.starts_with("--config=")) {
      path = a.substr(9);
      continue;
    }
    if (a.starts_with("--")) given.insert(a.substr(0, a.find('=')));
    kept.push_back(a);
  }
  if (!path) return kept;
  for (const auto& [key, value] : read_config(*path)) {
    const std::string flag = "--" + key;
    if (given.contains(flag)) continue;
    kept.push_back(flag);
    kept.push_back(value);
  }
  return kept;
}

class Output {
 public:
  Output(std::ostream& fallback, const std::string& path) : os_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::runtime_error("cannot open output file '" + path + "'");
      os_ = file_.get();
    }
  }
  std::ostream& stream() { return *os_; }
  [[nodiscard]] bool to_file() const { return file_ != nullptr; }

 private:
  std::ostream* os_;
  std::unique_ptr<std::ofstream> file_;
};

inline std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(static_cast<std::size_t>(parse_u64(item)));
    } catch (const std::exception&) {
      throw UsageError("--n-list: '" + item + "' is not a nonnegative integer");
    }
  }
  if (out.empty()) throw UsageError("--n-list: needs at least one value");
  return out;
}

inline void require_usage(bool ok, const std::string& msg) {
  if (!ok) throw UsageError(msg);
}

}  // namespace detail

inline constexpr const char* kAuditHeader =
    "corpus,n,d,count,kappa,seed,max_bh_ratio,bh_model_bound,bh_certified_violations,bh_recorded_exceedances,"
    "markov_violations,weak_violations,l1_certified_violations,l1_recorded_exceedances,min_markov_slack,"
    "min_weak_slack,min_l1_slack";

/// Runs one invocation; argv[0] is the program name.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);

  CLI::App app{"Learning bounded low-degree functions on the hypercube", "bhlearn"};
  app.require_subcommand(1);

  // learn
  struct {
    std::size_t n = 0, d = 0, trials = 1;
    double eps = 0, delta = 0, C = 1.0;
    std::string algo = "bh", bh_model, target = "random", out;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> n_override;
  } learn;
  auto* learn_cmd = app.add_subcommand("learn", "Run learning trials and print one CSV row per trial");
  learn_cmd->add_option("--n", learn.n, "Dimension")->required()->check(CLI::Range(std::size_t{1}, kMaxMaskDimension));
  learn_cmd->add_option("--d", learn.d, "Degree bound")->required()->check(CLI::PositiveNumber);
  learn_cmd->add_option("--eps", learn.eps, "Accuracy in (0,1)")->required()->check(detail::open_unit_interval());
  learn_cmd->add_option("--delta", learn.delta, "Confidence in (0,1)")->required()->check(detail::open_unit_interval());
  learn_cmd->add_option("--algo", learn.algo, "bh | lmn | auto")->check(CLI::IsMember({"bh", "lmn", "auto"}));
  learn_cmd->add_option("--bh-model", learn.bh_model, "unit | dmp:<kappa> | explicit:<v>")->check(detail::bh_model_validator());
  learn_cmd->add_option("--target", learn.target, "character:<hex> | random:<seed> | random | majority")
      ->check(detail::target_validator());
  learn_cmd->add_option("--seed", learn.seed, "Master seed")->required();
  learn_cmd->add_option("--trials", learn.trials, "Number of trials")->check(CLI::PositiveNumber);
  learn_cmd->add_option("--C", learn.C, "Theorem-1 constant used by --algo auto")->check(CLI::NonNegativeNumber);
  learn_cmd->add_option("--n-override", learn.n_override, "Replace the sample count")->check(CLI::PositiveNumber);
  learn_cmd->add_option("--out", learn.out, "Write CSV here instead of stdout");
  learn_cmd->add_option("--config", "key=value file");

  // scan
  struct {
    std::size_t d = 0, trials = 100;
    double eps = 0, delta = 0;
    std::string n_list, algo = "bh", bh_model, target = "character", out;
    std::uint64_t seed = 0;
    bool timing = false;
  } scan;
  auto* scan_cmd = app.add_subcommand("scan", "Success rate across dimensions at fixed d, eps, delta");
  scan_cmd->add_option("--d", scan.d, "Degree bound")->required()->check(CLI::PositiveNumber);
  scan_cmd->add_option("--eps", scan.eps, "Accuracy in (0,1)")->required()->check(detail::open_unit_interval());
  scan_cmd->add_option("--delta", scan.delta, "Confidence in (0,1)")->required()->check(detail::open_unit_interval());
  scan_cmd->add_option("--n-list", scan.n_list, "Comma-separated dimensions")->required();
  scan_cmd->add_option("--algo", scan.algo, "bh | lmn | auto")->check(CLI::IsMember({"bh", "lmn", "auto"}));
  scan_cmd->add_option("--bh-model", scan.bh_model, "unit | dmp:<kappa> | explicit:<v>")->check(detail::bh_model_validator());
  scan_cmd->add_option("--target", scan.target, "character | random")->check(CLI::IsMember({"character", "random"}));
  scan_cmd->add_option("--trials", scan.trials, "Trials per dimension")->check(CLI::PositiveNumber);
  scan_cmd->add_option("--seed", scan.seed, "Master seed")->required();
  scan_cmd->add_option("--out", scan.out, "Write CSV here instead of stdout");
  scan_cmd->add_flag("--timing", scan.timing, "Append a wall_time_s column (not reproducible)");
  scan_cmd->add_option("--config", "key=value file");

  // bounds
  struct {
    std::size_t d = 0;
    double kappa = 1.0;
    std::string out;
  } bounds;
  auto* bounds_cmd = app.add_subcommand("bounds", "Level bounds for l = 1..d");
  bounds_cmd->add_option("--d", bounds.d, "Degree")->required()->check(CLI::Range(std::size_t{1}, std::size_t{52}));
  bounds_cmd->add_option("--kappa", bounds.kappa, "Heuristic BH exponent constant")->check(CLI::NonNegativeNumber);
  bounds_cmd->add_option("--out", bounds.out, "Write CSV here instead of stdout");
  bounds_cmd->add_option("--config", "key=value file");

  // bh-estimate
  struct {
    std::size_t n = 0, d = 0, trials = 1000;
    std::uint64_t seed = 0;
    std::string out;
  } est;
  auto* est_cmd = app.add_subcommand("bh-estimate", "Empirical lower bound on the BH constant");
  est_cmd->add_option("--n", est.n, "Dimension")->required()->check(CLI::Range(std::size_t{1}, kDefaultDenseCap));
  est_cmd->add_option("--d", est.d, "Degree")->required()->check(CLI::PositiveNumber);
  est_cmd->add_option("--trials", est.trials, "Random functions")->check(CLI::NonNegativeNumber);
  est_cmd->add_option("--seed", est.seed, "Master seed")->required();
  est_cmd->add_option("--out", est.out, "Write CSV here instead of stdout");
  est_cmd->add_option("--config", "key=value file");

  // collision
  struct {
    std::size_t n = 2, samples = 0, trials = 100000, budget = 1u << 20;
    std::uint64_t seed = 0;
    std::string out;
  } col;
  auto* col_cmd = app.add_subcommand("collision", "Probability that all samples agree on coordinates 1 and 2");
  col_cmd->add_option("--n", col.n, "Dimension (>= 2)")->check(CLI::Range(std::size_t{2}, kMaxMaskDimension));
  col_cmd->add_option("--N", col.samples, "Samples per trial")->required()->check(CLI::Range(std::size_t{0}, std::size_t{64}));
  col_cmd->add_option("--trials", col.trials, "Trials")->check(CLI::PositiveNumber);
  col_cmd->add_option("--budget", col.budget, "Witness search budget")->check(CLI::PositiveNumber);
  col_cmd->add_option("--seed", col.seed, "Master seed")->required();
  col_cmd->add_option("--out", col.out, "Write CSV here instead of stdout");
  col_cmd->add_option("--config", "key=value file");

  // audit
  struct {
    std::size_t n = 0, d = 0, count = 500;
    double kappa = 1.0;
    std::string corpus = "random", out;
    std::uint64_t seed = 0;
  } aud;
  auto* aud_cmd = app.add_subcommand("audit", "Check the growth bounds on a function corpus");
  aud_cmd->add_option("--n", aud.n, "Dimension")->required()->check(CLI::Range(std::size_t{1}, kDefaultDenseCap));
  aud_cmd->add_option("--d", aud.d, "Degree bound")->required()->check(CLI::PositiveNumber);
  aud_cmd->add_option("--count", aud.count, "Functions")->check(CLI::PositiveNumber);
  aud_cmd->add_option("--corpus", aud.corpus, "random | characters")->check(CLI::IsMember({"random", "characters"}));
  aud_cmd->add_option("--kappa", aud.kappa, "Heuristic BH exponent constant")->check(CLI::NonNegativeNumber);
  aud_cmd->add_option("--seed", aud.seed, "Master seed")->required();
  aud_cmd->add_option("--out", aud.out, "Write CSV here instead of stdout");
  aud_cmd->add_option("--config", "key=value file");

  // budgets
  struct {
    std::size_t n = 0, d = 0;
    double eps = 0, delta = 0, C = 1.0;
    std::string bh_model, out;
  } bud;
  auto* bud_cmd = app.add_subcommand("budgets", "Compare the sample-count formulas");
  bud_cmd->add_option("--n", bud.n, "Dimension")->required()->check(CLI::PositiveNumber);
  bud_cmd->add_option("--d", bud.d, "Degree bound")->required()->check(CLI::PositiveNumber);
  bud_cmd->add_option("--eps", bud.eps, "Accuracy in (0,1)")->required()->check(detail::open_unit_interval());
  bud_cmd->add_option("--delta", bud.delta, "Confidence in (0,1)")->required()->check(detail::open_unit_interval());
  bud_cmd->add_option("--bh-model", bud.bh_model, "unit | dmp:<kappa> | explicit:<v>")->check(detail::bh_model_validator());
  bud_cmd->add_option("--C", bud.C, "Theorem-1 constant")->check(CLI::NonNegativeNumber);
  bud_cmd->add_option("--out", bud.out, "Write CSV here instead of stdout");
  bud_cmd->add_option("--config", "key=value file");

  try {
    std::vector<std::string> expanded = detail::apply_config(args);
    std::reverse(expanded.begin(), expanded.end());
    app.parse(expanded);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  const unsigned threads = default_thread_count();
  try {
    if (learn_cmd->parsed()) {
      detail::require_usage(learn.d <= learn.n, "--d: must not exceed --n");
      LearningCell cell;
      cell.n = learn.n;
      cell.d = learn.d;
      cell.eps = learn.eps;
      cell.delta = learn.delta;
      cell.algorithm = parse_algorithm(learn.algo);
      if (!learn.bh_model.empty()) cell.bh_model = BHConstantModel::parse(learn.bh_model);
      cell.theorem1_C = learn.C;
      cell.sample_override = learn.n_override;
      cell.target = TargetSpec::parse(learn.target);
      if (cell.target.needs_dense()) {
        detail::require_usage(cell.n <= kDefaultDenseCap,
                              "--target: dense targets need --n <= " + std::to_string(kDefaultDenseCap));
      }
      if (cell.target.kind == TargetSpec::Kind::Character) {
        try {
          const SubsetMask s = SubsetMask::from_hex(cell.n, cell.target.hex);
          detail::require_usage(s.count() <= cell.d, "--target: character degree exceeds --d");
        } catch (const InvalidArgument& e) {
          throw UsageError(std::string("--target: ") + e.what());
        }
      }
      const auto records = run_learning_trials(cell, learn.trials, learn.seed, 0, threads);
      detail::Output o(out, learn.out);
      write_csv_header(o.stream(),
                       {"trial", "N", "b", "a", "support_size", "queries_used", "l2_sq_error", "success", "good_event"});
      for (const auto& r : records) {
        CsvRow row;
        row << r.trial << r.samples << r.b << r.a << r.support_size << r.queries_used << r.l2_sq_error << r.success
            << r.good_event;
        row.write(o.stream());
      }
      if (o.to_file()) {
        const CellSummary s = summarize(cell, records);
        out << "learn: algo=" << to_string(cell.algorithm) << " trials=" << s.trials << " successes=" << s.successes
            << " success_rate=" << format_double(s.success_rate()) << " good_events=" << s.good_events
            << " mean_l2_sq_error=" << format_double(s.mean_l2_sq_error) << '\n';
      }
      return 0;
    }

    if (scan_cmd->parsed()) {
      const auto n_list = detail::parse_size_list(scan.n_list);
      for (std::size_t n : n_list) {
        detail::require_usage(n >= scan.d, "--n-list: every n must be >= --d");
        detail::require_usage(n <= kMaxMaskDimension, "--n-list: n exceeds mask limit");
        if (scan.target == "random") {
          detail::require_usage(n <= kDefaultDenseCap, "--target random needs every n <= " +
                                                           std::to_string(kDefaultDenseCap));
        }
      }
      std::optional<BHConstantModel> model;
      if (!scan.bh_model.empty()) model = BHConstantModel::parse(scan.bh_model);
      const ExperimentReport rep = scan_log_n(scan.d, scan.eps, scan.delta, n_list, parse_algorithm(scan.algo),
                                              TargetSpec::parse(scan.target), scan.trials, scan.seed, model, threads);
      detail::Output o(out, scan.out);
      CsvRow header;
      for (const char* h : {"n", "d", "eps", "delta", "algo", "N", "trials", "successes", "success_rate",
                            "success_floor", "good_events", "mean_l2_sq_error", "mean_support_size", "mean_queries"}) {
        header << h;
      }
      if (scan.timing) header << "wall_time_s";
      header.write(o.stream());
      for (const auto& r : rep.rows) {
        CsvRow row;
        row << r.cell.n << r.cell.d << r.cell.eps << r.cell.delta << to_string(r.cell.algorithm) << r.samples
            << r.trials << r.successes << r.success_rate() << three_sigma_floor(1.0 - r.cell.delta, r.trials)
            << r.good_events << r.mean_l2_sq_error << r.mean_support_size << r.mean_queries;
        if (scan.timing) row << r.wall_seconds;
        row.write(o.stream());
      }
      if (o.to_file()) out << "scan: rows=" << rep.rows.size() << " log_scaling_ok=" << (*rep.log_scaling_ok ? 1 : 0) << '\n';
      return 0;
    }

    if (bounds_cmd->parsed()) {
      detail::Output o(out, bounds.out);
      write_csv_header(o.stream(), {"d", "l", "markov_bound", "weak_bound", "bh_exponent", "dmp_bound_kappa"});
      for (std::size_t l = 1; l <= bounds.d; ++l) {
        CsvRow row;
        row << bounds.d << l << markov_level_bound(bounds.d, l) << weak_level_bound(bounds.d, l)
            << bh_exponent(bounds.d) << dmp_constant_bound(bounds.d, bounds.kappa);
        row.write(o.stream());
      }
      return 0;
    }

    if (est_cmd->parsed()) {
      detail::require_usage(est.d <= est.n, "--d: must not exceed --n");
      const double value = estimate_bh_constant(est.n, est.d, est.trials, est.seed, threads);
      detail::Output o(out, est.out);
      write_csv_header(o.stream(), {"n", "d", "trials", "seed", "max_ratio"});
      CsvRow row;
      row << est.n << est.d << est.trials << est.seed << value;
      row.write(o.stream());
      return 0;
    }

    if (col_cmd->parsed()) {
      const CollisionResult r = collision_experiment(col.n, col.samples, col.trials, col.seed, threads);
      const auto w = indistinguishability_check(col.n, col.samples, col.seed, col.budget);
      detail::Output o(out, col.out);
      write_csv_header(o.stream(), {"n", "N", "trials", "seed", "hits", "frequency", "exact", "band", "within_band",
                                    "witness_found", "witness_attempts", "witness_identical", "l2_sq_gap"});
      CsvRow row;
      row << r.n << r.samples << r.trials << col.seed << r.hits << r.frequency << r.exact << r.band << r.within_band()
          << w.has_value() << (w ? w->attempts : std::size_t{0}) << (w ? w->lists_identical : false)
          << (w ? w->l2_sq_gap : 0.0);
      row.write(o.stream());
      return 0;
    }

    if (aud_cmd->parsed()) {
      detail::require_usage(aud.d <= aud.n, "--d: must not exceed --n");
      AuditCorpus corpus;
      corpus.kind = aud.corpus == "characters" ? AuditCorpus::Kind::Characters : AuditCorpus::Kind::Random;
      corpus.n = aud.n;
      corpus.d = aud.d;
      corpus.count = aud.count;
      corpus.kappa = aud.kappa;
      const AuditReport r = bounds_audit(corpus, aud.seed, threads);
      detail::Output o(out, aud.out);
      o.stream() << kAuditHeader << '\n';
      CsvRow row;
      row << aud.corpus << aud.n << aud.d << r.functions << aud.kappa << aud.seed << r.max_bh_ratio
          << r.bh_model_bound << r.bh_certified_violations << r.bh_recorded_exceedances << r.markov_violations
          << r.weak_violations << r.l1_certified_violations << r.l1_recorded_exceedances << r.min_markov_slack
          << r.min_weak_slack << r.min_l1_slack;
      row.write(o.stream());
      return r.certified_violations() == 0 ? 0 : 1;
    }

    if (bud_cmd->parsed()) {
      detail::require_usage(bud.d <= bud.n, "--d: must not exceed --n");
      const BHConstantModel model =
          bud.bh_model.empty() ? BHConstantModel::learning_default(bud.d) : BHConstantModel::parse(bud.bh_model);
      const Theorem2Counts t2 = theorem2_sample_count(bud.n, bud.d, bud.eps, bud.delta, model);
      const Theorem1Count t1 = theorem1_sample_count(bud.n, bud.d, bud.eps, bud.delta, bud.C);
      const std::uint64_t nb = sample_count_for_b(bud.n, bud.d, bud.delta, choose_b(bud.eps, bud.d, model));
      detail::Output o(out, bud.out);
      write_csv_header(o.stream(), {"formula", "N", "detail"});
      const auto emit = [&](const char* name, std::uint64_t n, const std::string& detail) {
        CsvRow row;
        row << name << n << detail;
        row.write(o.stream());
      };
      emit("lmn", lmn_sample_count(bud.n, bud.d, bud.eps, bud.delta), "2n^d/eps*ln(2n^d/delta)");
      emit("theorem2_statement", t2.statement_form, "bh_model=" + model.to_string());
      emit("theorem2_proof", t2.proof_form, "bh_model=" + model.to_string() + ";learner_N_b=" + std::to_string(nb));
      emit("theorem1", t1.count,
           std::string("branch=") + (t1.branch == Theorem1Branch::BohnenblustHille ? "bh" : "lmn") +
               ";C=" + format_double(bud.C));
      return 0;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace bhlearn::cli

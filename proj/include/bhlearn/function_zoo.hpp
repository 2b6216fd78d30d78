#pragma once

// Target functions and the query oracles through which learners see them.

#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <istream>
#include <memory>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "bhlearn/combinatorics.hpp"
#include "bhlearn/errors.hpp"
#include "bhlearn/hypercube.hpp"
#include "bhlearn/rng.hpp"
#include "bhlearn/text_format.hpp"

namespace bhlearn {

/// A hidden function f: {-1,1}^n -> [-1,1] of degree at most `degree_bound`, observable
/// only point by point. Every query bumps an atomic tally.
class QueryOracle {
 public:
  using Procedure = std::function<double(const PointMask&)>;

  QueryOracle(std::size_t n, std::size_t degree_bound, Procedure procedure)
      : n_(n), degree_bound_(degree_bound), procedure_(std::make_shared<const Procedure>(std::move(procedure))) {
    detail::require(*procedure_ != nullptr, "oracle needs a query procedure");
    detail::require(degree_bound <= n, "oracle degree bound exceeds dimension");
  }

  QueryOracle(QueryOracle&& other) noexcept
      : n_(other.n_),
        degree_bound_(other.degree_bound_),
        procedure_(std::move(other.procedure_)),
        counter_(other.counter_.load()) {}
  QueryOracle& operator=(QueryOracle&& other) noexcept {
    n_ = other.n_;
    degree_bound_ = other.degree_bound_;
    procedure_ = std::move(other.procedure_);
    counter_.store(other.counter_.load());
    return *this;
  }
  QueryOracle(const QueryOracle&) = delete;
  QueryOracle& operator=(const QueryOracle&) = delete;

  /// A fresh oracle for the same function with its counter at zero.
  [[nodiscard]] QueryOracle fresh() const { return QueryOracle(n_, degree_bound_, procedure_); }

  double query(const PointMask& x) const {
    detail::require_same_dimension(n_, x.dimension());
    const double v = (*procedure_)(x);
    if (!(std::abs(v) <= 1.0)) throw InvalidArgument("oracle value outside [-1,1]");
    counter_.fetch_add(1, std::memory_order_relaxed);
    return v;
  }

  [[nodiscard]] std::size_t dimension() const noexcept { return n_; }
  [[nodiscard]] std::size_t degree_bound() const noexcept { return degree_bound_; }
  [[nodiscard]] std::uint64_t queries() const noexcept { return counter_.load(std::memory_order_relaxed); }
  void reset_counter() noexcept { counter_.store(0); }

 private:
  // Shares the procedure; used by fresh().
  QueryOracle(std::size_t n, std::size_t d, std::shared_ptr<const Procedure> p)
      : n_(n), degree_bound_(d), procedure_(std::move(p)) {}

  std::size_t n_;
  std::size_t degree_bound_;
  std::shared_ptr<const Procedure> procedure_;
  mutable std::atomic<std::uint64_t> counter_{0};
};

/// An oracle together with its exact expansion; `table` is set when the target is dense.
struct Target {
  QueryOracle oracle;
  CoefficientMap truth;
  std::shared_ptr<const TruthTable> table;
};

struct QuerySample {
  PointMask point;
  double value;

  friend bool operator==(const QuerySample&, const QuerySample&) = default;
};

/// Draws one coefficient; the default law is uniform on [-1,1].
using CoefficientLaw = std::function<double(Rng&)>;

inline double uniform_coefficient(Rng& rng) { return rng.uniform_pm1(); }

namespace detail {

inline QueryOracle table_oracle(std::shared_ptr<const TruthTable> table, std::size_t degree_bound) {
  const std::size_t n = table->dimension();
  return QueryOracle(n, degree_bound, [t = std::move(table)](const PointMask& x) { return (*t)[x.to_index()]; });
}

}  // namespace detail

/// f = w_S; Boolean, degree |S|. Works for any n (no dense table).
inline Target character_oracle(std::size_t n, const SubsetMask& s) {
  detail::require_same_dimension(n, s.dimension());
  CoefficientMap truth(n);
  truth.set(s, 1.0);
  std::shared_ptr<const TruthTable> table;
  if (n <= kDefaultDenseCap) table = std::make_shared<const TruthTable>(character_table(s));
  return Target{QueryOracle(n, s.count(), [s](const PointMask& x) { return evaluate_character(s, x); }),
                std::move(truth), std::move(table)};
}

inline constexpr int kTargetRetries = 16;

/// Random degree-<=d function normalized to sup norm exactly 1. Coefficients for every
/// |S| <= d are drawn in enumerate_low_subsets order from Rng(derive_seed(seed, {attempt}));
/// an all-zero draw moves to the next attempt.
inline Target random_bounded_low_degree(std::size_t n, std::size_t d, std::uint64_t seed,
                                        const CoefficientLaw& law = uniform_coefficient,
                                        std::size_t cap = kDefaultDenseCap) {
  detail::require_dense(n, cap);
  detail::require(d <= n, "degree bound exceeds dimension");
  const auto subsets = enumerate_low_subsets(n, d);
  for (int attempt = 0; attempt < kTargetRetries; ++attempt) {
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(attempt)}));
    CoefficientMap raw(n, d);
    for (const auto& s : subsets) raw.set(s, law(rng));
    const TruthTable table = to_truth_table(raw, cap);
    const double m = linf_norm(table);
    if (m == 0.0) continue;
    std::vector<double> values(table.values().begin(), table.values().end());
    for (double& v : values) v /= m;
    auto normalized = std::make_shared<const TruthTable>(n, std::move(values), cap);
    CoefficientMap truth(n, d);
    for (const auto& [s, v] : raw) truth.set(s, v / m);
    return Target{detail::table_oracle(normalized, d), std::move(truth), normalized};
  }
  throw UndefinedError("coefficient law produced only zero functions after " + std::to_string(kTargetRetries) +
                       " attempts");
}

/// Degree-<=d truncation of Maj_n(x) = sign(sum x_i) (sign(0) := +1), rescaled to sup norm 1.
inline Target scaled_majority_style_oracle(std::size_t n, std::size_t d, std::size_t cap = kDefaultDenseCap) {
  detail::require_dense(n, cap);
  detail::require(d <= n, "degree bound exceeds dimension");
  const TruthTable maj = TruthTable::from_function(
      n,
      [n](const PointMask& x) {
        const auto sum = static_cast<long>(n) - 2 * static_cast<long>(x.count());
        return sum >= 0 ? 1.0 : -1.0;
      },
      cap);
  CoefficientMap truncated(n, d);
  for (const auto& [s, v] : walsh_transform(maj, cap)) {
    if (s.count() <= d) truncated.set(s, v);
  }
  const TruthTable table = to_truth_table(truncated, cap);
  const double m = linf_norm(table);
  if (m == 0.0) {
    throw UndefinedError("degree-" + std::to_string(d) + " truncation of majority on n=" + std::to_string(n) +
                         " is the zero function");
  }
  std::vector<double> values(table.values().begin(), table.values().end());
  for (double& v : values) v /= m;
  auto normalized = std::make_shared<const TruthTable>(n, std::move(values), cap);
  return Target{detail::table_oracle(normalized, d), truncated.scaled(1.0 / m), normalized};
}

/// N i.i.d. uniform points from Rng(seed) with their oracle values.
inline std::vector<QuerySample> draw_samples(const QueryOracle& oracle, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<QuerySample> out;
  out.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    PointMask x = rng.uniform_point(oracle.dimension());
    const double v = oracle.query(x);
    out.push_back({std::move(x), v});
  }
  return out;
}

inline void write_samples_csv(std::ostream& os, const std::vector<QuerySample>& samples) {
  for (const auto& s : samples) os << s.point.to_hex() << ',' << format_double(s.value) << '\n';
}

inline std::vector<QuerySample> read_samples_csv(std::istream& is, std::size_t n) {
  std::vector<QuerySample> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    detail::require(comma != std::string::npos, "sample line needs '<point-hex>,<value>'");
    out.push_back({PointMask::from_hex(n, std::string_view(line).substr(0, comma)),
                   parse_double(std::string_view(line).substr(comma + 1))});
  }
  return out;
}

}  // namespace bhlearn

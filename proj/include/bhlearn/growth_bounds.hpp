#pragma once

// Fourier-growth quantities for bounded low-degree functions: the Bohnenblust-Hille
// exponent and constant models, Chebyshev-Markov level bounds, and l1 level bounds.
// Every logarithm here is natural.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "bhlearn/combinatorics.hpp"
#include "bhlearn/errors.hpp"
#include "bhlearn/function_zoo.hpp"
#include "bhlearn/hypercube.hpp"
#include "bhlearn/parallel.hpp"
#include "bhlearn/rng.hpp"
#include "bhlearn/text_format.hpp"

namespace bhlearn {

/// T_d in the monomial basis with exact 64-bit integer coefficients (ascending powers).
class ChebyshevPoly {
 public:
  [[nodiscard]] std::size_t degree() const noexcept { return coefficients_.size() - 1; }
  [[nodiscard]] const std::vector<std::int64_t>& coefficients() const noexcept { return coefficients_; }
  [[nodiscard]] std::int64_t coefficient(std::size_t power) const {
    return power < coefficients_.size() ? coefficients_[power] : 0;
  }

  // Compensated Horner; the monomial form of T_d cancels heavily on [-1,1].
  [[nodiscard]] double evaluate(double t) const noexcept {
    double s = static_cast<double>(coefficients_.back());
    double err = 0.0;
    for (std::size_t k = coefficients_.size() - 1; k-- > 0;) {
      const double p = s * t;
      const double pe = std::fma(s, t, -p);
      const double c = static_cast<double>(coefficients_[k]);
      const double sum = p + c;
      const double z = sum - p;
      const double se = (p - (sum - z)) + (c - z);
      s = sum;
      err = err * t + (pe + se);
    }
    return s + err;
  }

  friend ChebyshevPoly chebyshev(std::size_t d);

 private:
  explicit ChebyshevPoly(std::vector<std::int64_t> c) : coefficients_(std::move(c)) {}
  std::vector<std::int64_t> coefficients_;
};

/// T_0 = 1, T_1 = t, T_{k+1} = 2t T_k - T_{k-1}; CapacityError once a coefficient leaves int64 (d >= 53).
inline ChebyshevPoly chebyshev(std::size_t d) {
  const auto overflow = [d] {
    throw CapacityError("Chebyshev coefficients of degree " + std::to_string(d) + " overflow 64-bit integers");
  };
  std::vector<std::int64_t> prev{1};
  if (d == 0) return ChebyshevPoly(prev);
  std::vector<std::int64_t> cur{0, 1};
  for (std::size_t k = 1; k < d; ++k) {
    std::vector<std::int64_t> next(k + 2, 0);
    for (std::size_t i = 0; i < cur.size(); ++i) {
      std::int64_t twice = 0;
      if (__builtin_mul_overflow(cur[i], std::int64_t{2}, &twice)) overflow();
      next[i + 1] = twice;
    }
    for (std::size_t i = 0; i < prev.size(); ++i) {
      if (__builtin_sub_overflow(next[i], prev[i], &next[i])) overflow();
    }
    prev = std::move(cur);
    cur = std::move(next);
  }
  return ChebyshevPoly(std::move(cur));
}

namespace detail {

inline void require_level(std::size_t d, std::size_t level) {
  require(level >= 1 && level <= d,
          "level " + std::to_string(level) + " outside [1, " + std::to_string(d) + "]");
}

}  // namespace detail

/// |T^{(l)}(0)| / l! of T_d when d - l is even, of T_{d-1} otherwise; i.e. |coefficient of t^l|.
inline double markov_level_bound(std::size_t d, std::size_t level) {
  detail::require_level(d, level);
  const ChebyshevPoly t = chebyshev((d - level) % 2 == 0 ? d : d - 1);
  return std::abs(static_cast<double>(t.coefficient(level)));
}

/// d^l / l!.
inline double weak_level_bound(std::size_t d, std::size_t level) {
  detail::require_level(d, level);
  double r = 1.0;
  for (std::size_t i = 1; i <= level; ++i) r *= static_cast<double>(d) / static_cast<double>(i);
  return r;
}

inline double bh_exponent(std::size_t d) {
  detail::require(d >= 1, "bh_exponent needs d >= 1");
  return 2.0 * static_cast<double>(d) / (static_cast<double>(d) + 1.0);
}

/// exp(kappa sqrt(d ln d)); 1 at d = 1.
inline double dmp_constant_bound(std::size_t d, double kappa) {
  detail::require(d >= 1, "dmp_constant_bound needs d >= 1");
  detail::require(kappa >= 0.0 && std::isfinite(kappa), "kappa must be finite and nonnegative");
  if (d == 1) return 1.0;
  const double dd = static_cast<double>(d);
  return std::exp(kappa * std::sqrt(dd * std::log(dd)));
}

/// Model for the hypercube Bohnenblust-Hille constant B_d. The true value is unknown
/// beyond d = 1 (where it is 1), so learners take it as configuration.
class BHConstantModel {
 public:
  struct Unit {};
  struct DMPHeuristic {
    double kappa = 1.0;
  };
  struct Explicit {
    double value = 1.0;
  };
  using Variant = std::variant<Unit, DMPHeuristic, Explicit>;

  BHConstantModel() = default;
  BHConstantModel(Unit u) : v_(u) {}
  BHConstantModel(DMPHeuristic h) : v_(h) {
    detail::require(h.kappa > 0.0 && std::isfinite(h.kappa), "DMP heuristic needs kappa > 0");
  }
  BHConstantModel(Explicit e) : v_(e) {
    detail::require(e.value >= 1.0 && std::isfinite(e.value), "explicit BH constant must be >= 1");
  }

  static BHConstantModel unit() { return Unit{}; }
  static BHConstantModel dmp(double kappa = 1.0) { return DMPHeuristic{kappa}; }
  static BHConstantModel fixed(double value) { return Explicit{value}; }

  /// Explicit(1) for d = 1 (certified), DMPHeuristic(1) otherwise.
  static BHConstantModel learning_default(std::size_t d) { return d == 1 ? fixed(1.0) : dmp(1.0); }

  /// Parses "unit", "dmp:<kappa>" or "explicit:<value>".
  static BHConstantModel parse(std::string_view text) {
    if (text == "unit") return unit();
    if (text.starts_with("dmp:")) return dmp(parse_double(text.substr(4)));
    if (text.starts_with("explicit:")) return fixed(parse_double(text.substr(9)));
    throw InvalidArgument("unknown BH constant model '" + std::string(text) + "'");
  }

  [[nodiscard]] double operator()(std::size_t d) const {
    detail::require(d >= 1, "BH constant needs d >= 1");
    if (std::holds_alternative<Unit>(v_)) return 1.0;
    if (const auto* h = std::get_if<DMPHeuristic>(&v_)) return dmp_constant_bound(d, h->kappa);
    return std::get<Explicit>(v_).value;
  }

  [[nodiscard]] std::string to_string() const {
    if (std::holds_alternative<Unit>(v_)) return "unit";
    if (const auto* h = std::get_if<DMPHeuristic>(&v_)) return "dmp:" + format_double(h->kappa);
    return "explicit:" + format_double(std::get<Explicit>(v_).value);
  }

  [[nodiscard]] const Variant& variant() const noexcept { return v_; }

 private:
  Variant v_{};
};

/// (sum_S |f^(S)|^{2d/(d+1)})^{(d+1)/2d} / ||f||_inf with d = degree(c). A constant
/// function (d = 0) is scored with exponent 1, giving ratio 1.
inline double bh_ratio(const CoefficientMap& c, const TruthTable& f) {
  detail::require_same_dimension(c.dimension(), f.dimension());
  const double sup = linf_norm(f);
  if (sup == 0.0) throw UndefinedError("bh_ratio is undefined for the zero function");
  const std::size_t d = degree(c);
  const double p = d == 0 ? 1.0 : bh_exponent(d);
  return lp_fourier_norm(c, p) / sup;
}

/// C(n,l)^{(l-1)/(2l)} * exp(kappa sqrt(l ln l)) * d^l / l!.
inline double level_l1_bound(std::size_t n, std::size_t d, std::size_t level, double kappa) {
  detail::require_level(d, level);
  detail::require(d <= n, "level_l1_bound needs d <= n");
  const double l = static_cast<double>(level);
  const double binom = static_cast<double>(binomial(n, level));
  return std::pow(binom, (l - 1.0) / (2.0 * l)) * dmp_constant_bound(level, kappa) * weak_level_bound(d, level);
}

struct InequalitySides {
  double lhs;
  double rhs;
  [[nodiscard]] bool holds() const noexcept { return lhs <= rhs; }
};

/// (d+1)^{-d/(d+1)} + (2 + sqrt(d+1))^{2/(d+1)} versus (e^4 (d+1))^{1/(d+1)}, each
/// power taken through exp/log.
inline InequalitySides technical_inequality_check(double d) {
  detail::require(d >= 1.0 && std::isfinite(d), "technical inequality needs d >= 1");
  const double m = d + 1.0;
  const double ln_m = std::log(m);
  const double lhs = std::exp(-(d / m) * ln_m) + std::exp((2.0 / m) * std::log(2.0 + std::sqrt(m)));
  const double rhs = std::exp((4.0 + ln_m) / m);
  return {lhs, rhs};
}

/// Empirical lower bound on B_d: max of bh_ratio over `trials` random bounded degree-d
/// functions (trial t seeded by derive_seed(seed, {t})) and the character baseline 1.
inline double estimate_bh_constant(std::size_t n, std::size_t d, std::size_t trials, std::uint64_t seed,
                                   unsigned threads = 1) {
  detail::require(d <= n, "estimate_bh_constant needs d <= n");
  std::vector<double> ratios(trials, 1.0);
  parallel_for(trials, threads, [&](std::size_t t) {
    const Target target = random_bounded_low_degree(n, d, derive_seed(seed, {t}));
    ratios[t] = bh_ratio(target.truth, *target.table);
  });
  double best = 1.0;
  for (double r : ratios) best = std::max(best, r);
  return best;
}

}  // namespace bhlearn

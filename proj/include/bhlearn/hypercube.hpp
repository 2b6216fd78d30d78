#pragma once

// Exact Fourier-Walsh analysis of real functions on {-1,1}^n.
//
// A function is held either densely (TruthTable, 2^n values indexed by the packed
// point) or sparsely by its expansion f = sum_S c(S) w_S (CoefficientMap). With the
// bit convention of mask.hpp, w_S(x) = (-1)^popcount(S & x), so the transform is the
// plain Hadamard butterfly on indices.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bhlearn/errors.hpp"
#include "bhlearn/mask.hpp"

namespace bhlearn {

/// Default largest n for which dense 2^n tables are built.
inline constexpr std::size_t kDefaultDenseCap = 24;
/// Hard ceiling for any dense table regardless of caller-supplied caps.
inline constexpr std::size_t kHardDenseCap = 30;
/// Default absolute tolerance for coefficient comparisons.
inline constexpr double kCoefficientTolerance = 1e-12;

namespace detail {

inline void require_dense(std::size_t n, std::size_t cap) {
  if (n > cap || n > kHardDenseCap) {
    throw CapacityError("dense table for n=" + std::to_string(n) + " exceeds cap " +
                        std::to_string(std::min(cap, kHardDenseCap)));
  }
}

inline void require_same_dimension(std::size_t a, std::size_t b) {
  if (a != b) {
    throw InvalidArgument("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

}  // namespace detail

/// Unnormalized in-place Hadamard butterfly: v[S] <- sum_x v[x] (-1)^popcount(S & x).
/// Length must be a power of two. Applying it twice multiplies by the length.
inline void hadamard_butterfly(std::span<double> v) {
  const std::size_t len = v.size();
  for (std::size_t h = 1; h < len; h <<= 1) {
    for (std::size_t i = 0; i < len; i += h << 1) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double a = v[j];
        const double b = v[j + h];
        v[j] = a + b;
        v[j + h] = a - b;
      }
    }
  }
}

class TruthTable {
 public:
  TruthTable() = default;

  TruthTable(std::size_t n, std::vector<double> values, std::size_t cap = kDefaultDenseCap)
      : n_(n), values_(std::move(values)) {
    detail::require_dense(n, cap);
    detail::require(values_.size() == (std::size_t{1} << n),
                    "truth table for n=" + std::to_string(n) + " needs " +
                        std::to_string(std::size_t{1} << n) + " values, got " +
                        std::to_string(values_.size()));
    for (double v : values_) detail::require(std::isfinite(v), "truth table value is not finite");
  }

  template <class F>
  static TruthTable from_function(std::size_t n, F&& f, std::size_t cap = kDefaultDenseCap) {
    detail::require_dense(n, cap);
    std::vector<double> values(std::size_t{1} << n);
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = f(PointMask(n, i));
    return TruthTable(n, std::move(values), cap);
  }

  [[nodiscard]] std::size_t dimension() const noexcept { return n_; }
  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
  [[nodiscard]] double operator[](std::size_t index) const { return values_[index]; }
  [[nodiscard]] double at(const PointMask& x) const {
    detail::require_same_dimension(n_, x.dimension());
    return values_[x.to_index()];
  }

  friend bool operator==(const TruthTable&, const TruthTable&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> values_ = {0.0};
};

class CoefficientMap {
 public:
  using Entries = std::map<SubsetMask, double>;
  using const_iterator = Entries::const_iterator;

  CoefficientMap() = default;
  explicit CoefficientMap(std::size_t n, std::optional<std::size_t> max_degree = std::nullopt)
      : n_(n), max_degree_(max_degree) {
    detail::require(n <= kMaxMaskDimension, "coefficient map dimension too large");
  }

  [[nodiscard]] std::size_t dimension() const noexcept { return n_; }
  [[nodiscard]] std::optional<std::size_t> max_degree() const noexcept { return max_degree_; }
  [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
  [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }
  [[nodiscard]] const_iterator begin() const noexcept { return entries_.begin(); }
  [[nodiscard]] const_iterator end() const noexcept { return entries_.end(); }

  /// Stores c(S) = value; an exact zero erases the entry.
  void set(const SubsetMask& s, double value) {
    check_key(s);
    detail::require(std::isfinite(value), "coefficient is not finite");
    if (value == 0.0) {
      entries_.erase(s);
    } else {
      entries_.insert_or_assign(s, value);
    }
  }

  void add(const SubsetMask& s, double value) { set(s, at(s) + value); }

  [[nodiscard]] double at(const SubsetMask& s) const {
    detail::require_same_dimension(n_, s.dimension());
    const auto it = entries_.find(s);
    return it == entries_.end() ? 0.0 : it->second;
  }

  [[nodiscard]] bool contains(const SubsetMask& s) const { return entries_.contains(s); }

  /// Drops every entry with |c(S)| <= tolerance.
  void prune(double tolerance) {
    std::erase_if(entries_, [tolerance](const auto& kv) { return std::abs(kv.second) <= tolerance; });
  }

  [[nodiscard]] CoefficientMap scaled(double factor) const {
    CoefficientMap out(n_, max_degree_);
    for (const auto& [s, v] : entries_) out.set(s, v * factor);
    return out;
  }

  friend bool operator==(const CoefficientMap&, const CoefficientMap&) = default;

 private:
  void check_key(const SubsetMask& s) const {
    detail::require_same_dimension(n_, s.dimension());
    if (max_degree_ && s.count() > *max_degree_) {
      throw InvalidArgument("subset of size " + std::to_string(s.count()) + " exceeds declared degree " +
                            std::to_string(*max_degree_));
    }
  }

  std::size_t n_ = 0;
  std::optional<std::size_t> max_degree_;
  Entries entries_;
};

/// Entrywise |a(S) - b(S)| <= tolerance over the union of supports.
inline bool approx_equal(const CoefficientMap& a, const CoefficientMap& b,
                         double tolerance = kCoefficientTolerance) {
  if (a.dimension() != b.dimension()) return false;
  for (const auto& [s, v] : a) {
    if (std::abs(v - b.at(s)) > tolerance) return false;
  }
  for (const auto& [s, v] : b) {
    if (!a.contains(s) && std::abs(v) > tolerance) return false;
  }
  return true;
}

/// w_S(x) = prod_{i in S} x_i in {-1, +1}.
inline double evaluate_character(const SubsetMask& s, const PointMask& x) {
  detail::require_same_dimension(s.dimension(), x.dimension());
  return and_parity(s.words(), x.words()) ? -1.0 : 1.0;
}

inline TruthTable character_table(const SubsetMask& s, std::size_t cap = kDefaultDenseCap) {
  return TruthTable::from_function(s.dimension(), [&](const PointMask& x) { return evaluate_character(s, x); }, cap);
}

/// f^(S) = 2^-n sum_y f(y) w_S(y) for all S, via the O(n 2^n) butterfly. Exact zeros are dropped.
inline CoefficientMap walsh_transform(const TruthTable& f, std::size_t cap = kDefaultDenseCap) {
  const std::size_t n = f.dimension();
  detail::require_dense(n, cap);
  std::vector<double> v(f.values().begin(), f.values().end());
  hadamard_butterfly(v);
  const double scale = std::ldexp(1.0, -static_cast<int>(n));
  CoefficientMap out(n);
  for (std::size_t s = 0; s < v.size(); ++s) {
    if (v[s] != 0.0) out.set(SubsetMask(n, s), v[s] * scale);
  }
  return out;
}

/// sum_S c(S) w_S(x).
inline double evaluate_expansion(const CoefficientMap& c, const PointMask& x) {
  detail::require_same_dimension(c.dimension(), x.dimension());
  double sum = 0.0;
  for (const auto& [s, v] : c) sum += and_parity(s.words(), x.words()) ? -v : v;
  return sum;
}

/// Dense table of the expansion via the inverse butterfly.
inline TruthTable to_truth_table(const CoefficientMap& c, std::size_t cap = kDefaultDenseCap) {
  const std::size_t n = c.dimension();
  detail::require_dense(n, cap);
  std::vector<double> v(std::size_t{1} << n, 0.0);
  for (const auto& [s, value] : c) v[s.to_index()] = value;
  hadamard_butterfly(v);
  return TruthTable(n, std::move(v), cap);
}

/// ||h - g||_2^2 = sum_S (h^(S) - g^(S))^2 over the union of supports (Parseval).
inline double l2_squared_distance(const CoefficientMap& a, const CoefficientMap& b) {
  detail::require_same_dimension(a.dimension(), b.dimension());
  double sum = 0.0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    double diff;
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      diff = ia->second;
      ++ia;
    } else if (ia == a.end() || ib->first < ia->first) {
      diff = -ib->second;
      ++ib;
    } else {
      diff = ia->second - ib->second;
      ++ia;
      ++ib;
    }
    sum += diff * diff;
  }
  return sum;
}

inline double linf_norm(const TruthTable& f) {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

/// Rad_l: the entries with |S| = level exactly.
inline CoefficientMap rademacher_projection(const CoefficientMap& c, std::size_t level) {
  detail::require(level >= 1 && level <= c.dimension(),
                  "level " + std::to_string(level) + " outside [1, " + std::to_string(c.dimension()) + "]");
  CoefficientMap out(c.dimension(), level);
  for (const auto& [s, v] : c) {
    if (s.count() == level) out.set(s, v);
  }
  return out;
}

/// (sum_S |c(S)|^p)^(1/p) for p >= 1.
inline double lp_fourier_norm(const CoefficientMap& c, double p) {
  detail::require(p >= 1.0 && std::isfinite(p), "lp_fourier_norm needs finite p >= 1");
  if (p == 1.0) {
    double s = 0.0;
    for (const auto& kv : c) s += std::abs(kv.second);
    return s;
  }
  double s = 0.0;
  for (const auto& kv : c) s += std::pow(std::abs(kv.second), p);
  return std::pow(s, 1.0 / p);
}

/// Largest |S| among nonzero entries; 0 for the empty map.
inline std::size_t degree(const CoefficientMap& c) {
  std::size_t d = 0;
  for (const auto& kv : c) d = std::max(d, kv.first.count());
  return d;
}

/// Multilinear extension sum_S c(S) prod_{j in S} x_j on [-1,1]^n.
inline double harmonic_extension_eval(const CoefficientMap& c, std::span<const double> x) {
  detail::require_same_dimension(c.dimension(), x.size());
  for (double xi : x) {
    detail::require(std::isfinite(xi) && std::abs(xi) <= 1.0 + 1e-12, "harmonic extension point outside [-1,1]^n");
  }
  double sum = 0.0;
  for (const auto& [s, v] : c) {
    double term = v;
    for (std::size_t j : s.positions()) term *= x[j];
    sum += term;
  }
  return sum;
}

}  // namespace bhlearn

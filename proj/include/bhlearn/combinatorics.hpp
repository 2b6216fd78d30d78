#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "bhlearn/errors.hpp"
#include "bhlearn/mask.hpp"

namespace bhlearn {

/// Largest low-degree index set enumerate_low_subsets will materialize.
inline constexpr std::uint64_t kMaxLowSubsets = std::uint64_t{1} << 26;

/// Exact C(n, k); throws CapacityError if it does not fit in 64 bits.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // r * (n - k + i) / i is exact at every step; reduce by gcd first to delay overflow.
    std::uint64_t num = n - k + i;
    std::uint64_t den = i;
    const std::uint64_t g1 = std::gcd(r, den);
    r /= g1;
    den /= g1;
    const std::uint64_t g2 = std::gcd(num, den);
    num /= g2;
    den /= g2;
    std::uint64_t next = 0;
    if (__builtin_mul_overflow(r, num, &next)) {
      throw CapacityError("binomial(" + std::to_string(n) + ", " + std::to_string(k) + ") overflows 64 bits");
    }
    r = next / den;
  }
  return r;
}

/// sum_{k=0}^{d} C(n, k).
inline std::uint64_t low_subset_count(std::uint64_t n, std::uint64_t d) {
  std::uint64_t total = 0;
  for (std::uint64_t k = 0; k <= std::min(d, n); ++k) {
    if (__builtin_add_overflow(total, binomial(n, k), &total)) {
      throw CapacityError("subset count for n=" + std::to_string(n) + ", d=" + std::to_string(d) +
                          " overflows 64 bits");
    }
  }
  return total;
}

/// All S with |S| <= d, ordered by (|S|, numeric mask).
inline std::vector<SubsetMask> enumerate_low_subsets(std::size_t n, std::size_t d) {
  detail::require(d <= n, "enumerate_low_subsets needs d <= n (d=" + std::to_string(d) +
                              ", n=" + std::to_string(n) + ")");
  const std::uint64_t total = low_subset_count(n, d);
  if (total > kMaxLowSubsets) {
    throw CapacityError("low-degree index set of size " + std::to_string(total) + " exceeds limit " +
                        std::to_string(kMaxLowSubsets));
  }
  std::vector<SubsetMask> out;
  out.reserve(static_cast<std::size_t>(total));
  out.emplace_back(n);
  for (std::size_t k = 1; k <= d; ++k) {
    // Colexicographic order on positions equals ascending numeric order of masks.
    std::vector<std::size_t> c(k);
    std::iota(c.begin(), c.end(), std::size_t{0});
    while (true) {
      out.push_back(SubsetMask::from_positions(n, c));
      std::size_t i = 0;
      while (i < k && c[i] + 1 == (i + 1 < k ? c[i + 1] : n)) ++i;
      if (i == k) break;
      ++c[i];
      for (std::size_t j = 0; j < i; ++j) c[j] = j;
    }
  }
  return out;
}

}  // namespace bhlearn

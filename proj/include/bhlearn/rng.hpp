#pragma once

// Seedable counter-based generator used for every random stream in the library.
//
// Output k (k = 1, 2, ...) of the stream with seed s is mix64(s + k * 0x9E3779B97F4A7C15)
// where mix64 is the SplitMix64 finalizer. This is exactly the SplitMix64 sequence,
// so any implementation of SplitMix64 reproduces sample streams bit for bit.
//
// Doubles: uniform01() = (next() >> 11) * 2^-53, uniform_pm1() = 2 * uniform01() - 1.
// Points:  ceil(n/64) consecutive outputs fill words 0, 1, ...; the top word is masked to n bits.

#include <cstdint>
#include <initializer_list>

#include "bhlearn/mask.hpp"

namespace bhlearn {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Child seed for a (master, index...) path: h0 = mix64(master + gamma),
/// h_{i+1} = mix64(h_i ^ mix64(index_i + (i + 2) * gamma)).
constexpr std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) noexcept {
  std::uint64_t h = mix64(master + kGoldenGamma);
  std::uint64_t salt = 2;
  for (std::uint64_t idx : path) {
    h = mix64(h ^ mix64(idx + salt * kGoldenGamma));
    ++salt;
  }
  return h;
}

class Rng {
 public:
  constexpr explicit Rng(std::uint64_t seed) noexcept : seed_(seed) {}

  constexpr std::uint64_t next() noexcept { return mix64(seed_ + (++counter_) * kGoldenGamma); }

  constexpr double uniform01() noexcept { return static_cast<double>(next() >> 11) * 0x1p-53; }
  constexpr double uniform_pm1() noexcept { return 2.0 * uniform01() - 1.0; }

  [[nodiscard]] constexpr std::uint64_t seed() const noexcept { return seed_; }
  [[nodiscard]] constexpr std::uint64_t position() const noexcept { return counter_; }

  // Overwrites `point` with a uniform element of {-1,1}^n, n = point.dimension().
  void fill_point(PointMask& point) noexcept {
    for (std::uint64_t& w : point.words_mut()) w = next();
    point.clear_padding();
  }

  PointMask uniform_point(std::size_t n) {
    PointMask p(n);
    fill_point(p);
    return p;
  }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace bhlearn

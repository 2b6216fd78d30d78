#pragma once

// Bit-packed points of {-1,1}^n and subsets of {1..n}.
//
// Coordinate i (zero-based) lives in bit i % 64 of word i / 64. For points a set
// bit means x_{i+1} = -1 and a clear bit means x_{i+1} = +1; for subsets a set
// bit means i+1 is a member. Bits at or above the dimension are always zero.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bhlearn/errors.hpp"

namespace bhlearn {

inline constexpr std::size_t kMaxMaskDimension = 65536;

template <class Tag>
class Mask {
 public:
  static constexpr std::size_t kWordBits = 64;

  Mask() = default;

  explicit Mask(std::size_t dimension) : dim_(dimension) {
    detail::require(dimension <= kMaxMaskDimension,
                    "mask dimension " + std::to_string(dimension) + " exceeds limit");
    if (dimension > kWordBits) heap_.assign(words_for(dimension), 0);
  }

  // Single-word constructor; only valid for dimension <= 64.
  Mask(std::size_t dimension, std::uint64_t bits) : Mask(dimension) {
    detail::require(dimension <= kWordBits, "single-word mask needs dimension <= 64");
    detail::require((bits & ~top_mask(dimension)) == 0,
                    "mask bits set above dimension " + std::to_string(dimension));
    inline_ = bits;
  }

  // Builds a mask from zero-based coordinate positions.
  static Mask from_positions(std::size_t dimension, std::span<const std::size_t> positions) {
    Mask m(dimension);
    for (std::size_t p : positions) m.set(p);
    return m;
  }
  static Mask from_positions(std::size_t dimension, std::initializer_list<std::size_t> positions) {
    return from_positions(dimension, std::span<const std::size_t>(positions.begin(), positions.size()));
  }

  // Parses the hex form written by to_hex(); an optional 0x prefix is accepted.
  static Mask from_hex(std::size_t dimension, std::string_view text) {
    if (text.starts_with("0x") || text.starts_with("0X")) text.remove_prefix(2);
    detail::require(!text.empty(), "empty hex mask");
    Mask m(dimension);
    std::size_t bit = 0;
    for (auto it = text.rbegin(); it != text.rend(); ++it, bit += 4) {
      const int nibble = hex_value(*it);
      detail::require(nibble >= 0, "invalid hex digit in mask '" + std::string(text) + "'");
      for (int k = 0; k < 4; ++k) {
        if ((nibble >> k) & 1) {
          detail::require(bit + k < dimension,
                          "hex mask '" + std::string(text) + "' has bits above dimension " +
                              std::to_string(dimension));
          m.set(bit + k);
        }
      }
    }
    return m;
  }

  [[nodiscard]] std::size_t dimension() const noexcept { return dim_; }
  [[nodiscard]] std::size_t word_count() const noexcept { return words_for(dim_); }

  [[nodiscard]] std::span<const std::uint64_t> words() const noexcept {
    if (dim_ <= kWordBits) return {&inline_, dim_ == 0 ? 0u : 1u};
    return heap_;
  }
  // Raw word access for bulk fills; callers must keep the top word clean (see clear_padding).
  [[nodiscard]] std::span<std::uint64_t> words_mut() noexcept {
    if (dim_ <= kWordBits) return {&inline_, dim_ == 0 ? 0u : 1u};
    return heap_;
  }
  void clear_padding() noexcept {
    auto w = words_mut();
    if (!w.empty()) w.back() &= top_mask(dim_);
  }

  [[nodiscard]] bool test(std::size_t i) const {
    detail::require(i < dim_, "coordinate " + std::to_string(i) + " out of range");
    return (words()[i / kWordBits] >> (i % kWordBits)) & 1u;
  }
  void set(std::size_t i, bool value = true) {
    detail::require(i < dim_, "coordinate " + std::to_string(i) + " out of range");
    std::uint64_t& w = words_mut()[i / kWordBits];
    const std::uint64_t bit = std::uint64_t{1} << (i % kWordBits);
    w = value ? (w | bit) : (w & ~bit);
  }

  [[nodiscard]] std::size_t count() const noexcept {
    std::size_t c = 0;
    for (std::uint64_t w : words()) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  [[nodiscard]] bool none() const noexcept {
    return std::ranges::all_of(words(), [](std::uint64_t w) { return w == 0; });
  }

  // Zero-based positions of the set bits, ascending.
  [[nodiscard]] std::vector<std::size_t> positions() const {
    std::vector<std::size_t> out;
    const auto w = words();
    for (std::size_t k = 0; k < w.size(); ++k) {
      for (std::uint64_t bits = w[k]; bits != 0; bits &= bits - 1) {
        out.push_back(k * kWordBits + static_cast<std::size_t>(std::countr_zero(bits)));
      }
    }
    return out;
  }

  // The packed value as an integer; only for dimension <= 64.
  [[nodiscard]] std::uint64_t to_index() const {
    detail::require(dim_ <= kWordBits, "to_index needs dimension <= 64");
    return inline_;
  }

  [[nodiscard]] std::string to_hex() const {
    const std::size_t digits = std::max<std::size_t>(1, (dim_ + 3) / 4);
    std::string out(digits, '0');
    const auto w = words();
    for (std::size_t d = 0; d < digits; ++d) {
      const std::size_t bit = d * 4;
      if (bit >= dim_) break;
      const unsigned nibble = static_cast<unsigned>((w[bit / kWordBits] >> (bit % kWordBits)) & 0xFu);
      out[digits - 1 - d] = "0123456789abcdef"[nibble];
    }
    return out;
  }

  friend bool operator==(const Mask& a, const Mask& b) noexcept {
    return a.dim_ == b.dim_ && std::ranges::equal(a.words(), b.words());
  }
  // Orders by dimension, then by numeric value of the packed bits.
  friend std::strong_ordering operator<=>(const Mask& a, const Mask& b) noexcept {
    if (auto c = a.dim_ <=> b.dim_; c != 0) return c;
    const auto wa = a.words();
    const auto wb = b.words();
    for (std::size_t k = wa.size(); k-- > 0;) {
      if (auto c = wa[k] <=> wb[k]; c != 0) return c;
    }
    return std::strong_ordering::equal;
  }

  static constexpr std::size_t words_for(std::size_t dimension) noexcept {
    return (dimension + kWordBits - 1) / kWordBits;
  }
  static constexpr std::uint64_t top_mask(std::size_t dimension) noexcept {
    const std::size_t r = dimension % kWordBits;
    return r == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << r) - 1;
  }

 private:
  static int hex_value(char c) noexcept {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  }

  std::size_t dim_ = 0;
  std::uint64_t inline_ = 0;
  std::vector<std::uint64_t> heap_;
};

struct PointTag {};
struct SubsetTag {};

using PointMask = Mask<PointTag>;
using SubsetMask = Mask<SubsetTag>;

/// Parity of |S ∩ {i : x_i = -1}|, i.e. 1 iff w_S(x) = -1.
inline unsigned and_parity(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) noexcept {
  std::uint64_t acc = 0;
  for (std::size_t k = 0; k < a.size(); ++k) acc ^= a[k] & b[k];
  return static_cast<unsigned>(std::popcount(acc) & 1);
}

}  // namespace bhlearn

#pragma once

#include <array>
#include <cstdint>

namespace beurling {

/// Philox4x32-10 counter-based generator (Salmon et al., Random123).
/// Stateless: every output block is a pure function of (counter, key).
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr Counter generate(Counter ctr, Key key) {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += 0x9E3779B9u;
        key[1] += 0xBB67AE85u;
      }
      const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * ctr[2];
      const auto hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
      const auto hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
      ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
  }
};

/// Stream tags keep independent consumers of one seed apart.
enum class StreamTag : std::uint32_t {
  continuous_cell = 1,
  discrete_cell = 2,
  monte_carlo = 3,
  test = 0xFFFF,
};

/// Uniform variates addressed by (seed, tag, index, draw).
///
/// Counter layout: {index lo, index hi, tag, draw}; key = seed split in two
/// 32-bit halves. Changing the layout changes every constructed system.
class KeyedRng {
 public:
  constexpr KeyedRng(std::uint64_t seed, StreamTag tag) : seed_(seed), tag_(static_cast<std::uint32_t>(tag)) {}

  constexpr Philox4x32::Counter block(std::uint64_t index, std::uint32_t draw = 0) const {
    return Philox4x32::generate(
        {static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), tag_, draw},
        {static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)});
  }

  /// Uniform on (0, 1]: 53 random bits, never 0.
  constexpr double uniform_open_closed(std::uint64_t index, std::uint32_t draw = 0) const {
    const auto b = block(index, draw);
    const std::uint64_t bits = (std::uint64_t{b[0]} << 32) | b[1];
    return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
  }

  constexpr std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint32_t tag_;
};

}  // namespace beurling

#pragma once

// Philox4x32-10 counter-based generator (Salmon et al., "Parallel random
// numbers: as easy as 1, 2, 3", SC11). A stream is fully determined by its
// 64-bit key and the upper 96 bits of the 128-bit counter; the low 32 bits
// count blocks within the stream.

#include <array>
#include <cstdint>
#include <limits>

namespace rmi {

inline constexpr const char* kRngAlgorithm = "philox4x32-10";

using PhiloxBlock = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

constexpr PhiloxBlock philox4x32_10(PhiloxBlock ctr, PhiloxKey key) {
  constexpr std::uint32_t kM0 = 0xD2511F53U;
  constexpr std::uint32_t kM1 = 0xCD9E8D57U;
  constexpr std::uint32_t kW0 = 0x9E3779B9U;
  constexpr std::uint32_t kW1 = 0xBB67AE85U;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = std::uint64_t{kM0} * ctr[0];
    const std::uint64_t p1 = std::uint64_t{kM1} * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kW0;
    key[1] += kW1;
  }
  return ctr;
}

// UniformRandomBitGenerator over one Philox stream, keyed by
// (seed) and stream id (trial, tag).
class PhiloxStream {
 public:
  using result_type = std::uint64_t;

  PhiloxStream(std::uint64_t seed, std::uint64_t trial, std::uint32_t tag)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        ctr_{0, tag, static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)} {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    if (used_ == 2) {
      block_ = philox4x32_10(ctr_, key_);
      ++ctr_[0];
      used_ = 0;
    }
    const std::size_t i = 2 * used_++;
    return (std::uint64_t{block_[i + 1]} << 32) | block_[i];
  }

 private:
  PhiloxKey key_;
  PhiloxBlock ctr_;
  PhiloxBlock block_{};
  std::size_t used_ = 2;
};

}  // namespace rmi

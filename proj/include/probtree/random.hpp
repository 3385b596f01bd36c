#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string_view>

namespace probtree {

// SplitMix64 (Steele, Lea, Flood 2014). Used only to expand seeds.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}
  std::uint64_t next() noexcept;

 private:
  std::uint64_t state_;
};

// xoshiro256** 1.0 (Blackman, Vigna). The 256-bit state is filled with four
// consecutive SplitMix64 outputs of the seed, so every seed (including 0) is
// valid. Output is identical on every platform.
class Xoshiro256StarStar {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256StarStar(std::uint64_t seed = 0) noexcept { seed_with(seed); }

  void seed_with(std::uint64_t seed) noexcept;
  std::uint64_t operator()() noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  // Uniform on [0, 1): the high 53 bits of the next output times 2^-53.
  double uniform() noexcept { return to_unit_interval((*this)()); }

  static double to_unit_interval(std::uint64_t bits) noexcept {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
  }

 private:
  std::array<std::uint64_t, 4> s_{};
};

inline constexpr std::string_view kRngAlgorithm = "xoshiro256**/splitmix64";

}  // namespace probtree

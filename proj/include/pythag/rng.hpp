#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace pythag {

namespace detail {

inline void philox_round(std::array<std::uint32_t, 4>& ctr,
                         std::array<std::uint32_t, 2>& key) {
  constexpr std::uint64_t m0 = 0xD2511F53;
  constexpr std::uint64_t m1 = 0xCD9E8D57;
  const std::uint64_t p0 = m0 * ctr[0];
  const std::uint64_t p1 = m1 * ctr[2];
  const auto lo0 = static_cast<std::uint32_t>(p0);
  const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const auto lo1 = static_cast<std::uint32_t>(p1);
  const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
  ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  key[0] += 0x9E3779B9;
  key[1] += 0xBB67AE85;
}

inline std::array<std::uint32_t, 4> philox4x32_10(
    std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key) {
  for (int r = 0; r < 10; ++r) philox_round(ctr, key);
  return ctr;
}

}  // namespace detail

// Counter-based generator (philox4x32-10). A (seed, stream) pair addresses an
// independent sequence, so parallel consumers can carve out streams without
// handing state around. Satisfies uniform_random_bit_generator.
class PhiloxRng {
 public:
  using result_type = std::uint64_t;

  explicit PhiloxRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_{static_cast<std::uint32_t>(seed),
             static_cast<std::uint32_t>(seed >> 32)},
        stream_{static_cast<std::uint32_t>(stream),
                static_cast<std::uint32_t>(stream >> 32)} {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    if (have_ == 0) fill();
    const result_type out = buf_[2 - have_];
    --have_;
    return out;
  }

  // uniform double strictly inside (0, 1)
  double next_double() {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
  }

  std::uint64_t stream() const {
    return static_cast<std::uint64_t>(stream_[0]) |
           (static_cast<std::uint64_t>(stream_[1]) << 32);
  }

 private:
  void fill() {
    const std::array<std::uint32_t, 4> ctr = {
        static_cast<std::uint32_t>(counter_),
        static_cast<std::uint32_t>(counter_ >> 32), stream_[0], stream_[1]};
    const auto out = detail::philox4x32_10(ctr, key_);
    buf_[0] = static_cast<std::uint64_t>(out[0]) |
              (static_cast<std::uint64_t>(out[1]) << 32);
    buf_[1] = static_cast<std::uint64_t>(out[2]) |
              (static_cast<std::uint64_t>(out[3]) << 32);
    ++counter_;
    have_ = 2;
  }

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 2> stream_;
  std::uint64_t counter_ = 0;
  std::array<std::uint64_t, 2> buf_{};
  int have_ = 0;
};

}  // namespace pythag

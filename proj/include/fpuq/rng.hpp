#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace fpuq {

/// Philox4x32-10 counter-based generator.
///
/// Streams are addressed as (seed, stream): the 64-bit seed forms the Philox key and
/// the stream id occupies the upper counter words, so substreams never overlap and a
/// trial's draws depend only on (seed, stream, position). That makes parallel and
/// serial runs bit-identical by construction.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        stream_(stream) {}

  /// Independent substream of the same seed.
  [[nodiscard]] CounterRng substream(std::uint64_t stream) const {
    std::uint64_t seed = key_[0] | (static_cast<std::uint64_t>(key_[1]) << 32);
    return CounterRng(seed, stream);
  }

  std::uint64_t next_u64() {
    if (pos_ == 2) refill();
    return buf_[pos_++];
  }

  /// Uniform in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  /// Uniform in [-u, u].
  double symmetric(double u) { return std::fma(next_double(), 2.0 * u, -u); }

  /// Random sign in {-1, +1}.
  int sign() { return (next_u64() >> 63) ? -1 : +1; }

  /// Standard normal via Box-Muller (two uniforms per pair, cached).
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = next_double();
    double u2 = next_double();
    // avoid log(0)
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  /// One Philox4x32-10 block: 128 bits as two 64-bit words.
  static std::array<std::uint64_t, 2> block(std::uint64_t seed, std::uint64_t stream,
                                            std::uint64_t counter);

 private:
  void refill() {
    auto b = block(key_[0] | (static_cast<std::uint64_t>(key_[1]) << 32), stream_, ctr_++);
    buf_[0] = b[0];
    buf_[1] = b[1];
    pos_ = 0;
  }

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_ = 0;
  std::uint64_t ctr_ = 0;
  std::array<std::uint64_t, 2> buf_{};
  int pos_ = 2;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace fpuq

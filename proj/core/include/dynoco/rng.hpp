#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace dynoco {

/// One Philox4x32-10 block: encrypts `counter` under `key`.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                          std::array<std::uint32_t, 2> key) noexcept;

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
///
/// A stream is identified by (seed, stream id). The 128-bit counter is laid out
/// as {position lo, position hi, stream id, 0} and the 64-bit key is the seed,
/// so distinct stream ids never share a counter block. Each block yields two
/// 64-bit outputs. Satisfies UniformRandomBitGenerator.
class PhiloxStream {
 public:
  using result_type = std::uint64_t;

  PhiloxStream(std::uint64_t seed, std::uint32_t stream_id) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept;

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) noexcept;
  /// Standard normal via Box-Muller; both variates of each pair are used.
  double normal() noexcept;

 private:
  void refill() noexcept;

  std::array<std::uint32_t, 2> key_;
  std::uint64_t position_ = 0;
  std::uint32_t stream_id_;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

/// Substream identifiers used by the environment generators.
enum class StreamRole : std::uint32_t {
  Models = 1,
  Features = 2,
  Noise = 3,
};

inline PhiloxStream make_stream(std::uint64_t seed, StreamRole role) noexcept {
  return PhiloxStream(seed, static_cast<std::uint32_t>(role));
}

}  // namespace dynoco

#pragma once

// Counter-based random numbers (Philox4x32-10). A generator is keyed by a
// 64-bit seed and a 64-bit stream id; the same (seed, stream) pair always
// yields the same sequence, independent of how other streams are consumed.

#include <array>
#include <cstdint>
#include <limits>

namespace mln {

enum class StreamRole : std::uint64_t {
  sketch_x = 1,
  sketch_y = 2,
  generator = 3,
  baseline = 4,
};

// Stream id for a role and an index (usually the mode).
constexpr std::uint64_t stream_id(StreamRole role, std::uint64_t index) {
  return (static_cast<std::uint64_t>(role) << 48) ^ index;
}

class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  // Uniform on the open interval (0, 1).
  double uniform();
  // Standard normal (Box-Muller).
  double normal();
  // Uniform integer in [0, bound), bound > 0, without modulo bias.
  std::uint64_t below(std::uint64_t bound);
  // +1 or -1 with equal probability.
  double sign();

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace mln

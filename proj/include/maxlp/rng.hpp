#pragma once

#include <cstdint>

namespace maxlp {

namespace detail {

// 64-bit finalizer used both to hash the (master, stream, index) triple and
// to whiten the counter sequence.
inline constexpr std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

inline constexpr std::uint64_t GOLDEN = 0x9E3779B97F4A7C15ULL;

}  // namespace detail

// Counter-based generator: the state is a hash of (master seed, stream id,
// sample index), then advances as a splitmix sequence. Any sample can be
// regenerated in isolation, which makes parallel partitioning of sample
// indices reproducible by construction.
class CounterRng {
 public:
  CounterRng(std::uint64_t master, std::uint64_t stream, std::uint64_t index)
      : state_(detail::mix64(
            detail::mix64(detail::mix64(master + detail::GOLDEN) ^ stream) ^
            index)) {}

  std::uint64_t next_u64() {
    state_ += detail::GOLDEN;
    return detail::mix64(state_);
  }

  // Uniform on the open interval (0,1).
  double uniform() {
    return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
  }

  // Uniform on the half-open interval (0,1]; used by inverse transforms
  // that divide by the variate.
  double uniform_oc() {
    return 1.0 - static_cast<double>(next_u64() >> 12) * 0x1.0p-52;
  }

 private:
  std::uint64_t state_;
};

}  // namespace maxlp

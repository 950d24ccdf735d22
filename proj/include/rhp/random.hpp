#pragma once

#include <cstdint>

namespace rhp {

// Counter-free splittable generator built on the splitmix64 finalizer.
// Distinct (master_seed, stream_index) pairs yield streams that are
// independent for every statistical purpose in this project, which is what
// makes replication loops safe to run in any order or in parallel.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t master_seed, std::uint64_t stream_index = 0)
      : state_(derive_state(master_seed, stream_index)) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform on the open interval (0,1); endpoints are unreachable, so
  // log(u) and 1/u are always finite.
  double next_uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  static std::uint64_t derive_state(std::uint64_t seed, std::uint64_t index) {
    return mix(seed + 0x9E3779B97F4A7C15ull) ^
           mix(index * 0xD1B54A32D192ED03ull + 0x8BB84B93962EACC9ull);
  }

  std::uint64_t state_;
};

}  // namespace rhp

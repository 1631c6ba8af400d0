// Copyright 2026 The dplp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DPLP_RNG_HPP_
#define DPLP_RNG_HPP_

#include <cstdint>

namespace dplp {

namespace rng_internal {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// SplitMix64 finalizer: bijective avalanche mix of a 64-bit word.
inline std::uint64_t Mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace rng_internal

// Counter-based pseudorandom generator with deterministic stream splitting.
//
// A stream is identified by a 64-bit key. The k-th draw of a stream is
// Mix64(key + k * kGolden), a pure function of (key, k), so draws never
// depend on shared mutable state. split(tag) derives a child stream whose
// key is a hash of (key, tag); the child is independent of how much of the
// parent has been consumed, which makes hierarchical substreams (for
// example per grid point and per trial) reproducible regardless of
// evaluation order, including concurrent evaluation.
class CounterRng {
 public:
  static CounterRng seeded(std::uint64_t seed) {
    return CounterRng(rng_internal::Mix64(seed + rng_internal::kGolden));
  }

  // Child stream for the given tag. Does not consume parent state.
  CounterRng split(std::uint64_t tag) const {
    return CounterRng(rng_internal::Mix64(
        key_ ^ rng_internal::Mix64(tag + 0xD1B54A32D192ED03ULL)));
  }

  std::uint64_t next_u64() {
    counter_ += rng_internal::kGolden;
    return rng_internal::Mix64(key_ + counter_);
  }

  // Uniform on the open interval (0, 1) with 52-bit resolution. The open
  // interval keeps inverse-CDF transforms finite for every draw.
  double next_open01() {
    return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
  }

 private:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace dplp

#endif  // DPLP_RNG_HPP_

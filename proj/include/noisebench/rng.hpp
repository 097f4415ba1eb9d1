// Copyright 2026 The noisebench authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NOISEBENCH_RNG_HPP_
#define NOISEBENCH_RNG_HPP_

#include <cstdint>
#include <random>

namespace noisebench {

// SplitMix64 finalizer over (base, salt). Sub-seeds for circuits, shots and
// bootstrap replicates are derived this way, so results never depend on the
// order in which work items execute.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic RNG used throughout. std::mt19937_64 has a fully specified
// output sequence; the [0,1) mapping below replaces the implementation-defined
// std::uniform_real_distribution so streams are bit-identical on every
// platform.
class RngEngine {
 public:
  explicit RngEngine(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound). Must have bound >= 1.
  std::uint64_t uniform_int(std::uint64_t bound) {
    // The product can round up to bound for u close to 1; clamp that case.
    auto v = static_cast<std::uint64_t>(uniform() * static_cast<double>(bound));
    return v >= bound ? bound - 1 : v;
  }

  /// Rademacher variate: +1 or -1 with equal probability.
  int rademacher() { return (gen_() & 1ULL) ? 1 : -1; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace noisebench

#endif  // NOISEBENCH_RNG_HPP_

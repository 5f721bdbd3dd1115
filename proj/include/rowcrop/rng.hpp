// Copyright 2026 The rowcrop Authors
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

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace rowcrop {

inline constexpr std::uint64_t kDefaultSeed = 42;

constexpr std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Named substreams of an episode's master seed. New tags may be appended
// without perturbing existing ones.
enum class Stream : std::uint64_t {
  kTerrain = 0,
  kLayout = 1,
  kCorruption = 2,
  kDrift = 3,
};

constexpr std::uint64_t DeriveSeed(std::uint64_t master, Stream stream) {
  return SplitMix64(SplitMix64(master) ^
                    (0xa0761d6478bd642fULL * (static_cast<std::uint64_t>(stream) + 1)));
}

// Counter-based generator: draw i is SplitMix64(seed + i * gamma). Output is
// identical across platforms and standard libraries, unlike std::
// distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t NextU64() {
    return SplitMix64(seed_ + 0x9e3779b97f4a7c15ULL * counter_++);
  }

  // Uniform in [0, 1) with 53 bits.
  double Uniform() {
    return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
  }

  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  // Uniform integer in [0, n). Bias is below 2^-32 for the n used here.
  std::uint64_t UniformIndex(std::uint64_t n) {
    return n == 0 ? 0 : NextU64() % n;
  }

  // Box-Muller; one normal per call, the sine branch is discarded so each
  // draw consumes exactly two counters.
  double Normal() {
    double u1 = Uniform();
    const double u2 = Uniform();
    if (u1 < 0x1.0p-60) u1 = 0x1.0p-60;
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  double Normal(double mean, double stddev) {
    return mean + stddev * Normal();
  }

  // Standard normal truncated to [-limit, limit] by rejection.
  double TruncatedNormal(double limit) {
    for (;;) {
      const double z = Normal();
      if (std::abs(z) <= limit) return z;
    }
  }

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace rowcrop

// Copyright 2026 The maxleak Authors
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

#ifndef MAXLEAK_RNG_H_
#define MAXLEAK_RNG_H_

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace maxleak {

// All randomized code draws from mt19937_64, which the language standard
// pins bit-for-bit, through the samplers below rather than the standard
// library distributions (whose outputs vary across implementations).
inline constexpr const char* kRngName = "mt19937_64";

// SplitMix64 finalizer, used to derive independent stream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Seed for stream `index` of a run seeded with `seed`.  Streams indexed by
// work item (trial, sample) keep results independent of how work is chunked
// across threads.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index + 1));
}

// Uniform double in [0, 1) from the top 53 bits of one generator word.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Standard normal via Box-Muller.  Draws two uniforms per call and discards
// the paired variate, keeping consumption independent of call history.
inline double standard_normal(std::mt19937_64& rng) {
  double u = uniform01(rng);
  const double v = uniform01(rng);
  if (u <= 0.0) u = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u)) *
         std::cos(2.0 * std::numbers::pi * v);
}

// Inverse-CDF sampler for a finite distribution.
class CategoricalSampler {
 public:
  explicit CategoricalSampler(const Eigen::RowVectorXd& probs)
      : cdf_(static_cast<std::size_t>(probs.size())) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < probs.size(); ++i) {
      acc += probs(i);
      cdf_[static_cast<std::size_t>(i)] = acc;
    }
    cdf_.back() = 1.0;
  }

  Eigen::Index operator()(std::mt19937_64& rng) const {
    const double u = uniform01(rng);
    std::size_t lo = 0;
    std::size_t hi = cdf_.size() - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (u < cdf_[mid]) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    return static_cast<Eigen::Index>(lo);
  }

 private:
  std::vector<double> cdf_;
};

}  // namespace maxleak

#endif  // MAXLEAK_RNG_H_

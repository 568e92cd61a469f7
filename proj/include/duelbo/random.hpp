// Copyright 2026 The duelbo Authors. All rights reserved.
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

#ifndef DUELBO_RANDOM_HPP_
#define DUELBO_RANDOM_HPP_

#include <cstdint>
#include <random>

namespace duelbo {

// Named purposes for independent random substreams of one run.
enum class Stream : std::uint32_t {
  kInstance = 1,  // action set, objective parameters
  kNoise = 2,     // observation noise
  kCoin = 3,      // reduction coins
  kPolicy = 4,    // policy-internal randomness
  kPolicyRound = 5,
  kTest = 99,
};

// Portable random source. The engine is std::mt19937_64, whose output
// sequence is fixed by the standard; uniforms and Gaussians are derived
// here (53-bit uniforms, Box-Muller) rather than through the
// implementation-defined std distributions, so draws are bit-identical
// across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  // Substream keyed by (seed, purpose, index) via std::seed_seq.
  Rng(std::uint64_t seed, Stream purpose, std::uint64_t index = 0);

  std::uint64_t next_u64() { return engine_(); }
  // Uniform on [0, 1).
  double uniform();
  // Uniform integer in [0, n). Requires n > 0.
  std::uint64_t uniform_index(std::uint64_t n);
  double normal();
  double normal(double mean, double stddev) { return mean + stddev * normal(); }
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace duelbo

#endif  // DUELBO_RANDOM_HPP_

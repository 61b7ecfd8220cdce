// Copyright 2026 The pmatch Authors
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

#ifndef PMATCH_RNG_HPP_
#define PMATCH_RNG_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace pmatch {

std::uint64_t splitmix64(std::uint64_t x);

// A seeded random stream that can be split into independent children.
// Children are derived from (parent seed, tag) only, so drawing from a parent
// never perturbs the streams of its children or siblings.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed = 0);

  RngStream split(std::uint64_t tag) const;
  RngStream split(std::string_view tag) const;

  std::uint64_t seed() const { return seed_; }
  std::mt19937_64& engine() { return engine_; }

  // Uniform in [0, 1).
  double uniform01();
  double uniform(double lo, double hi);
  // Uniform in {0, ..., n - 1}; n must be positive.
  std::size_t uniform_index(std::size_t n);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace pmatch

#endif  // PMATCH_RNG_HPP_

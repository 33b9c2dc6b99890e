// Copyright 2026 The hyperdt Authors.
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

#ifndef HYPERDT_RANDOM_H_
#define HYPERDT_RANDOM_H_

#include <cstdint>
#include <random>
#include <span>

namespace hyperdt {

// Mixes a base seed with a stream id (splitmix64 finaliser), so that
// sub-computations own independent, reproducible streams.
uint64_t DeriveSeed(uint64_t base, uint64_t stream);

// Thin wrapper around mt19937_64. The distribution helpers are written out
// instead of using <random> distributions, whose output is
// implementation-defined; results are identical across standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t Next() { return engine_(); }
  // Uniform in [0, n). n must be positive.
  size_t UniformIndex(size_t n);
  // Uniform in [0, 1).
  double Uniform01();
  bool Bernoulli(double p) { return Uniform01() < p; }

  template <typename T>
  void Shuffle(std::span<T> items) {
    for (size_t i = items.size(); i > 1; --i) {
      const size_t j = UniformIndex(i);
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hyperdt

#endif  // HYPERDT_RANDOM_H_

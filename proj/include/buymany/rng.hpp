// Copyright 2026 The Authors.
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

#ifndef BUYMANY_RNG_HPP_
#define BUYMANY_RNG_HPP_

#include <cstdint>
#include <vector>

#include "buymany/common.hpp"

namespace buymany {

// splitmix64: used both as the generator core and to derive independent
// per-task seed streams from a root seed by counter, so results never depend
// on thread scheduling.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t counter) {
  std::uint64_t s = root;
  std::uint64_t a = splitmix64(s);
  s = root ^ (counter * 0x9e3779b97f4a7c15ULL + 0x243f6a8885a308d3ULL);
  return a ^ splitmix64(s);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {
    // Warm up so that small seeds do not produce correlated first draws.
    splitmix64(state_);
    splitmix64(state_);
  }

  std::uint64_t next_u64() { return splitmix64(state_); }

  // Uniform in [0, 1), 53 bits.
  double uniform01() { return (next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer in [0, bound) without modulo bias (bound > 0).
  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  int uniform_int(int lo, int hi) {  // inclusive range
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  // Uniform d-subset of {0..n-1} via partial Fisher-Yates.
  Mask subset(int n, int d) {
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    Mask s = 0;
    for (int i = 0; i < d; ++i) {
      int j = i + static_cast<int>(below(static_cast<std::uint64_t>(n - i)));
      std::swap(pool[i], pool[j]);
      s |= Mask{1} << pool[i];
    }
    return s;
  }

 private:
  std::uint64_t state_;
};

}  // namespace buymany

#endif  // BUYMANY_RNG_HPP_

// Copyright 2026 The oceval Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OCEVAL_RANDOM_H_
#define OCEVAL_RANDOM_H_

#include <cstdint>

namespace oceval {

// Counter-based generator: the n-th output is a pure function of
// (key words, n), so streams can be derived per trial or per draw without
// sharing state between threads. Outputs are identical on every platform.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0,
                      std::uint64_t substream = 0)
      : key_(Mix(Mix(Mix(seed ^ 0x243f6a8885a308d3ULL) ^ stream) ^
                 (substream + 0x13198a2e03707344ULL))) {}

  std::uint64_t NextU64() {
    return Mix(key_ ^ Mix(counter_++ + 0xa4093822299f31d0ULL));
  }

  // Uniform on [0, 1) with 53 bits of resolution.
  double NextDouble() { return static_cast<double>(NextU64() >> 11) * 0x1.0p-53; }

  double Uniform(double lo, double hi) { return lo + (hi - lo) * NextDouble(); }

  // Unbiased uniform integer in [0, bound); bound must be positive.
  std::uint64_t UniformIndex(std::uint64_t bound) {
    unsigned __int128 product =
        static_cast<unsigned __int128>(NextU64()) * bound;
    std::uint64_t low = static_cast<std::uint64_t>(product);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        product = static_cast<unsigned __int128>(NextU64()) * bound;
        low = static_cast<std::uint64_t>(product);
      }
    }
    return static_cast<std::uint64_t>(product >> 64);
  }

 private:
  // SplitMix64 finalizer.
  static std::uint64_t Mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace oceval

#endif  // OCEVAL_RANDOM_H_

// Copyright 2026 The StyleBias Authors
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

#ifndef STYLEBIAS_SEQCORE_COUNTER_RNG_H_
#define STYLEBIAS_SEQCORE_COUNTER_RNG_H_

#include <cstdint>

namespace stylebias {

// Stateless generator: every draw is a hash of (seed, stream, counter), so
// values never depend on call order or on the standard library's engines.
class CounterRng {
 public:
  constexpr CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(Mix(seed ^ Mix(stream + 0x632be59bd9b4e019ULL))) {}

  constexpr std::uint64_t Bits(std::uint64_t counter) const {
    return Mix(key_ + 0x9e3779b97f4a7c15ULL * (counter + 1));
  }

  // uniform in [0, 1) with 53 random bits
  constexpr double Uniform(std::uint64_t counter) const {
    return static_cast<double>(Bits(counter) >> 11) * 0x1.0p-53;
  }

  constexpr double Uniform(std::uint64_t counter, double lo, double hi) const {
    return lo + (hi - lo) * Uniform(counter);
  }

 private:
  // splitmix64 finalizer
  static constexpr std::uint64_t Mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
};

}  // namespace stylebias

#endif  // STYLEBIAS_SEQCORE_COUNTER_RNG_H_

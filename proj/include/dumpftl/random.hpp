// Copyright 2026 The dumpftl Authors.
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

#ifndef DUMPFTL_RANDOM_HPP_
#define DUMPFTL_RANDOM_HPP_

#include <cstdint>
#include <initializer_list>
#include <random>

// Platform-stable randomness. The std:: distributions are implementation
// defined, so every draw here is derived from raw 64-bit engine output with
// integer arithmetic or exact dyadic conversions only.
namespace dumpftl::random {

// SplitMix64 finalizer.
constexpr std::uint64_t Mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Counter-keyed hash: the same key tuple always yields the same word,
// independent of evaluation order.
constexpr std::uint64_t KeyedWord(std::initializer_list<std::uint64_t> keys) {
  std::uint64_t h = 0x6a09e667f3bcc909ULL;
  for (std::uint64_t k : keys) h = Mix(h ^ Mix(k));
  return h;
}

// Uniform in [0, 1) on the 2^-53 lattice.
constexpr double ToUnit(std::uint64_t word) {
  return static_cast<double>(word >> 11) * 0x1.0p-53;
}

// Uniform in [0, n) by multiply-high. n must be > 0.
constexpr std::uint64_t ToIndex(std::uint64_t word, std::uint64_t n) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(word) * n) >> 64);
}

// Sequential stream for the dataset generator.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t Word() { return engine_(); }
  double Unit() { return ToUnit(engine_()); }
  bool Bernoulli(double p) { return Unit() < p; }

  // Uniform integer in [lo, hi].
  std::int64_t Int(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(ToIndex(engine_(), span));
  }

  // Number of successes before the first failure with continuation
  // probability `mean / (mean + 1)`, truncated at `cap`. Mean is `mean` before
  // truncation.
  std::int64_t TruncatedGeometric(double mean, std::int64_t cap) {
    const double cont = mean / (mean + 1.0);
    std::int64_t k = 0;
    while (k < cap && Unit() < cont) ++k;
    return k;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace dumpftl::random

#endif  // DUMPFTL_RANDOM_HPP_

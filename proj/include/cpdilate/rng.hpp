// Copyright 2026 the cpdilate authors
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

#include "cpdilate/complex_matrix.hpp"

namespace cpdilate {

/// SplitMix64 (Steele/Lea/Flood). Fixed algorithm, so identical seeds give
/// identical streams on every platform; std::normal_distribution offers no
/// such guarantee, which is why sampling is hand-rolled here.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1), 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Standard complex Gaussian: one Box-Muller transform supplies the real
  /// and imaginary parts, each N(0, 1).
  Complex complex_gaussian() {
    const double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    return Complex(r * std::cos(theta), r * std::sin(theta));
  }

 private:
  std::uint64_t state_;
};

/// Combine a base seed with stream identifiers (check id, trial id, ...) so
/// each independent trial owns its own generator state and results do not
/// depend on execution order.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                                 std::uint64_t b = 0) {
  auto mix = [](std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    return h;
  };
  return mix(mix(base, a), b);
}

inline ComplexMatrix gaussian_matrix(SplitMix64& gen, std::size_t rows,
                                     std::size_t cols) {
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = gen.complex_gaussian();
  return m;
}

inline ComplexMatrix gaussian_vector(SplitMix64& gen, std::size_t n) {
  return gaussian_matrix(gen, n, 1);
}

}  // namespace cpdilate

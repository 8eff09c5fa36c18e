// Copyright 2026 The chanorder Authors
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

#include <cstdint>
#include <random>
#include <vector>

#include "chanorder/linalg.hpp"

namespace chanorder {

/// Seeded generator. All randomness in the library flows through this type so
/// results are a function of the seed alone.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream for trial `index` of a run seeded with `seed`.
  static Rng for_trial(std::uint64_t seed, std::uint64_t index);

  double uniform();                 // [0, 1)
  double normal();                  // N(0, 1)
  int uniform_int(int lo, int hi);  // inclusive
  Complex complex_normal();         // (N + iN) / sqrt(2)

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Flat Dirichlet sample of length n.
std::vector<double> random_simplex(int n, Rng& rng);

/// Ginibre matrix with complex normal entries.
CMatrix ginibre(int rows, int cols, Rng& rng);

/// rows x cols matrix with orthonormal columns (rows >= cols).
CMatrix random_isometry(int rows, int cols, Rng& rng);

CMatrix random_unitary(int d, Rng& rng);

/// Unit vector drawn from the unitarily invariant measure.
CVector random_pure_vector(int d, Rng& rng);

/// Density operator G G^dagger / Tr, with G a d x rank Ginibre matrix.
CMatrix random_density(int d, int rank, Rng& rng);

CMatrix random_hermitian(int d, Rng& rng);

}  // namespace chanorder

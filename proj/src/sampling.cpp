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

#include "chanorder/sampling.hpp"

#include <cmath>

#include <Eigen/QR>

namespace chanorder {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng Rng::for_trial(std::uint64_t seed, std::uint64_t index) {
  return Rng(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

// The standard distributions are implementation-defined, so the samplers below
// work from raw engine output to keep streams identical across toolchains.
double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  // Box-Muller; discard the second variate to keep the stream simple.
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

int Rng::uniform_int(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(engine_() % span);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return Complex(re, im) / std::sqrt(2.0);
}

std::vector<double> random_simplex(int n, Rng& rng) {
  std::vector<double> out(static_cast<size_t>(n));
  double total = 0.0;
  for (auto& v : out) {
    double u = rng.uniform();
    while (u <= 0.0) u = rng.uniform();
    v = -std::log(u);
    total += v;
  }
  for (auto& v : out) v /= total;
  return out;
}

CMatrix ginibre(int rows, int cols, Rng& rng) {
  CMatrix g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) g(i, j) = rng.complex_normal();
  return g;
}

CMatrix random_isometry(int rows, int cols, Rng& rng) {
  if (rows < cols) throw DimensionError("random_isometry: rows < cols");
  CMatrix g = ginibre(rows, cols, rng);
  // Modified Gram-Schmidt; Gaussian columns are independent almost surely.
  for (int j = 0; j < cols; ++j) {
    for (int k = 0; k < j; ++k) {
      g.col(j) -= g.col(k).dot(g.col(j)) * g.col(k);
    }
    g.col(j) /= g.col(j).norm();
  }
  return g;
}

CMatrix random_unitary(int d, Rng& rng) { return random_isometry(d, d, rng); }

CVector random_pure_vector(int d, Rng& rng) {
  CVector v(d);
  for (int i = 0; i < d; ++i) v(i) = rng.complex_normal();
  return v / v.norm();
}

CMatrix random_density(int d, int rank, Rng& rng) {
  CMatrix g = ginibre(d, rank, rng);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return hermitian_part(rho);
}

CMatrix random_hermitian(int d, Rng& rng) {
  return hermitian_part(ginibre(d, d, rng));
}

}  // namespace chanorder

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


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "chanorder/linalg.hpp"
#include "chanorder/sampling.hpp"

using namespace chanorder;

namespace {

CMatrix random_complex(int r, int c, Rng& rng) { return ginibre(r, c, rng); }

// Direct index sum for the partial trace over one factor.
CMatrix partial_trace_oracle(const CMatrix& m, int da, int db, bool keep_first) {
  if (keep_first) {
    CMatrix out = CMatrix::Zero(da, da);
    for (int i = 0; i < da; ++i)
      for (int k = 0; k < da; ++k)
        for (int j = 0; j < db; ++j) out(i, k) += m(i * db + j, k * db + j);
    return out;
  }
  CMatrix out = CMatrix::Zero(db, db);
  for (int j = 0; j < db; ++j)
    for (int l = 0; l < db; ++l)
      for (int i = 0; i < da; ++i) out(j, l) += m(i * db + j, i * db + l);
  return out;
}

}  // namespace

TEST_CASE("kron of identities and scalars") {
  CHECK(max_abs_diff(kron(identity(2), identity(2)), identity(4)) == 0.0);
  Rng rng(1);
  const CMatrix a = random_complex(3, 2, rng);
  CMatrix c(1, 1);
  c(0, 0) = Complex(2.5, -1.0);
  CHECK(max_abs_diff(kron(a, c), c(0, 0) * a) < 1e-15);
}

TEST_CASE("kron entries follow the elementwise formula") {
  Rng rng(2);
  const CMatrix a = random_complex(2, 2, rng);
  const CMatrix b = random_complex(3, 3, rng);
  const CMatrix k = kron(a, b);
  REQUIRE(k.rows() == 6);
  double worst = 0.0;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      worst = std::max(worst, std::abs(k(i, j) - a(i / 3, j / 3) * b(i % 3, j % 3)));
  CHECK(worst < 1e-15);
}

TEST_CASE("kron is associative and bilinear") {
  for (int s = 0; s < 20; ++s) {
    Rng rng(100 + s);
    const CMatrix a = random_complex(2, 2, rng), b = random_complex(2, 3, rng),
                  c = random_complex(3, 2, rng), a2 = random_complex(2, 2, rng);
    CHECK(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))) < 1e-12);
    const Complex t(0.3, -1.2);
    CHECK(max_abs_diff(kron(a + t * a2, b), kron(a, b) + t * kron(a2, b)) < 1e-12);
    CHECK(max_abs_diff(kron(b, a + t * a2), kron(b, a) + t * kron(b, a2)) < 1e-12);
  }
}

TEST_CASE("partial trace of products and of the entangled projector") {
  Rng rng(3);
  const CMatrix a = random_hermitian(2, rng);
  const CMatrix b = random_hermitian(3, rng);
  CHECK(max_abs_diff(partial_trace(kron(a, b), DimPair(2, 3), Keep::First), a * b.trace()) < 1e-12);
  CHECK(max_abs_diff(partial_trace(kron(a, b), DimPair(2, 3), Keep::Second), b * a.trace()) < 1e-12);
  for (int d = 1; d <= 4; ++d) {
    CHECK(max_abs_diff(partial_trace(max_entangled(d), DimPair(d, d), Keep::First),
                       identity(d) / static_cast<double>(d)) < 1e-15);
  }
}

TEST_CASE("partial trace matches the index-sum oracle and preserves trace") {
  for (int s = 0; s < 20; ++s) {
    Rng rng(200 + s);
    const int da = rng.uniform_int(1, 4), db = rng.uniform_int(1, 4);
    const CMatrix m = random_hermitian(da * db, rng);
    const CMatrix k1 = partial_trace(m, DimPair(da, db), Keep::First);
    const CMatrix k2 = partial_trace(m, DimPair(da, db), Keep::Second);
    CHECK(max_abs_diff(k1, partial_trace_oracle(m, da, db, true)) < 1e-13);
    CHECK(max_abs_diff(k2, partial_trace_oracle(m, da, db, false)) < 1e-13);
    CHECK(std::abs(k1.trace() - m.trace()) <= 1e-12);
    CHECK(std::abs(k2.trace() - m.trace()) <= 1e-12);
  }
}

TEST_CASE("partial trace rejects mismatched dimensions") {
  CHECK_THROWS_AS(partial_trace(identity(5), DimPair(2, 2), Keep::First), DimensionError);
}

TEST_CASE("max_entangled expansions") {
  const CMatrix p1 = max_entangled(1);
  CHECK(p1.rows() == 1);
  CHECK(std::abs(p1(0, 0) - 1.0) < 1e-15);
  const CMatrix p2 = max_entangled(2);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const bool corner = (i == 0 || i == 3) && (j == 0 || j == 3);
      CHECK(std::abs(p2(i, j) - (corner ? 0.5 : 0.0)) < 1e-15);
    }
  }
  const CMatrix p3 = max_entangled(3);
  CHECK(std::abs(p3.trace() - 1.0) < 1e-15);
  CHECK(max_abs_diff(p3 * p3, p3) < 1e-15);
}

TEST_CASE("ricochet identity in the standard basis") {
  for (int s = 0; s < 20; ++s) {
    Rng rng(300 + s);
    const int d = rng.uniform_int(1, 4);
    const CMatrix x = random_complex(d, d, rng), y = random_complex(d, d, rng);
    // d <Phi+| x (x) y^T |Phi+> with |Phi+> = d^-1/2 sum |ii>.
    CVector phi = CVector::Zero(d * d);
    for (int i = 0; i < d; ++i) phi[i * d + i] = 1.0 / std::sqrt(static_cast<double>(d));
    const Complex rhs = static_cast<double>(d) * phi.dot(kron(x, y.transpose()) * phi);
    CHECK(std::abs((x * y).trace() - rhs) < 1e-10);
  }
}

TEST_CASE("min_eigenvalue on simple and shifted matrices") {
  CHECK(std::abs(min_eigenvalue(identity(3)) - 1.0) < 1e-15);
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = -1.0;
  CHECK(std::abs(min_eigenvalue(d) + 1.0) < 1e-15);
  for (int s = 0; s < 20; ++s) {
    Rng rng(400 + s);
    const int n = rng.uniform_int(1, 16);
    const CMatrix h = random_hermitian(n, rng);
    const double lam = min_eigenvalue(h);
    CHECK(std::abs(min_eigenvalue(h - lam * identity(n))) < 1e-10);
    // Rayleigh quotients never go below it.
    const CVector v = random_pure_vector(n, rng);
    CHECK(v.dot(h * v).real() >= lam - 1e-12);
  }
}

TEST_CASE("min_eigenvalue rejects non-Hermitian input") {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  CHECK_THROWS(min_eigenvalue(m));
}

TEST_CASE("hermitian basis spans the Hermitian operators") {
  for (int d = 1; d <= 4; ++d) {
    const auto b = hermitian_basis(d);
    CHECK(static_cast<int>(b.size()) == d * d);
    CHECK(span_rank(b) == d * d);
    for (const auto& m : b) CHECK(is_hermitian(m));
  }
}

TEST_CASE("psd square roots") {
  Rng rng(5);
  const CMatrix rho = random_density(4, 2, rng);
  const CMatrix r = psd_sqrt(rho);
  CHECK(max_abs_diff(r * r, rho) < 1e-12);
  const CMatrix ri = psd_inv_sqrt(rho);
  // r^-1/2 rho r^-1/2 is the support projector.
  const CMatrix proj = ri * rho * ri;
  CHECK(max_abs_diff(proj * proj, proj) < 1e-9);
  CHECK(std::abs(proj.trace().real() - 2.0) < 1e-9);
}

TEST_CASE("partial transpose and swap") {
  Rng rng(6);
  const CMatrix a = random_complex(2, 2, rng), b = random_complex(3, 3, rng);
  CHECK(max_abs_diff(partial_transpose_second(kron(a, b), DimPair(2, 3)), kron(a, b.transpose())) < 1e-15);
  CHECK(max_abs_diff(swap_factors(kron(a, b), DimPair(2, 3)), kron(b, a)) < 1e-15);
}

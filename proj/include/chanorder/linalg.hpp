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

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace chanorder {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Thrown when operand shapes do not fit the requested operation.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Hermiticity tolerance, relative to the spectral scale of the operand.
inline constexpr double kHermitianTol = 1e-9;
/// An operator is treated as PSD when its smallest eigenvalue is >= -kPsdTol.
inline constexpr double kPsdTol = 1e-8;

/// Dimensions of a bipartite space H_first (x) H_second. For channels the
/// pair reads (d_in, d_out).
struct DimPair {
  int first = 1;
  int second = 1;

  DimPair() = default;
  DimPair(int a, int b);

  int total() const { return first * second; }
  bool operator==(const DimPair&) const = default;
};

enum class Keep { First, Second };

/// Kronecker product; composite index (i, j) maps to i * dim(b) + j.
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Trace out one factor of a square operator on H_first (x) H_second.
CMatrix partial_trace(const CMatrix& m, DimPair dims, Keep keep);

/// Transpose of the second factor in the standard basis.
CMatrix partial_transpose_second(const CMatrix& m, DimPair dims);

/// Reorders an operator on A (x) B into one on B (x) A.
CMatrix swap_factors(const CMatrix& m, DimPair dims);

/// Reorders an operator on A1 (x) B1 (x) A2 (x) B2 into A1 (x) A2 (x) B1 (x) B2.
CMatrix regroup_pairs(const CMatrix& m, DimPair left, DimPair right);

/// Projector onto d^{-1/2} sum_i |i>|i>.
CMatrix max_entangled(int d);

CMatrix identity(int d);

bool is_square(const CMatrix& m);
bool all_finite(const CMatrix& m);

/// Largest |m - m^dagger| entry divided by max(1, spectral scale).
double hermiticity_defect(const CMatrix& m);

bool is_hermitian(const CMatrix& m, double tol = kHermitianTol);

CMatrix hermitian_part(const CMatrix& m);

/// Smallest eigenvalue of a Hermitian matrix. Throws std::invalid_argument if
/// the input is not Hermitian within kHermitianTol.
double min_eigenvalue(const CMatrix& h);

double max_eigenvalue(const CMatrix& h);

/// Eigenvalues in ascending order (input must be Hermitian).
RVector eigenvalues(const CMatrix& h);

bool is_psd(const CMatrix& h, double tol = kPsdTol);

/// Unit-trace PSD check.
bool is_density(const CMatrix& rho, double tol = kPsdTol);

/// Entrywise max |a - b|.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

/// Hermitian operator basis on C^d: diagonal units |k><k|, symmetric pairs
/// |k><l| + |l><k|, antisymmetric pairs -i|k><l| + i|l><k| (k < l).
std::vector<CMatrix> hermitian_basis(int d);

/// Rank of the span of the given matrices (vectorized), via SVD.
int span_rank(const std::vector<CMatrix>& ms, double tol = 1e-10);

/// Square root of a PSD matrix and its pseudo-inverse square root.
CMatrix psd_sqrt(const CMatrix& h);
CMatrix psd_inv_sqrt(const CMatrix& h, double cutoff = 1e-14);

}  // namespace chanorder

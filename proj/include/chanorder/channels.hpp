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
#include <vector>

#include "chanorder/linalg.hpp"
#include "chanorder/sampling.hpp"

namespace chanorder {

using RMatrix = Eigen::MatrixXd;

/// Thrown when a channel payload violates its representation invariants.
class InvalidChannel : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Column-stochastic kernel w(y|x), stored as matrix()(y, x).
class ClassicalChannel {
 public:
  static constexpr double kStochasticTol = 1e-12;

  /// Validates entries in [0, 1] and unit column sums.
  explicit ClassicalChannel(RMatrix w);

  /// Clips tiny negative entries and renormalizes columns before validating.
  /// Intended for solver output that is stochastic up to round-off.
  static ClassicalChannel from_approximate(RMatrix w);

  static ClassicalChannel identity(int n);
  static ClassicalChannel binary_symmetric(double e);
  /// Every input mapped to output symbol `symbol` of an alphabet of `n_out`.
  static ClassicalChannel constant(int n_in, int n_out, int symbol);
  /// Columns drawn from a flat Dirichlet.
  static ClassicalChannel random(int n_in, int n_out, Rng& rng);

  int in_size() const { return static_cast<int>(w_.cols()); }
  int out_size() const { return static_cast<int>(w_.rows()); }
  double operator()(int y, int x) const { return w_(y, x); }
  const RMatrix& matrix() const { return w_; }

 private:
  RMatrix w_;
};

/// phi o w, i.e. the matrix product phi * w.
ClassicalChannel compose(const ClassicalChannel& phi, const ClassicalChannel& w);

struct KrausSet {
  std::vector<CMatrix> ops;  // each d_out x d_in

  int d_in() const;
  int d_out() const;
  /// max |sum K^dagger K - I|
  double completeness_defect() const;
};

/// CPTP map N: A -> B held as its trace-one Choi operator
/// (id (x) N)(Phi+) on H_Abar (x) H_B.
class QuantumChannel {
 public:
  static constexpr double kTraceTol = 1e-9;

  QuantumChannel(DimPair dims, CMatrix choi);

  /// Projects a Choi operator that is CPTP up to round-off onto an exactly
  /// trace-preserving Hermitian operator, then validates.
  static QuantumChannel from_approximate(DimPair dims, const CMatrix& choi);

  static QuantumChannel identity(int d);
  static QuantumChannel completely_depolarizing(int d_in, int d_out);
  /// Diagonal part in the standard basis.
  static QuantumChannel dephasing(int d);
  static QuantumChannel from_kraus(const KrausSet& k);

  DimPair dims() const { return dims_; }
  int d_in() const { return dims_.first; }
  int d_out() const { return dims_.second; }
  const CMatrix& choi() const { return choi_; }

  /// N(rho) = d_in * Tr_Abar[(rho^T (x) I) choi]. Linear in rho; any square
  /// d_in x d_in operand is accepted.
  CMatrix apply(const CMatrix& rho) const;

  /// Kraus operators from the Choi eigendecomposition.
  KrausSet kraus() const;

  /// Smallest eigenvalue of the Choi operator and the trace-preservation defect.
  double choi_min_eigenvalue() const;
  double trace_defect() const;

 private:
  DimPair dims_;
  CMatrix choi_;
};

/// psi o n.
QuantumChannel compose(const QuantumChannel& psi, const QuantumChannel& n);

/// a (x) b acting on A1 (x) A2.
QuantumChannel tensor(const QuantumChannel& a, const QuantumChannel& b);

/// rho -> sum_{x,y} w(y|x) <x|rho|x> |y><y|.
QuantumChannel embed_classical(const ClassicalChannel& w);

/// Measure-and-prepare channel rho -> sum_i Tr[P^i rho] omega^i.
struct MeasurePrepareChannel {
  std::vector<CMatrix> povm;          // on the input space
  std::vector<CMatrix> preparations;  // density operators on the output space

  /// Throws InvalidChannel when the POVM or the preparations are invalid.
  void validate(double tol = 1e-9) const;
};

QuantumChannel mp_channel(const MeasurePrepareChannel& mp);
QuantumChannel mp_channel(const std::vector<CMatrix>& povm,
                          const std::vector<CMatrix>& preparations);

/// Entrywise complex conjugate in the standard basis.
QuantumChannel conjugate(const QuantumChannel& n);

/// Haar-isometry channel: V: C^{d_in} -> C^{d_out} (x) C^{rank}, rank traced
/// out. The rank is raised to ceil(d_in / d_out) when smaller.
QuantumChannel random_channel(int d_in, int d_out, int kraus_rank,
                              std::uint64_t seed);
QuantumChannel random_channel(int d_in, int d_out, int kraus_rank, Rng& rng);

/// d^2 pure states spanning the operators on C^d: |j><j|, then
/// (|j>+|k>)(<j|+<k|)/2 and (|j>+i|k>)(<j|-i<k|)/2 for j < k.
std::vector<CMatrix> spanning_states(int d);

/// Entrywise max distance between Choi operators.
double choi_distance(const QuantumChannel& a, const QuantumChannel& b);

}  // namespace chanorder

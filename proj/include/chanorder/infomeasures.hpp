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

// Guessing probability, Shannon quantities and the conditional min-entropy
// family. All logarithms are base 2.
//
// Conventions:
//   H_min(A|B)_rho = -log2 inf { Tr sigma_B : rho_AB <= I_A (x) sigma_B }
//   q_corr(A|B)    = sup_D d_A <Phi+| (id (x) D)(rho_AB) |Phi+>
// so that H_min = -log2 q_corr and, on cq states, H_min = -log2 p_guess.

#pragma once

#include <stdexcept>
#include <vector>

#include "chanorder/channels.hpp"
#include "chanorder/conic.hpp"

namespace chanorder {

/// Raised when an SDP behind a measure fails to converge or its primal and
/// dual values disagree by more than kMaxDualityGap.
class SolverFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kMaxDualityGap = 1e-6;

/// p(u, y), rows indexed by u.
class JointDistribution {
 public:
  static constexpr double kNormTol = 1e-12;

  explicit JointDistribution(RMatrix p);

  /// p(u, y) = p(u) sum_x w(y|x) p(x|u); `encoding` is the kernel p(x|u).
  static JointDistribution induced(const std::vector<double>& prior,
                                   const ClassicalChannel& encoding,
                                   const ClassicalChannel& w);

  int u_size() const { return static_cast<int>(p_.rows()); }
  int y_size() const { return static_cast<int>(p_.cols()); }
  const RMatrix& matrix() const { return p_; }
  std::vector<double> marginal_u() const;
  std::vector<double> marginal_y() const;

 private:
  RMatrix p_;
};

double pguess_classical(const JointDistribution& j);

/// Shannon entropy in bits, 0 log 0 := 0.
double shannon_entropy(const std::vector<double>& p);
double conditional_entropy(const JointDistribution& j);  // H(U|Y)
double mutual_information(const JointDistribution& j);   // I(U;Y)

/// sum_{u,y} p(u,y) |u><u| (x) |y><y| on C^|U| (x) C^|Y|.
CMatrix cq_embedding(const JointDistribution& j);

/// Prior p(u) and encoded states tau^u on a common space.
struct CqEnsemble {
  std::vector<double> prior;
  std::vector<CMatrix> states;

  void validate() const;
  int dim() const { return static_cast<int>(states.front().rows()); }
  /// States mapped through n.
  CqEnsemble through(const QuantumChannel& n) const;
  /// sum_u p(u) |u><u| (x) tau^u.
  CMatrix joint_state() const;
  /// Diagonal ensemble for a classical prior and encoding p(x|u).
  static CqEnsemble classical(const std::vector<double>& prior,
                              const ClassicalChannel& encoding);
};

struct HminResult {
  double hmin = 0.0;      // bits
  double inf_value = 0.0; // optimal Tr sigma_B
  CMatrix sigma;          // optimizer sigma_B
  int iterations = 0;
};

/// Conditional min-entropy H_min(A|B) of a state on A (x) B with A first.
HminResult hmin_general_full(const CMatrix& rho_ab, DimPair dims);
double hmin_general(const CMatrix& rho_ab, DimPair dims);

struct GuessResult {
  double value = 0.0;
  std::vector<CMatrix> povm;  // one element per prior symbol (zero for p(u)=0)
};

/// Optimal state discrimination of the ensemble (no channel applied).
GuessResult pguess_cq(const CqEnsemble& e);
/// Optimal discrimination of the ensemble after passing through n.
GuessResult pguess_cq(const CqEnsemble& e, const QuantumChannel& n);

/// sum_u p(u) Tr[tau^u P^u] for an explicit POVM.
double povm_success(const CqEnsemble& e, const std::vector<CMatrix>& povm);

struct QcorrResult {
  double value = 0.0;
  QuantumChannel decoder;  // D: B -> A'
};

QcorrResult qcorr(const CMatrix& rho_ab, DimPair dims);

/// Checks that rho is a density operator of the stated bipartite shape.
void require_bipartite_state(const CMatrix& rho, DimPair dims);

}  // namespace chanorder

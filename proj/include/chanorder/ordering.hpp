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

// Degradability of one channel into another, counterexample encodings
// extracted from Farkas certificates, and sampled checks of the orderings
// defined by conditional entropy, guessing probability and min-entropy.
//
// Witness orientation. For a pair (first, second) that is not degradable:
//   classical: a prior p(u) and encoding p(x|u) with U = Z such that
//              pguess(U|Y) < pguess(U|Z);
//   quantum:   a pure state phi on Rbar (x) R, R of the size of the second
//              output, and a measure-and-prepare Gamma: R -> A with
//              H_min(Rbar|B)_rho > H_min(Rbar|B')_sigma for
//              rho = (id (x) first o Gamma)phi, sigma = (id (x) second o Gamma)phi.
//              phi is maximally entangled exactly when the shifted
//              certificate operators already sum to a multiple of I.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "chanorder/channels.hpp"
#include "chanorder/conic.hpp"
#include "chanorder/infomeasures.hpp"

namespace chanorder {

inline constexpr double kWitnessMargin = 1e-7;
inline constexpr double kViolationTol = 1e-7;

/// Raised when a certificate does not yield a witness that survives
/// recomputation. Signals a tolerance problem, not a mathematical claim.
class ExtractionFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class VerdictStatus { Degradable, NotDegradable, Inconclusive };

std::string to_string(VerdictStatus s);

struct ClassicalWitness {
  ClassicalChannel encoding;  // p(x|u), u ranging over the second output
  std::vector<double> prior;  // p(u)
  double pguess_first = 0.0;  // pguess(U|Y)
  double pguess_second = 0.0; // pguess(U|Z)
};

struct QuantumWitness {
  CVector phi;                  // pure state on Rbar (x) R
  MeasurePrepareChannel gamma;  // R -> A
  QuantumChannel channel;       // mp_channel(gamma)
  double hmin_first = 0.0;      // H_min(Rbar|B)_rho
  double hmin_second = 0.0;     // H_min(Rbar|B')_sigma
};

struct Witness {
  std::optional<ClassicalWitness> classical;
  std::optional<QuantumWitness> quantum;
  /// Gap in guessing-probability units: pguess(U|Z) - pguess(U|Y), or
  /// 2^-H_min(sigma) - 2^-H_min(rho). Comparable across the two variants.
  double separation = 0.0;
  /// "certificate" when built from the separating functional alone,
  /// "refined" when taken from the witness optimization.
  std::string origin;

  /// Strict-inequality margin in the units of the validating measure.
  double margin() const;
};

/// Intermediate objects of the separation argument.
///
/// Adding a multiple of I to any Y^i changes both sides of the separating
/// inequality by the same amount, because Psi(rho^i) and sigma^i have unit
/// trace. The shifted operators W^i = (Y^i + nu I) / lambda are PSD with
/// sum_i Tr W^i = 1. Their sum T fixes the reference marginal of the
/// witness state and P^i = T^-1/2 W^i T^-1/2 is the POVM.
struct SeparationFrame {
  std::vector<CMatrix> states;  // omega^i on the reference space
  std::vector<CMatrix> basis;   // X^j on the second output space
  RMatrix coefficients;         // c_ij
  std::vector<CMatrix> y_ops;   // Y^i = sum_j c_ij X^j
  double lambda = 0.0;
  double nu = 0.0;
  std::vector<CMatrix> weighted;  // W^i
  CMatrix total;                  // T = sum_i W^i, trace 1
  std::vector<CMatrix> povm;      // P^i
  RVector certificate;
  double certificate_gap = 0.0;
};

struct DegradabilityVerdict {
  VerdictStatus status = VerdictStatus::Inconclusive;
  std::optional<ClassicalChannel> classical_map;
  std::optional<QuantumChannel> quantum_map;
  double residual = INFINITY;  // max-entry composition error of the map
  std::optional<Witness> witness;
  std::optional<SeparationFrame> frame;
  int attempts = 0;
  std::string message;
};

/// Is there a stochastic phi with w2 = phi o w?
DegradabilityVerdict classical_degradable(const ClassicalChannel& w,
                                          const ClassicalChannel& w2,
                                          double tol = 1e-7);

/// Is there a CPTP Psi with n2 = Psi o n?
DegradabilityVerdict quantum_degradable(const QuantumChannel& n,
                                        const QuantumChannel& n2,
                                        double tol = 1e-7);

/// Feasibility programs behind the verdicts, exposed so certificates can be
/// re-checked. Row order: normalization rows first, then one row per
/// (reference state i, basis element j) with i major.
ConicProgram classical_program(const ClassicalChannel& w, const ClassicalChannel& w2);
ConicProgram quantum_program(const QuantumChannel& n, const QuantumChannel& n2);

/// Builds the frame from a Farkas certificate of the program above.
SeparationFrame classical_frame(const ClassicalChannel& w, const ClassicalChannel& w2,
                                const RVector& certificate);
SeparationFrame quantum_frame(const QuantumChannel& n, const QuantumChannel& n2,
                              const RVector& certificate);

/// Witness from a frame, validated by recomputation; throws
/// ExtractionFailure when the strict inequality does not hold by
/// kWitnessMargin.
Witness extract_classical_witness(const SeparationFrame& frame, const ClassicalChannel& w,
                                  const ClassicalChannel& w2);
Witness extract_quantum_witness(const SeparationFrame& frame, const QuantumChannel& n,
                                const QuantumChannel& n2);

/// Witness optimization over the weighted operators W^i (fixed spanning
/// preparations in the quantum case): the witness with the largest
/// separation. Returns nothing when the optimum does not clear the margin.
std::optional<Witness> refine_classical_witness(const ClassicalChannel& w,
                                                const ClassicalChannel& w2);
std::optional<Witness> refine_quantum_witness(const QuantumChannel& n,
                                              const QuantumChannel& n2);

/// Recomputes a witness's measure pair with the independent oracles and
/// returns the margin (negative when it fails).
double validate_witness(const Witness& wit, const ClassicalChannel& w,
                        const ClassicalChannel& w2);
double validate_witness(const Witness& wit, const QuantumChannel& n,
                        const QuantumChannel& n2);

// ---------------------------------------------------------------------------
// Sampled orderings

struct ViolationReport {
  int trials = 0;
  int violations = 0;
  double worst_margin = INFINITY;  // min over trials; negative = violation
  int worst_trial = -1;
  std::uint64_t seed = 0;
  std::vector<double> margins;     // per trial
};

struct CoherenceProbe {
  CVector phi;               // pure state on Rbar (x) R
  int d_r = 0;
  QuantumChannel encoding;   // R -> A
};

struct AmbiguityOptions {
  int extension = 0;                   // d_C; 0 means no extension
  std::vector<CqEnsemble> injected;    // evaluated first, before sampling
};

/// H_min(U|B)_rho <= H_min(U|B')_sigma over random cq ensembles. The margin
/// of a trial is H_min(U|B') - H_min(U|B).
ViolationReport check_ambiguity_sampled(const QuantumChannel& n, const QuantumChannel& n2,
                                        int trials, std::uint64_t seed,
                                        const AmbiguityOptions& opts = {});

/// Same ordering for random pure states and encodings Gamma: R -> A.
ViolationReport check_coherence_sampled(const QuantumChannel& n, const QuantumChannel& n2,
                                        int trials, std::uint64_t seed,
                                        const std::vector<CoherenceProbe>& injected = {});

/// H(U|Y) <= H(U|Z) over random priors and encodings. Trial 0 is the
/// identity encoding with a uniform prior.
ViolationReport check_noisiness_sampled(const ClassicalChannel& w,
                                        const ClassicalChannel& w2, int trials,
                                        std::uint64_t seed);

/// The cq ensemble of a classical witness (its prior, diagonal states
/// p(.|u)); violates the guessing order of its pair. Useful for injection.
CqEnsemble witness_ensemble(const ClassicalWitness& w);

// ---------------------------------------------------------------------------
// Random pairs and the search for less-noisy but not degradable pairs

struct ClassicalPair {
  ClassicalChannel first;
  ClassicalChannel second;
};

struct QuantumPair {
  QuantumChannel first;
  QuantumChannel second;
};

/// degradable: second = phi o first with phi random; otherwise independent.
ClassicalPair random_classical_pair(int nx, int ny, int nz, bool degradable,
                                    std::uint64_t seed);
QuantumPair random_quantum_pair(int d_in, int d_out, int d_out2, bool degradable,
                                std::uint64_t seed);

struct KmCandidate {
  int trial = 0;
  ClassicalPair pair;
  Witness witness;
  ViolationReport noisiness;
};

struct KmSearchOptions {
  int nx = 3;
  int ny = 3;
  int nz = 3;
  int trials = 100;
  int noisiness_trials = 200;
  bool degradable = false;  // draw second = phi o first
  std::uint64_t seed = 0;
};

/// Pairs certified not degradable whose sampled noisiness check found no
/// violation. Exploratory: no candidate is claimed to be less noisy.
std::vector<KmCandidate> km_search(const KmSearchOptions& opts);

}  // namespace chanorder

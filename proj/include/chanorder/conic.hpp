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

// Small dense conic programs over products of nonnegative orthants and
// Hermitian PSD cones:
//
//   find / optimize   X = (X_1, ..., X_K),  X_k in cone_k
//   subject to        <A_i, X> = b_i,        i = 1..m
//
// where <A, X> = sum_k Re tr(A_k X_k). Feasibility problems come back either
// with a point satisfying the equalities within tolerance or with a Farkas
// certificate y: b^T y > 0 and A^*(y) in minus the (self-dual) cone.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chanorder/linalg.hpp"

namespace chanorder {

enum class ConeKind { Nonnegative, Psd };

struct ConeBlock {
  ConeKind kind;
  int size;  // orthant length or PSD side
};

enum class Sense { Feasibility, Minimize, Maximize };

/// Thrown for malformed programs (bad block or row index, shape mismatch).
class ConicError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A point of the variable space: one Hermitian matrix per PSD block and one
/// real vector per orthant block (the other member is empty).
struct ConicPoint {
  std::vector<CMatrix> psd;
  std::vector<RVector> nonneg;
};

class ConicProgram {
 public:
  int add_nonnegative(int n);
  int add_psd(int side);

  /// New equality row <A_row, X> = rhs; returns its index.
  int add_row(double rhs);

  /// Adds Re(a * X_block(r, c)) to the row functional.
  void add_entry(int row, int block, int r, int c, Complex a);
  /// Adds scale * Re tr(m X_block). Zero entries of m are skipped.
  void add_trace(int row, int block, const CMatrix& m, double scale = 1.0);
  /// Adds a * x_block[index] for an orthant block.
  void add_linear(int row, int block, int index, double a);

  /// Objective terms; the sense is set separately. Default: feasibility.
  void add_objective_trace(int block, const CMatrix& m, double scale = 1.0);
  void add_objective_linear(int block, int index, double c);
  void set_sense(Sense s) { sense_ = s; }

  Sense sense() const { return sense_; }
  int num_rows() const { return static_cast<int>(rhs_.size()); }
  const std::vector<ConeBlock>& blocks() const { return blocks_; }
  const std::vector<double>& rhs() const { return rhs_; }

  /// Real dimension of the variable space (n per orthant, d^2 per PSD block).
  int parameter_count() const;

  /// Row values <A_i, X>.
  RVector evaluate_rows(const ConicPoint& x) const;
  /// Objective <C, X> (zero for feasibility programs).
  double evaluate_objective(const ConicPoint& x) const;
  /// A^*(y) split per block.
  ConicPoint adjoint(const RVector& y) const;

  ConicPoint zero_point() const;

  struct Entry {
    int row;
    int block;
    int r;
    int c;
    Complex a;
  };
  const std::vector<Entry>& entries() const { return entries_; }
  const std::vector<Entry>& objective_entries() const { return objective_; }

 private:
  void check_block(int block, int r, int c) const;

  std::vector<ConeBlock> blocks_;
  std::vector<double> rhs_;
  std::vector<Entry> entries_;
  std::vector<Entry> objective_;
  Sense sense_ = Sense::Feasibility;
};

enum class ConicStatus { Feasible, Infeasible, Optimal, NumericalFailure };

std::string to_string(ConicStatus s);

struct CertificateCheck {
  bool valid = false;
  double gap = 0.0;         // b^T y after normalizing |y|_2 = 1
  double cone_slack = 0.0;  // min eigenvalue / entry of -A^*(y), normalized
};

struct ConicOutcome {
  ConicStatus status = ConicStatus::NumericalFailure;
  ConicPoint solution;
  double residual = INFINITY;  // max |<A_i, X> - b_i|
  /// Normalized Farkas certificate; present iff status == Infeasible.
  std::optional<RVector> certificate;
  CertificateCheck certificate_check;
  double objective = 0.0;       // primal <C, X> in the program's sense
  double dual_objective = 0.0;  // b^T y
  RVector dual;                 // multipliers y of the equality rows
  int iterations = 0;
  std::string message;
};

struct SolverOptions {
  double tol = 1e-7;           // feasibility residual threshold
  double min_certificate_gap = 1e-7;
  int max_iterations = 200;
  double target_accuracy = 1e-10;  // interior point stopping rule
};

/// Checks the Farkas conditions for a feasibility program: after
/// normalizing |y|_2 = 1, b^T y >= min_gap and -A^*(y) is in the cone up to
/// -tol.
CertificateCheck verify_certificate(const ConicProgram& p, const RVector& y,
                                    double tol = 1e-7, double min_gap = 1e-7);

/// Solves p. Feasibility programs yield Feasible, Infeasible (with a verified
/// certificate) or NumericalFailure; optimization programs yield Optimal or
/// NumericalFailure. Never reports Infeasible without a verified certificate.
ConicOutcome solve(const ConicProgram& p, const SolverOptions& opts = {});
ConicOutcome solve(const ConicProgram& p, double tol);

/// Test hook for fault injection: when positive, every solve() stops at this
/// interior point accuracy instead of the requested one. 0 restores normal
/// behavior. Not thread-safe.
void set_accuracy_fault(double target_accuracy);

}  // namespace chanorder

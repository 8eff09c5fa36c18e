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

#include "chanorder/infomeasures.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace chanorder {

JointDistribution::JointDistribution(RMatrix p) : p_(std::move(p)) {
  if (p_.rows() < 1 || p_.cols() < 1) throw std::invalid_argument("joint: empty");
  if (!p_.allFinite() || p_.minCoeff() < 0.0) {
    throw std::invalid_argument("joint: entries must be finite and nonnegative");
  }
  if (std::abs(p_.sum() - 1.0) > kNormTol) {
    throw std::invalid_argument("joint: total mass " + std::to_string(p_.sum()));
  }
}

JointDistribution JointDistribution::induced(const std::vector<double>& prior,
                                             const ClassicalChannel& encoding,
                                             const ClassicalChannel& w) {
  if (static_cast<int>(prior.size()) != encoding.in_size()) {
    throw DimensionError("induced joint: prior size differs from encoding input");
  }
  const RMatrix chan = w.matrix() * encoding.matrix();  // (y | u)
  RMatrix p(encoding.in_size(), w.out_size());
  for (int u = 0; u < p.rows(); ++u)
    for (int y = 0; y < p.cols(); ++y) p(u, y) = prior[static_cast<size_t>(u)] * chan(y, u);
  const double total = p.sum();
  if (std::abs(total - 1.0) <= 1e-9) p /= total;
  return JointDistribution(std::move(p));
}

std::vector<double> JointDistribution::marginal_u() const {
  std::vector<double> out(static_cast<size_t>(u_size()));
  for (int u = 0; u < u_size(); ++u) out[static_cast<size_t>(u)] = p_.row(u).sum();
  return out;
}

std::vector<double> JointDistribution::marginal_y() const {
  std::vector<double> out(static_cast<size_t>(y_size()));
  for (int y = 0; y < y_size(); ++y) out[static_cast<size_t>(y)] = p_.col(y).sum();
  return out;
}

double pguess_classical(const JointDistribution& j) {
  double total = 0.0;
  for (int y = 0; y < j.y_size(); ++y) total += j.matrix().col(y).maxCoeff();
  return total;
}

double shannon_entropy(const std::vector<double>& p) {
  double h = 0.0;
  for (double v : p)
    if (v > 0.0) h -= v * std::log2(v);
  return h;
}

double conditional_entropy(const JointDistribution& j) {
  // H(U|Y) = H(U,Y) - H(Y)
  std::vector<double> all(j.matrix().data(), j.matrix().data() + j.matrix().size());
  return std::max(0.0, shannon_entropy(all) - shannon_entropy(j.marginal_y()));
}

double mutual_information(const JointDistribution& j) {
  return shannon_entropy(j.marginal_u()) - conditional_entropy(j);
}

CMatrix cq_embedding(const JointDistribution& j) {
  const int nu = j.u_size();
  const int ny = j.y_size();
  CMatrix rho = CMatrix::Zero(nu * ny, nu * ny);
  for (int u = 0; u < nu; ++u)
    for (int y = 0; y < ny; ++y) rho(u * ny + y, u * ny + y) = j.matrix()(u, y);
  return rho;
}

// ---------------------------------------------------------------------------
// Ensembles

void CqEnsemble::validate() const {
  if (prior.empty() || prior.size() != states.size()) {
    throw std::invalid_argument("ensemble: prior and state counts differ");
  }
  double total = 0.0;
  for (double p : prior) {
    if (!(p >= 0.0)) throw std::invalid_argument("ensemble: negative prior");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("ensemble: prior sums to " + std::to_string(total));
  }
  const auto d = states.front().rows();
  for (const auto& s : states) {
    if (s.rows() != d || s.cols() != d) throw DimensionError("ensemble: state shapes differ");
    if (!is_density(s)) throw std::invalid_argument("ensemble: invalid density operator");
  }
}

CqEnsemble CqEnsemble::through(const QuantumChannel& n) const {
  CqEnsemble out;
  out.prior = prior;
  for (const auto& s : states) out.states.push_back(hermitian_part(n.apply(s)));
  return out;
}

CMatrix CqEnsemble::joint_state() const {
  const int nu = static_cast<int>(prior.size());
  const int d = dim();
  CMatrix rho = CMatrix::Zero(nu * d, nu * d);
  for (int u = 0; u < nu; ++u)
    rho.block(u * d, u * d, d, d) = prior[static_cast<size_t>(u)] * states[static_cast<size_t>(u)];
  return rho;
}

CqEnsemble CqEnsemble::classical(const std::vector<double>& prior,
                                 const ClassicalChannel& encoding) {
  CqEnsemble out;
  out.prior = prior;
  for (int u = 0; u < encoding.in_size(); ++u) {
    CMatrix s = CMatrix::Zero(encoding.out_size(), encoding.out_size());
    for (int x = 0; x < encoding.out_size(); ++x) s(x, x) = encoding(x, u);
    out.states.push_back(s);
  }
  return out;
}

// ---------------------------------------------------------------------------
// SDP measures

void require_bipartite_state(const CMatrix& rho, DimPair dims) {
  if (rho.rows() != dims.total() || rho.cols() != dims.total()) {
    throw DimensionError("bipartite state: side " + std::to_string(rho.rows()) +
                         " does not match " + std::to_string(dims.first) + "*" +
                         std::to_string(dims.second));
  }
  if (!is_density(rho)) throw std::invalid_argument("bipartite state: not a density operator");
}

namespace {

void require_optimal(const ConicOutcome& o, const char* what) {
  if (o.status != ConicStatus::Optimal) {
    throw SolverFailure(std::string(what) + ": " + o.message);
  }
  if (std::abs(o.objective - o.dual_objective) > kMaxDualityGap) {
    throw SolverFailure(std::string(what) + ": duality gap " +
                        std::to_string(std::abs(o.objective - o.dual_objective)));
  }
}

}  // namespace

HminResult hmin_general_full(const CMatrix& rho_ab, DimPair dims) {
  require_bipartite_state(rho_ab, dims);
  const CMatrix rho = hermitian_part(rho_ab);
  // Solved in the dual form max Tr[rho X] s.t. Tr_A X = I_B, X >= 0, which
  // has d_B^2 rows instead of (d_A d_B)^2. The row multipliers y give
  // sigma = sum_j y_j B_j with I_A (x) sigma >= rho.
  const auto basis = hermitian_basis(dims.second);
  const CMatrix id_a = identity(dims.first);
  ConicProgram p;
  const int x = p.add_psd(dims.total());
  for (const auto& b : basis) {
    const int row = p.add_row(b.trace().real());
    p.add_trace(row, x, kron(id_a, b));
  }
  p.add_objective_trace(x, rho);
  p.set_sense(Sense::Maximize);
  const ConicOutcome o = solve(p);
  require_optimal(o, "hmin_general");
  HminResult out;
  out.sigma = CMatrix::Zero(dims.second, dims.second);
  for (size_t j = 0; j < basis.size(); ++j) out.sigma += o.dual[static_cast<int>(j)] * basis[j];
  out.inf_value = o.dual_objective;
  out.hmin = -std::log2(out.inf_value);
  out.iterations = o.iterations;
  return out;
}

double hmin_general(const CMatrix& rho_ab, DimPair dims) {
  return hmin_general_full(rho_ab, dims).hmin;
}

GuessResult pguess_cq(const CqEnsemble& e) {
  e.validate();
  const int d = e.dim();
  std::vector<int> active;
  for (size_t u = 0; u < e.prior.size(); ++u)
    if (e.prior[u] > 0.0) active.push_back(static_cast<int>(u));

  GuessResult out;
  out.povm.assign(e.prior.size(), CMatrix::Zero(d, d));
  if (active.size() == 1) {
    out.value = 1.0;
    out.povm[static_cast<size_t>(active.front())] = identity(d);
    return out;
  }
  ConicProgram p;
  std::vector<int> blocks;
  for (size_t k = 0; k < active.size(); ++k) blocks.push_back(p.add_psd(d));
  for (const auto& b : hermitian_basis(d)) {
    const int row = p.add_row(b.trace().real());
    for (int blk : blocks) p.add_trace(row, blk, b);
  }
  for (size_t k = 0; k < active.size(); ++k) {
    const auto u = static_cast<size_t>(active[k]);
    p.add_objective_trace(blocks[k], e.states[u], e.prior[u]);
  }
  p.set_sense(Sense::Maximize);
  const ConicOutcome o = solve(p);
  require_optimal(o, "pguess_cq");
  out.value = o.objective;
  for (size_t k = 0; k < active.size(); ++k) {
    out.povm[static_cast<size_t>(active[k])] = o.solution.psd[static_cast<size_t>(blocks[k])];
  }
  return out;
}

GuessResult pguess_cq(const CqEnsemble& e, const QuantumChannel& n) {
  e.validate();
  if (e.dim() != n.d_in()) {
    throw DimensionError("pguess_cq: ensemble dimension " + std::to_string(e.dim()) +
                         " differs from channel input " + std::to_string(n.d_in()));
  }
  return pguess_cq(e.through(n));
}

double povm_success(const CqEnsemble& e, const std::vector<CMatrix>& povm) {
  if (povm.size() != e.states.size()) throw DimensionError("povm_success: size mismatch");
  double total = 0.0;
  for (size_t u = 0; u < povm.size(); ++u)
    total += e.prior[u] * (e.states[u] * povm[u]).trace().real();
  return total;
}

QcorrResult qcorr(const CMatrix& rho_ab, DimPair dims) {
  require_bipartite_state(rho_ab, dims);
  const int da = dims.first;
  const int db = dims.second;
  // Decoder Choi J on B (x) A'. The figure of merit equals
  // d_B Re tr(swap(rho)^T J).
  ConicProgram p;
  const int j = p.add_psd(db * da);
  for (const auto& e : hermitian_basis(db)) {
    const int row = p.add_row(e.trace().real() / db);
    p.add_trace(row, j, kron(e, identity(da)));
  }
  const CMatrix c = swap_factors(hermitian_part(rho_ab), dims).transpose();
  p.add_objective_trace(j, c, static_cast<double>(db));
  p.set_sense(Sense::Maximize);
  const ConicOutcome o = solve(p);
  require_optimal(o, "qcorr");
  return QcorrResult{o.objective,
                     QuantumChannel::from_approximate(DimPair(db, da), o.solution.psd[0])};
}

}  // namespace chanorder

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

#include "chanorder/ordering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace chanorder {

std::string to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Degradable:
      return "degradable";
    case VerdictStatus::NotDegradable:
      return "not_degradable";
    case VerdictStatus::Inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

double Witness::margin() const {
  if (classical) return classical->pguess_second - classical->pguess_first;
  if (quantum) return quantum->hmin_first - quantum->hmin_second;
  return -INFINITY;
}

namespace {

constexpr double kShiftEpsilon = 1e-9;

void require_same_input(int a, int b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": input sizes " + std::to_string(a) +
                         " and " + std::to_string(b) + " differ");
  }
}

CMatrix diag_unit(int n, int k) {
  CMatrix m = CMatrix::Zero(n, n);
  m(k, k) = 1.0;
  return m;
}

// (id (x) ch)(x) for x on C^{d_first} (x) C^{d_in}.
CMatrix apply_second(const QuantumChannel& ch, const CMatrix& x, int d_first) {
  const int di = ch.d_in();
  const int dout = ch.d_out();
  CMatrix out(d_first * dout, d_first * dout);
  for (int a = 0; a < d_first; ++a)
    for (int b = 0; b < d_first; ++b)
      out.block(a * dout, b * dout, dout, dout) = ch.apply(x.block(a * di, b * di, di, di));
  return out;
}

// Reference operators omega^i and their images N(conj omega^i), which are
// d_A Tr_Abar[(omega^i (x) I) J_N].
struct Images {
  std::vector<CMatrix> states;
  std::vector<CMatrix> first;
  std::vector<CMatrix> second;
};

Images quantum_images(const QuantumChannel& n, const QuantumChannel& n2) {
  Images im;
  im.states = spanning_states(n.d_in());
  for (const auto& w : im.states) {
    im.first.push_back(hermitian_part(n.apply(w.conjugate())));
    im.second.push_back(hermitian_part(n2.apply(w.conjugate())));
  }
  return im;
}

CMatrix clip_psd(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(m));
  const RVector ev = es.eigenvalues().cwiseMax(0.0);
  return hermitian_part(es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint());
}

// Common shift nu making every Y^i PSD, then W^i with total trace 1.
void shift_and_rescale(SeparationFrame& f, int dim) {
  double lowest = 0.0;
  for (const auto& y : f.y_ops) lowest = std::min(lowest, min_eigenvalue(hermitian_part(y)));
  f.nu = std::max(0.0, -lowest) + kShiftEpsilon;
  f.lambda = 0.0;
  for (const auto& y : f.y_ops) f.lambda += y.trace().real() + f.nu * dim;
  f.weighted.clear();
  f.total = CMatrix::Zero(dim, dim);
  for (const auto& y : f.y_ops) {
    f.weighted.push_back(hermitian_part(y + f.nu * identity(dim)) / f.lambda);
    f.total += f.weighted.back();
  }
  f.total = hermitian_part(f.total);
}

// P^i = T^-1/2 W^i T^-1/2 on the support of T; the kernel goes to P^0.
std::vector<CMatrix> povm_from_weighted(const std::vector<CMatrix>& w, const CMatrix& t) {
  const int d = static_cast<int>(t.rows());
  const CMatrix inv = psd_inv_sqrt(t, 1e-12);
  std::vector<CMatrix> p;
  CMatrix sum = CMatrix::Zero(d, d);
  for (const auto& m : w) {
    p.push_back(clip_psd(inv * m * inv));
    sum += p.back();
  }
  // Kernel of T plus round-off, then exact normalization.
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(sum));
  RVector ev = es.eigenvalues();
  CMatrix kernel = CMatrix::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    if (ev[k] < 0.5) {
      kernel += es.eigenvectors().col(k) * es.eigenvectors().col(k).adjoint();
      ev[k] = 1.0;
    }
  }
  p.front() += kernel;
  const CMatrix fix = es.eigenvectors() * ev.cwiseInverse().cwiseSqrt().asDiagonal() *
                      es.eigenvectors().adjoint();
  for (auto& m : p) m = hermitian_part(fix * m * fix);
  return p;
}

// |phi> = sum_k conj(T^1/2)|k> (x) |k>, normalized; its Rbar marginal is T^T.
CVector reference_state(const CMatrix& t) {
  const int d = static_cast<int>(t.rows());
  const CMatrix a = psd_sqrt(hermitian_part(t)).conjugate();
  CVector phi = CVector::Zero(d * d);
  for (int k = 0; k < d; ++k)
    for (int r = 0; r < d; ++r) phi[r * d + k] = a(r, k);
  return phi / phi.norm();
}

ClassicalWitness make_classical_witness(std::vector<double> prior,
                                        const ClassicalChannel& encoding,
                                        const ClassicalChannel& w,
                                        const ClassicalChannel& w2) {
  const double first = pguess_classical(JointDistribution::induced(prior, encoding, w));
  const double second = pguess_classical(JointDistribution::induced(prior, encoding, w2));
  return ClassicalWitness{encoding, std::move(prior), first, second};
}

// q(x, u) >= 0 with total mass 1 -> prior p(u) and encoding p(x|u).
ClassicalWitness classical_from_joint(const RMatrix& q_in, const ClassicalChannel& w,
                                      const ClassicalChannel& w2) {
  const RMatrix q = q_in.cwiseMax(0.0);
  const int nx = static_cast<int>(q.rows());
  const int nu = static_cast<int>(q.cols());
  const double mass = q.sum();
  std::vector<double> prior(static_cast<size_t>(nu));
  RMatrix enc(nx, nu);
  for (int u = 0; u < nu; ++u) {
    const double pu = q.col(u).sum();
    prior[static_cast<size_t>(u)] = pu / mass;
    if (pu > 0.0) {
      enc.col(u) = q.col(u) / pu;
    } else {
      enc.col(u).setConstant(1.0 / nx);
    }
  }
  double total = 0.0;
  for (double v : prior) total += v;
  for (double& v : prior) v /= total;
  return make_classical_witness(std::move(prior), ClassicalChannel::from_approximate(enc), w,
                                w2);
}

QuantumWitness make_quantum_witness(CVector phi, const MeasurePrepareChannel& mp,
                                    const QuantumChannel& n, const QuantumChannel& n2) {
  const QuantumChannel gamma = mp_channel(mp);
  const int dr = gamma.d_in();
  const CMatrix state = phi * phi.adjoint();
  const CMatrix rho = hermitian_part(apply_second(compose(n, gamma), state, dr));
  const CMatrix sigma = hermitian_part(apply_second(compose(n2, gamma), state, dr));
  const double h1 = hmin_general(rho, DimPair(dr, n.d_out()));
  const double h2 = hmin_general(sigma, DimPair(dr, n2.d_out()));
  return QuantumWitness{std::move(phi), mp, gamma, h1, h2};
}

QuantumWitness quantum_from_weighted(const std::vector<CMatrix>& weighted,
                                     const CMatrix& total,
                                     const std::vector<CMatrix>& states,
                                     const QuantumChannel& n, const QuantumChannel& n2) {
  MeasurePrepareChannel mp;
  mp.povm = povm_from_weighted(weighted, total);
  for (const auto& w : states) mp.preparations.push_back(w.conjugate());
  return make_quantum_witness(reference_state(total), mp, n, n2);
}

Witness wrap(ClassicalWitness cw, const char* origin) {
  Witness out;
  out.separation = cw.pguess_second - cw.pguess_first;
  out.classical = std::move(cw);
  out.origin = origin;
  return out;
}

Witness wrap(QuantumWitness qw, const char* origin) {
  Witness out;
  out.separation = std::exp2(-qw.hmin_second) - std::exp2(-qw.hmin_first);
  out.quantum = std::move(qw);
  out.origin = origin;
  return out;
}

SolverOptions options_for(double tol, int attempt) {
  SolverOptions o;
  o.tol = tol;
  if (attempt > 0) o.target_accuracy = 1e-11;
  return o;
}

// Picks the larger separation among the validated candidates.
std::optional<Witness> best_of(std::optional<Witness> a, std::optional<Witness> b) {
  if (!a) return b;
  if (!b) return a;
  return b->separation > a->separation ? b : a;
}

}  // namespace

// ---------------------------------------------------------------------------
// Programs

ConicProgram classical_program(const ClassicalChannel& w, const ClassicalChannel& w2) {
  require_same_input(w.in_size(), w2.in_size(), "classical_program");
  const int nx = w.in_size();
  const int ny = w.out_size();
  const int nz = w2.out_size();
  ConicProgram p;
  const int phi = p.add_nonnegative(nz * ny);  // phi(z|y) at z * ny + y
  for (int y = 0; y < ny; ++y) {
    const int row = p.add_row(1.0);
    for (int z = 0; z < nz; ++z) p.add_linear(row, phi, z * ny + y, 1.0);
  }
  for (int x = 0; x < nx; ++x) {
    for (int z = 0; z < nz; ++z) {
      const int row = p.add_row(w2(z, x));
      for (int y = 0; y < ny; ++y)
        if (w(y, x) != 0.0) p.add_linear(row, phi, z * ny + y, w(y, x));
    }
  }
  return p;
}

ConicProgram quantum_program(const QuantumChannel& n, const QuantumChannel& n2) {
  require_same_input(n.d_in(), n2.d_in(), "quantum_program");
  const int db = n.d_out();
  const int dbp = n2.d_out();
  const Images im = quantum_images(n, n2);
  const auto basis = hermitian_basis(dbp);
  ConicProgram p;
  const int j = p.add_psd(db * dbp);  // Choi of Psi on B (x) B'
  for (const auto& e : hermitian_basis(db)) {
    const int row = p.add_row(e.trace().real() / db);
    p.add_trace(row, j, kron(e, identity(dbp)));
  }
  // Tr[Psi(rho^i) X^j] = d_B Tr[J (rho^i^T (x) X^j)]
  for (size_t i = 0; i < im.states.size(); ++i) {
    const CMatrix rt = im.first[i].transpose();
    for (const auto& x : basis) {
      const int row = p.add_row((im.second[i] * x).trace().real());
      p.add_trace(row, j, kron(rt, x), static_cast<double>(db));
    }
  }
  return p;
}

// ---------------------------------------------------------------------------
// Frames and extraction

SeparationFrame classical_frame(const ClassicalChannel& w, const ClassicalChannel& w2,
                                const RVector& certificate) {
  const int nx = w.in_size();
  const int ny = w.out_size();
  const int nz = w2.out_size();
  if (certificate.size() != ny + nx * nz) {
    throw DimensionError("classical_frame: certificate length does not match the LP");
  }
  SeparationFrame f;
  f.certificate = certificate;
  f.certificate_gap = verify_certificate(classical_program(w, w2), certificate).gap;
  for (int x = 0; x < nx; ++x) f.states.push_back(diag_unit(nx, x));
  for (int z = 0; z < nz; ++z) f.basis.push_back(diag_unit(nz, z));
  f.coefficients = RMatrix::Zero(nx, nz);
  for (int x = 0; x < nx; ++x)
    for (int z = 0; z < nz; ++z) f.coefficients(x, z) = certificate[ny + x * nz + z];
  for (int x = 0; x < nx; ++x) {
    CMatrix y = CMatrix::Zero(nz, nz);
    for (int z = 0; z < nz; ++z) y += f.coefficients(x, z) * f.basis[static_cast<size_t>(z)];
    f.y_ops.push_back(y);
  }
  shift_and_rescale(f, nz);
  f.povm = povm_from_weighted(f.weighted, f.total);
  return f;
}

SeparationFrame quantum_frame(const QuantumChannel& n, const QuantumChannel& n2,
                              const RVector& certificate) {
  const int db = n.d_out();
  const int dbp = n2.d_out();
  SeparationFrame f;
  f.states = spanning_states(n.d_in());
  f.basis = hermitian_basis(dbp);
  const auto count = static_cast<int>(f.states.size());
  const auto nb = static_cast<int>(f.basis.size());
  if (certificate.size() != db * db + count * nb) {
    throw DimensionError("quantum_frame: certificate length does not match the SDP");
  }
  f.certificate = certificate;
  f.certificate_gap = verify_certificate(quantum_program(n, n2), certificate).gap;
  f.coefficients = RMatrix::Zero(count, nb);
  for (int i = 0; i < count; ++i)
    for (int jj = 0; jj < nb; ++jj) f.coefficients(i, jj) = certificate[db * db + i * nb + jj];
  for (int i = 0; i < count; ++i) {
    CMatrix y = CMatrix::Zero(dbp, dbp);
    for (int jj = 0; jj < nb; ++jj) y += f.coefficients(i, jj) * f.basis[static_cast<size_t>(jj)];
    f.y_ops.push_back(y);
  }
  shift_and_rescale(f, dbp);
  f.povm = povm_from_weighted(f.weighted, f.total);
  return f;
}

Witness extract_classical_witness(const SeparationFrame& frame, const ClassicalChannel& w,
                                  const ClassicalChannel& w2) {
  const int nx = w.in_size();
  const int nz = w2.out_size();
  if (static_cast<int>(frame.weighted.size()) != nx || frame.total.rows() != nz) {
    throw DimensionError("extract_classical_witness: frame does not match the pair");
  }
  // q(x, u = z) is the weight of reference symbol x on basis element z.
  RMatrix q(nx, nz);
  for (int x = 0; x < nx; ++x)
    for (int z = 0; z < nz; ++z) q(x, z) = frame.weighted[static_cast<size_t>(x)](z, z).real();
  Witness out = wrap(classical_from_joint(q, w, w2), "certificate");
  if (!(out.margin() >= kWitnessMargin)) {
    throw ExtractionFailure("classical witness margin " + std::to_string(out.margin()) +
                            " below " + std::to_string(kWitnessMargin));
  }
  return out;
}

Witness extract_quantum_witness(const SeparationFrame& frame, const QuantumChannel& n,
                                const QuantumChannel& n2) {
  if (frame.weighted.size() != frame.states.size() ||
      static_cast<int>(frame.states.size()) != n.d_in() * n.d_in() ||
      frame.total.rows() != n2.d_out()) {
    throw DimensionError("extract_quantum_witness: frame does not match the pair");
  }
  Witness out;
  try {
    out = wrap(quantum_from_weighted(frame.weighted, frame.total, frame.states, n, n2),
               "certificate");
  } catch (const SolverFailure& e) {
    throw ExtractionFailure(std::string("quantum witness: ") + e.what());
  } catch (const InvalidChannel& e) {
    throw ExtractionFailure(std::string("quantum witness: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ExtractionFailure(std::string("quantum witness: ") + e.what());
  }
  if (!(out.margin() >= kWitnessMargin)) {
    throw ExtractionFailure("quantum witness margin " + std::to_string(out.margin()) +
                            " below " + std::to_string(kWitnessMargin));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Witness optimization

std::optional<Witness> refine_classical_witness(const ClassicalChannel& w,
                                                const ClassicalChannel& w2) {
  require_same_input(w.in_size(), w2.in_size(), "refine_classical_witness");
  const int nx = w.in_size();
  const int ny = w.out_size();
  const int nz = w2.out_size();
  // max sum_z sum_x w2(z|x) q(x,z) - sum_y t_y over joints q(x,u), U = Z,
  // with t_y >= sum_x w(y|x) q(x,u) for every u.
  ConicProgram p;
  const int q = p.add_nonnegative(nx * nz);  // q(x,u) at x * nz + u
  const int t = p.add_nonnegative(ny);
  const int s = p.add_nonnegative(ny * nz);
  {
    const int row = p.add_row(1.0);
    for (int k = 0; k < nx * nz; ++k) p.add_linear(row, q, k, 1.0);
  }
  for (int y = 0; y < ny; ++y) {
    for (int u = 0; u < nz; ++u) {
      const int row = p.add_row(0.0);
      p.add_linear(row, t, y, 1.0);
      p.add_linear(row, s, y * nz + u, -1.0);
      for (int x = 0; x < nx; ++x)
        if (w(y, x) != 0.0) p.add_linear(row, q, x * nz + u, -w(y, x));
    }
  }
  for (int u = 0; u < nz; ++u)
    for (int x = 0; x < nx; ++x) p.add_objective_linear(q, x * nz + u, w2(u, x));
  for (int y = 0; y < ny; ++y) p.add_objective_linear(t, y, -1.0);
  p.set_sense(Sense::Maximize);
  const ConicOutcome o = solve(p);
  if (o.status != ConicStatus::Optimal || o.objective < kWitnessMargin) return std::nullopt;
  RMatrix m(nx, nz);
  for (int x = 0; x < nx; ++x)
    for (int u = 0; u < nz; ++u) m(x, u) = o.solution.nonneg[static_cast<size_t>(q)][x * nz + u];
  Witness out = wrap(classical_from_joint(m, w, w2), "refined");
  if (!(out.margin() >= kWitnessMargin)) return std::nullopt;
  return out;
}

std::optional<Witness> refine_quantum_witness(const QuantumChannel& n,
                                              const QuantumChannel& n2) {
  require_same_input(n.d_in(), n2.d_in(), "refine_quantum_witness");
  const int db = n.d_out();
  const int dbp = n2.d_out();
  const Images im = quantum_images(n, n2);
  // max sum_i Tr(sigma^i W^i) - Tr(L) / d_B
  // s.t. sum_i Tr W^i = 1 and L (x) I - d_B sum_i rho^i^T (x) W^i = S >= 0.
  // The second term is the dual of max over Psi of sum_i Tr[Psi(rho^i) W^i].
  ConicProgram p;
  std::vector<int> blocks;
  for (size_t i = 0; i < im.states.size(); ++i) blocks.push_back(p.add_psd(dbp));
  const int l = p.add_psd(db);
  const int s = p.add_psd(db * dbp);
  {
    const int row = p.add_row(1.0);
    for (int b : blocks) p.add_trace(row, b, identity(dbp));
  }
  const DimPair bb(db, dbp);
  for (const auto& e : hermitian_basis(db * dbp)) {
    const int row = p.add_row(0.0);
    p.add_trace(row, l, partial_trace(e, bb, Keep::First));
    p.add_trace(row, s, e, -1.0);
    for (size_t i = 0; i < im.states.size(); ++i) {
      const CMatrix m =
          partial_trace(e * kron(im.first[i].transpose(), identity(dbp)), bb, Keep::Second);
      p.add_trace(row, blocks[i], m, -static_cast<double>(db));
    }
  }
  for (size_t i = 0; i < im.states.size(); ++i)
    p.add_objective_trace(blocks[i], im.second[i]);
  p.add_objective_trace(l, identity(db), -1.0 / db);
  p.set_sense(Sense::Maximize);
  const ConicOutcome o = solve(p);
  if (o.status != ConicStatus::Optimal || o.objective < kWitnessMargin) return std::nullopt;

  std::vector<CMatrix> weighted;
  CMatrix total = CMatrix::Zero(dbp, dbp);
  for (int b : blocks) {
    weighted.push_back(clip_psd(o.solution.psd[static_cast<size_t>(b)]));
    total += weighted.back();
  }
  const double mass = total.trace().real();
  for (auto& m : weighted) m /= mass;
  total = hermitian_part(total / mass);
  try {
    Witness out = wrap(quantum_from_weighted(weighted, total, im.states, n, n2), "refined");
    if (!(out.margin() >= kWitnessMargin)) return std::nullopt;
    return out;
  } catch (const SolverFailure&) {
    return std::nullopt;
  }
}

double validate_witness(const Witness& wit, const ClassicalChannel& w,
                        const ClassicalChannel& w2) {
  if (!wit.classical) return -INFINITY;
  const auto& c = *wit.classical;
  const double first = pguess_classical(JointDistribution::induced(c.prior, c.encoding, w));
  const double second = pguess_classical(JointDistribution::induced(c.prior, c.encoding, w2));
  return second - first;
}

double validate_witness(const Witness& wit, const QuantumChannel& n,
                        const QuantumChannel& n2) {
  if (!wit.quantum) return -INFINITY;
  const auto& q = *wit.quantum;
  const QuantumChannel gamma = mp_channel(q.gamma);
  const int dr = gamma.d_in();
  const CMatrix state = q.phi * q.phi.adjoint();
  const double h1 = hmin_general(hermitian_part(apply_second(compose(n, gamma), state, dr)),
                                 DimPair(dr, n.d_out()));
  const double h2 = hmin_general(hermitian_part(apply_second(compose(n2, gamma), state, dr)),
                                 DimPair(dr, n2.d_out()));
  return h1 - h2;
}

// ---------------------------------------------------------------------------
// Verdicts

DegradabilityVerdict classical_degradable(const ClassicalChannel& w,
                                          const ClassicalChannel& w2, double tol) {
  require_same_input(w.in_size(), w2.in_size(), "classical_degradable");
  const int ny = w.out_size();
  const int nz = w2.out_size();
  DegradabilityVerdict v;
  for (int attempt = 0; attempt < 2; ++attempt) {
    const double t = attempt == 0 ? tol : tol / 10.0;
    v.attempts = attempt + 1;
    const ConicOutcome o = solve(classical_program(w, w2), options_for(t, attempt));
    if (o.status == ConicStatus::Feasible) {
      RMatrix phi(nz, ny);
      for (int z = 0; z < nz; ++z)
        for (int y = 0; y < ny; ++y) phi(z, y) = o.solution.nonneg[0][z * ny + y];
      ClassicalChannel map = ClassicalChannel::from_approximate(phi);
      const double residual = (compose(map, w).matrix() - w2.matrix()).cwiseAbs().maxCoeff();
      if (residual <= tol) {
        v.status = VerdictStatus::Degradable;
        v.classical_map = map;
        v.residual = residual;
        v.message.clear();
        return v;
      }
      v.message = "map residual " + std::to_string(residual) + " above tolerance";
      continue;
    }
    if (o.status != ConicStatus::Infeasible) {
      v.message = o.message;
      continue;
    }
    std::optional<Witness> found;
    SeparationFrame f = classical_frame(w, w2, *o.certificate);
    try {
      found = extract_classical_witness(f, w, w2);
    } catch (const ExtractionFailure& e) {
      v.message = e.what();
    }
    v.frame = std::move(f);
    found = best_of(found, refine_classical_witness(w, w2));
    if (found) {
      v.status = VerdictStatus::NotDegradable;
      v.witness = std::move(found);
      v.message.clear();
      return v;
    }
    if (v.message.empty()) v.message = "no witness validated";
  }
  v.status = VerdictStatus::Inconclusive;
  v.frame.reset();
  return v;
}

DegradabilityVerdict quantum_degradable(const QuantumChannel& n, const QuantumChannel& n2,
                                        double tol) {
  require_same_input(n.d_in(), n2.d_in(), "quantum_degradable");
  const int db = n.d_out();
  const int dbp = n2.d_out();
  DegradabilityVerdict v;
  for (int attempt = 0; attempt < 2; ++attempt) {
    const double t = attempt == 0 ? tol : tol / 10.0;
    v.attempts = attempt + 1;
    const ConicOutcome o = solve(quantum_program(n, n2), options_for(t, attempt));
    if (o.status == ConicStatus::Feasible) {
      try {
        QuantumChannel map = QuantumChannel::from_approximate(DimPair(db, dbp), o.solution.psd[0]);
        const double residual = max_abs_diff(compose(map, n).choi(), n2.choi());
        if (residual <= tol) {
          v.status = VerdictStatus::Degradable;
          v.quantum_map = map;
          v.residual = residual;
          v.message.clear();
          return v;
        }
        v.message = "map residual " + std::to_string(residual) + " above tolerance";
      } catch (const InvalidChannel& e) {
        v.message = e.what();
      }
      continue;
    }
    if (o.status != ConicStatus::Infeasible) {
      v.message = o.message;
      continue;
    }
    std::optional<Witness> found;
    SeparationFrame f = quantum_frame(n, n2, *o.certificate);
    try {
      found = extract_quantum_witness(f, n, n2);
    } catch (const ExtractionFailure& e) {
      v.message = e.what();
    }
    v.frame = std::move(f);
    found = best_of(found, refine_quantum_witness(n, n2));
    if (found) {
      v.status = VerdictStatus::NotDegradable;
      v.witness = std::move(found);
      v.message.clear();
      return v;
    }
    if (v.message.empty()) v.message = "no witness validated";
  }
  v.status = VerdictStatus::Inconclusive;
  v.frame.reset();
  return v;
}

// ---------------------------------------------------------------------------
// Sampled orderings

namespace {

void record(ViolationReport& r, double margin) {
  const int trial = static_cast<int>(r.margins.size());
  r.margins.push_back(margin);
  if (margin < r.worst_margin) {
    r.worst_margin = margin;
    r.worst_trial = trial;
  }
  if (margin < -kViolationTol) ++r.violations;
  r.trials = static_cast<int>(r.margins.size());
}

double ambiguity_margin(const CqEnsemble& e, const QuantumChannel& n,
                        const QuantumChannel& n2) {
  const double p1 = pguess_cq(e, n).value;
  const double p2 = pguess_cq(e, n2).value;
  // H_min(U|B') - H_min(U|B)
  return std::log2(p1) - std::log2(p2);
}

}  // namespace

CqEnsemble witness_ensemble(const ClassicalWitness& w) {
  return CqEnsemble::classical(w.prior, w.encoding);
}

ViolationReport check_ambiguity_sampled(const QuantumChannel& n, const QuantumChannel& n2,
                                        int trials, std::uint64_t seed,
                                        const AmbiguityOptions& opts) {
  require_same_input(n.d_in(), n2.d_in(), "check_ambiguity_sampled");
  const QuantumChannel a = opts.extension > 0 ? tensor(QuantumChannel::identity(opts.extension), n) : n;
  const QuantumChannel b =
      opts.extension > 0 ? tensor(QuantumChannel::identity(opts.extension), n2) : n2;
  const int d = a.d_in();
  ViolationReport r;
  r.seed = seed;
  for (const auto& e : opts.injected) record(r, ambiguity_margin(e, a, b));
  for (int t = 0; t < trials; ++t) {
    Rng rng = Rng::for_trial(seed, static_cast<std::uint64_t>(t));
    const int k = rng.uniform_int(2, std::max(2, std::min(d * d, 6)));
    CqEnsemble e;
    e.prior = random_simplex(k, rng);
    for (int u = 0; u < k; ++u) e.states.push_back(random_density(d, rng.uniform_int(1, d), rng));
    record(r, ambiguity_margin(e, a, b));
  }
  return r;
}

ViolationReport check_coherence_sampled(const QuantumChannel& n, const QuantumChannel& n2,
                                        int trials, std::uint64_t seed,
                                        const std::vector<CoherenceProbe>& injected) {
  require_same_input(n.d_in(), n2.d_in(), "check_coherence_sampled");
  ViolationReport r;
  r.seed = seed;
  auto margin = [&](const CVector& phi, int dr, const QuantumChannel& enc) {
    const CMatrix state = phi * phi.adjoint();
    const CMatrix encoded = apply_second(enc, state, dr);
    const CMatrix rho = hermitian_part(apply_second(n, encoded, dr));
    const CMatrix sigma = hermitian_part(apply_second(n2, encoded, dr));
    return hmin_general(sigma, DimPair(dr, n2.d_out())) -
           hmin_general(rho, DimPair(dr, n.d_out()));
  };
  for (const auto& probe : injected) record(r, margin(probe.phi, probe.d_r, probe.encoding));
  const int dmax = std::max({2, n.d_in(), n2.d_out()});
  for (int t = 0; t < trials; ++t) {
    Rng rng = Rng::for_trial(seed, static_cast<std::uint64_t>(t));
    const int dr = rng.uniform_int(2, dmax);
    const CVector phi = random_pure_vector(dr * dr, rng);
    const QuantumChannel enc =
        random_channel(dr, n.d_in(), rng.uniform_int(1, dr * n.d_in()), rng);
    record(r, margin(phi, dr, enc));
  }
  return r;
}

ViolationReport check_noisiness_sampled(const ClassicalChannel& w,
                                        const ClassicalChannel& w2, int trials,
                                        std::uint64_t seed) {
  require_same_input(w.in_size(), w2.in_size(), "check_noisiness_sampled");
  const int nx = w.in_size();
  ViolationReport r;
  r.seed = seed;
  for (int t = 0; t < trials; ++t) {
    std::vector<double> prior;
    RMatrix enc;
    if (t == 0) {
      prior.assign(static_cast<size_t>(nx), 1.0 / nx);
      enc = RMatrix::Identity(nx, nx);
    } else {
      Rng rng = Rng::for_trial(seed, static_cast<std::uint64_t>(t));
      const int k = rng.uniform_int(2, nx + 1);
      prior = random_simplex(k, rng);
      enc = ClassicalChannel::random(k, nx, rng).matrix();
    }
    const ClassicalChannel e(enc);
    const double h1 = conditional_entropy(JointDistribution::induced(prior, e, w));
    const double h2 = conditional_entropy(JointDistribution::induced(prior, e, w2));
    record(r, h2 - h1);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Random pairs and search

ClassicalPair random_classical_pair(int nx, int ny, int nz, bool degradable,
                                    std::uint64_t seed) {
  Rng rng(seed);
  ClassicalChannel first = ClassicalChannel::random(nx, ny, rng);
  if (degradable) {
    const ClassicalChannel phi = ClassicalChannel::random(ny, nz, rng);
    return ClassicalPair{first, compose(phi, first)};
  }
  return ClassicalPair{first, ClassicalChannel::random(nx, nz, rng)};
}

QuantumPair random_quantum_pair(int d_in, int d_out, int d_out2, bool degradable,
                                std::uint64_t seed) {
  Rng rng(seed);
  QuantumChannel first = random_channel(d_in, d_out, rng.uniform_int(1, d_in * d_out), rng);
  if (degradable) {
    const QuantumChannel psi =
        random_channel(d_out, d_out2, rng.uniform_int(1, d_out * d_out2), rng);
    return QuantumPair{first, compose(psi, first)};
  }
  return QuantumPair{first,
                     random_channel(d_in, d_out2, rng.uniform_int(1, d_in * d_out2), rng)};
}

std::vector<KmCandidate> km_search(const KmSearchOptions& opts) {
  if (opts.nx > 8 || opts.ny > 8 || opts.nz > 8 || opts.nx < 1 || opts.ny < 1 || opts.nz < 1) {
    throw std::invalid_argument("km_search: alphabet sizes must lie in [1, 8]");
  }
  std::vector<KmCandidate> out;
  for (int t = 0; t < opts.trials; ++t) {
    const std::uint64_t s = splitmix64(opts.seed ^ splitmix64(static_cast<std::uint64_t>(t)));
    ClassicalPair pair = random_classical_pair(opts.nx, opts.ny, opts.nz, opts.degradable, s);
    const DegradabilityVerdict v = classical_degradable(pair.first, pair.second);
    if (v.status != VerdictStatus::NotDegradable) continue;
    ViolationReport noisy =
        check_noisiness_sampled(pair.first, pair.second, opts.noisiness_trials, s);
    if (noisy.violations > 0) continue;
    out.push_back(KmCandidate{t, std::move(pair), *v.witness, std::move(noisy)});
  }
  return out;
}

}  // namespace chanorder

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

#include "chanorder/channels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace chanorder {

// ---------------------------------------------------------------------------
// Classical

ClassicalChannel::ClassicalChannel(RMatrix w) : w_(std::move(w)) {
  if (w_.rows() < 1 || w_.cols() < 1) {
    throw InvalidChannel("classical channel: empty matrix");
  }
  for (Eigen::Index x = 0; x < w_.cols(); ++x) {
    double sum = 0.0;
    for (Eigen::Index y = 0; y < w_.rows(); ++y) {
      const double v = w_(y, x);
      if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
        throw InvalidChannel("classical channel: entry (" + std::to_string(y) +
                             "," + std::to_string(x) + ") = " +
                             std::to_string(v) + " outside [0,1]");
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > kStochasticTol) {
      throw InvalidChannel("classical channel: column " + std::to_string(x) +
                           " sums to " + std::to_string(sum));
    }
  }
}

ClassicalChannel ClassicalChannel::from_approximate(RMatrix w) {
  w = w.cwiseMax(0.0);
  for (Eigen::Index x = 0; x < w.cols(); ++x) {
    const double s = w.col(x).sum();
    if (s > 0.0) w.col(x) /= s;
  }
  return ClassicalChannel(std::move(w));
}

ClassicalChannel ClassicalChannel::identity(int n) {
  return ClassicalChannel(RMatrix::Identity(n, n));
}

ClassicalChannel ClassicalChannel::binary_symmetric(double e) {
  RMatrix w(2, 2);
  w << 1.0 - e, e, e, 1.0 - e;
  return ClassicalChannel(std::move(w));
}

ClassicalChannel ClassicalChannel::constant(int n_in, int n_out, int symbol) {
  if (symbol < 0 || symbol >= n_out) {
    throw InvalidChannel("constant channel: symbol out of range");
  }
  RMatrix w = RMatrix::Zero(n_out, n_in);
  w.row(symbol).setOnes();
  return ClassicalChannel(std::move(w));
}

ClassicalChannel ClassicalChannel::random(int n_in, int n_out, Rng& rng) {
  RMatrix w(n_out, n_in);
  for (int x = 0; x < n_in; ++x) {
    const auto col = random_simplex(n_out, rng);
    for (int y = 0; y < n_out; ++y) w(y, x) = col[static_cast<size_t>(y)];
  }
  return from_approximate(std::move(w));
}

ClassicalChannel compose(const ClassicalChannel& phi, const ClassicalChannel& w) {
  if (phi.in_size() != w.out_size()) {
    throw DimensionError("compose: output alphabet of w (" +
                         std::to_string(w.out_size()) +
                         ") differs from input alphabet of phi (" +
                         std::to_string(phi.in_size()) + ")");
  }
  return ClassicalChannel::from_approximate(phi.matrix() * w.matrix());
}

// ---------------------------------------------------------------------------
// Kraus

int KrausSet::d_in() const {
  if (ops.empty()) throw InvalidChannel("empty Kraus set");
  return static_cast<int>(ops.front().cols());
}

int KrausSet::d_out() const {
  if (ops.empty()) throw InvalidChannel("empty Kraus set");
  return static_cast<int>(ops.front().rows());
}

double KrausSet::completeness_defect() const {
  CMatrix s = CMatrix::Zero(d_in(), d_in());
  for (const auto& k : ops) s += k.adjoint() * k;
  return max_abs_diff(s, identity(d_in()));
}

// ---------------------------------------------------------------------------
// Quantum

QuantumChannel::QuantumChannel(DimPair dims, CMatrix choi)
    : dims_(dims), choi_(std::move(choi)) {
  if (choi_.rows() != dims_.total() || choi_.cols() != dims_.total()) {
    throw DimensionError("quantum channel: Choi side " +
                         std::to_string(choi_.rows()) + " does not match " +
                         std::to_string(dims_.first) + "*" +
                         std::to_string(dims_.second));
  }
  if (!all_finite(choi_)) throw InvalidChannel("quantum channel: non-finite Choi");
  if (!is_hermitian(choi_)) throw InvalidChannel("quantum channel: Choi not Hermitian");
  choi_ = hermitian_part(choi_);
  const double lmin = min_eigenvalue(choi_);
  if (lmin < -kPsdTol) {
    throw InvalidChannel("quantum channel: Choi not PSD (min eigenvalue " +
                         std::to_string(lmin) + ")");
  }
  if (trace_defect() > kTraceTol) {
    throw InvalidChannel("quantum channel: not trace preserving (defect " +
                         std::to_string(trace_defect()) + ")");
  }
}

QuantumChannel QuantumChannel::from_approximate(DimPair dims, const CMatrix& choi) {
  if (choi.rows() != dims.total() || choi.cols() != dims.total()) {
    throw DimensionError("quantum channel: Choi shape mismatch");
  }
  CMatrix j = hermitian_part(choi);
  // Clip negative spectrum, then rescale so that Tr_B J = I / d_in exactly.
  Eigen::SelfAdjointEigenSolver<CMatrix> es(j);
  j = es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).asDiagonal() *
      es.eigenvectors().adjoint();
  const CMatrix marginal = dims.first * partial_trace(j, dims, Keep::First);
  const CMatrix t = kron(psd_inv_sqrt(marginal), chanorder::identity(dims.second));
  j = hermitian_part(t * j * t);
  return QuantumChannel(dims, j);
}

QuantumChannel QuantumChannel::identity(int d) {
  return QuantumChannel(DimPair(d, d), max_entangled(d));
}

QuantumChannel QuantumChannel::completely_depolarizing(int d_in, int d_out) {
  const CMatrix c = chanorder::identity(d_in * d_out) / static_cast<double>(d_in * d_out);
  return QuantumChannel(DimPair(d_in, d_out), c);
}

QuantumChannel QuantumChannel::dephasing(int d) {
  return embed_classical(ClassicalChannel::identity(d));
}

QuantumChannel QuantumChannel::from_kraus(const KrausSet& k) {
  const int din = k.d_in();
  const int dout = k.d_out();
  CMatrix choi = CMatrix::Zero(din * dout, din * dout);
  for (const auto& op : k.ops) {
    // (I (x) K)|Phi+> has amplitude K(y, x)/sqrt(d) at index (x, y).
    CVector v(din * dout);
    for (int x = 0; x < din; ++x)
      for (int y = 0; y < dout; ++y) v(x * dout + y) = op(y, x);
    choi += v * v.adjoint();
  }
  choi /= static_cast<double>(din);
  return QuantumChannel(DimPair(din, dout), choi);
}

CMatrix QuantumChannel::apply(const CMatrix& rho) const {
  const int din = dims_.first;
  const int dout = dims_.second;
  if (rho.rows() != din || rho.cols() != din) {
    throw DimensionError("apply: input is " + std::to_string(rho.rows()) + "x" +
                         std::to_string(rho.cols()) + ", channel expects " +
                         std::to_string(din));
  }
  // d * sum_{x,x'} rho^T(x, x') J_{x' x} = d * sum rho(x', x) J_{x' x}
  CMatrix out = CMatrix::Zero(dout, dout);
  for (int x = 0; x < din; ++x)
    for (int xp = 0; xp < din; ++xp) {
      const Complex r = rho(xp, x);
      if (r == Complex(0.0)) continue;
      out += r * choi_.block(xp * dout, x * dout, dout, dout);
    }
  return static_cast<double>(din) * out;
}

KrausSet QuantumChannel::kraus() const {
  const int din = dims_.first;
  const int dout = dims_.second;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(choi_);
  KrausSet out;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double ev = es.eigenvalues()(k);
    if (ev <= 1e-14) continue;
    const CVector v = es.eigenvectors().col(k) * std::sqrt(ev * din);
    CMatrix op(dout, din);
    for (int x = 0; x < din; ++x)
      for (int y = 0; y < dout; ++y) op(y, x) = v(x * dout + y);
    out.ops.push_back(op);
  }
  return out;
}

double QuantumChannel::choi_min_eigenvalue() const { return min_eigenvalue(choi_); }

double QuantumChannel::trace_defect() const {
  const CMatrix marginal = partial_trace(choi_, dims_, Keep::First);
  return max_abs_diff(marginal,
                      chanorder::identity(dims_.first) / static_cast<double>(dims_.first));
}

QuantumChannel compose(const QuantumChannel& psi, const QuantumChannel& n) {
  if (n.d_out() != psi.d_in()) {
    throw DimensionError("compose: d_out(n) = " + std::to_string(n.d_out()) +
                         " but d_in(psi) = " + std::to_string(psi.d_in()));
  }
  const int da = n.d_in();
  const int db = n.d_out();
  const int dc = psi.d_out();
  CMatrix out(da * dc, da * dc);
  for (int a = 0; a < da; ++a)
    for (int ap = 0; ap < da; ++ap)
      out.block(a * dc, ap * dc, dc, dc) =
          psi.apply(n.choi().block(a * db, ap * db, db, db));
  return QuantumChannel::from_approximate(DimPair(da, dc), out);
}

QuantumChannel tensor(const QuantumChannel& a, const QuantumChannel& b) {
  const CMatrix j = regroup_pairs(kron(a.choi(), b.choi()), a.dims(), b.dims());
  return QuantumChannel(DimPair(a.d_in() * b.d_in(), a.d_out() * b.d_out()), j);
}

QuantumChannel embed_classical(const ClassicalChannel& w) {
  const int nx = w.in_size();
  const int ny = w.out_size();
  CMatrix choi = CMatrix::Zero(nx * ny, nx * ny);
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y) choi(x * ny + y, x * ny + y) = w(y, x) / nx;
  return QuantumChannel(DimPair(nx, ny), choi);
}

void MeasurePrepareChannel::validate(double tol) const {
  if (povm.empty() || povm.size() != preparations.size()) {
    throw InvalidChannel("measure-prepare: POVM and preparation counts differ");
  }
  const auto din = povm.front().rows();
  const auto dout = preparations.front().rows();
  CMatrix sum = CMatrix::Zero(din, din);
  for (size_t i = 0; i < povm.size(); ++i) {
    if (povm[i].rows() != din || povm[i].cols() != din ||
        preparations[i].rows() != dout || preparations[i].cols() != dout) {
      throw DimensionError("measure-prepare: inconsistent operator shapes");
    }
    if (!is_psd(povm[i], tol)) {
      throw InvalidChannel("measure-prepare: POVM element " + std::to_string(i) +
                           " not PSD");
    }
    if (!is_density(preparations[i], tol)) {
      throw InvalidChannel("measure-prepare: preparation " + std::to_string(i) +
                           " is not a density operator");
    }
    sum += povm[i];
  }
  if (max_abs_diff(sum, identity(static_cast<int>(din))) > tol) {
    throw InvalidChannel("measure-prepare: POVM does not sum to identity");
  }
}

QuantumChannel mp_channel(const MeasurePrepareChannel& mp) {
  mp.validate();
  const int din = static_cast<int>(mp.povm.front().rows());
  const int dout = static_cast<int>(mp.preparations.front().rows());
  CMatrix choi = CMatrix::Zero(din * dout, din * dout);
  for (size_t i = 0; i < mp.povm.size(); ++i) {
    choi += kron(mp.povm[i].transpose(), mp.preparations[i]);
  }
  choi /= static_cast<double>(din);
  return QuantumChannel::from_approximate(DimPair(din, dout), choi);
}

QuantumChannel mp_channel(const std::vector<CMatrix>& povm,
                          const std::vector<CMatrix>& preparations) {
  return mp_channel(MeasurePrepareChannel{povm, preparations});
}

QuantumChannel conjugate(const QuantumChannel& n) {
  return QuantumChannel(n.dims(), n.choi().conjugate());
}

QuantumChannel random_channel(int d_in, int d_out, int kraus_rank, Rng& rng) {
  if (kraus_rank < 1) throw DimensionError("random_channel: kraus_rank < 1");
  const int rank = std::max(kraus_rank, (d_in + d_out - 1) / d_out);
  const CMatrix v = random_isometry(d_out * rank, d_in, rng);
  KrausSet k;
  for (int r = 0; r < rank; ++r) {
    CMatrix op(d_out, d_in);
    for (int y = 0; y < d_out; ++y) op.row(y) = v.row(y * rank + r);
    k.ops.push_back(op);
  }
  return QuantumChannel::from_kraus(k);
}

QuantumChannel random_channel(int d_in, int d_out, int kraus_rank,
                              std::uint64_t seed) {
  Rng rng(seed);
  return random_channel(d_in, d_out, kraus_rank, rng);
}

std::vector<CMatrix> spanning_states(int d) {
  if (d < 1) throw DimensionError("spanning_states: d must be >= 1");
  std::vector<CMatrix> out;
  out.reserve(static_cast<size_t>(d * d));
  auto projector = [](const CVector& v) -> CMatrix { return v * v.adjoint(); };
  for (int j = 0; j < d; ++j) {
    CVector v = CVector::Zero(d);
    v(j) = 1.0;
    out.push_back(projector(v));
  }
  const double s = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      CVector v = CVector::Zero(d);
      v(j) = s;
      v(k) = s;
      out.push_back(projector(v));
    }
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      CVector v = CVector::Zero(d);
      v(j) = s;
      v(k) = Complex(0.0, s);
      out.push_back(projector(v));
    }
  return out;
}

double choi_distance(const QuantumChannel& a, const QuantumChannel& b) {
  return max_abs_diff(a.choi(), b.choi());
}

}  // namespace chanorder

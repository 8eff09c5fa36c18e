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

#include "chanorder/conic.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace chanorder {

// ---------------------------------------------------------------------------
// ConicProgram

int ConicProgram::add_nonnegative(int n) {
  if (n < 1) throw ConicError("add_nonnegative: length must be >= 1");
  blocks_.push_back({ConeKind::Nonnegative, n});
  return static_cast<int>(blocks_.size()) - 1;
}

int ConicProgram::add_psd(int side) {
  if (side < 1) throw ConicError("add_psd: side must be >= 1");
  blocks_.push_back({ConeKind::Psd, side});
  return static_cast<int>(blocks_.size()) - 1;
}

int ConicProgram::add_row(double rhs) {
  if (!std::isfinite(rhs)) throw ConicError("add_row: non-finite right-hand side");
  rhs_.push_back(rhs);
  return num_rows() - 1;
}

void ConicProgram::check_block(int block, int r, int c) const {
  if (block < 0 || block >= static_cast<int>(blocks_.size())) {
    throw ConicError("conic program: block index out of range");
  }
  const ConeBlock& b = blocks_[static_cast<size_t>(block)];
  if (r < 0 || c < 0 || r >= b.size || c >= b.size) {
    throw ConicError("conic program: entry index out of range");
  }
  if (b.kind == ConeKind::Nonnegative && r != c) {
    throw ConicError("conic program: orthant blocks have diagonal entries only");
  }
}

void ConicProgram::add_entry(int row, int block, int r, int c, Complex a) {
  if (row < 0 || row >= num_rows()) throw ConicError("add_entry: row out of range");
  check_block(block, r, c);
  if (a == Complex(0.0)) return;
  entries_.push_back({row, block, r, c, a});
}

void ConicProgram::add_trace(int row, int block, const CMatrix& m, double scale) {
  // Re tr(M X) = sum_{r,c} Re(M(c, r) X(r, c))
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const Complex v = m(c, r) * scale;
      if (std::abs(v) == 0.0) continue;
      add_entry(row, block, static_cast<int>(r), static_cast<int>(c), v);
    }
}

void ConicProgram::add_linear(int row, int block, int index, double a) {
  check_block(block, index, index);
  if (blocks_[static_cast<size_t>(block)].kind != ConeKind::Nonnegative) {
    throw ConicError("add_linear: block is not an orthant");
  }
  add_entry(row, block, index, index, Complex(a, 0.0));
}

void ConicProgram::add_objective_trace(int block, const CMatrix& m, double scale) {
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const Complex v = m(c, r) * scale;
      if (std::abs(v) == 0.0) continue;
      check_block(block, static_cast<int>(r), static_cast<int>(c));
      objective_.push_back({-1, block, static_cast<int>(r), static_cast<int>(c), v});
    }
}

void ConicProgram::add_objective_linear(int block, int index, double c) {
  check_block(block, index, index);
  if (blocks_[static_cast<size_t>(block)].kind != ConeKind::Nonnegative) {
    throw ConicError("add_objective_linear: block is not an orthant");
  }
  if (c == 0.0) return;
  objective_.push_back({-1, block, index, index, Complex(c, 0.0)});
}

int ConicProgram::parameter_count() const {
  int n = 0;
  for (const auto& b : blocks_) n += b.kind == ConeKind::Psd ? b.size * b.size : b.size;
  return n;
}

ConicPoint ConicProgram::zero_point() const {
  ConicPoint p;
  for (const auto& b : blocks_) {
    if (b.kind == ConeKind::Psd) {
      p.psd.push_back(CMatrix::Zero(b.size, b.size));
      p.nonneg.emplace_back();
    } else {
      p.psd.emplace_back();
      p.nonneg.push_back(RVector::Zero(b.size));
    }
  }
  return p;
}

namespace {

double entry_value(const ConicProgram& p, const ConicProgram::Entry& e,
                   const ConicPoint& x) {
  const auto blk = static_cast<size_t>(e.block);
  if (p.blocks()[blk].kind == ConeKind::Psd) {
    return (e.a * x.psd[blk](e.r, e.c)).real();
  }
  return e.a.real() * x.nonneg[blk](e.r);
}

}  // namespace

RVector ConicProgram::evaluate_rows(const ConicPoint& x) const {
  RVector out = RVector::Zero(num_rows());
  for (const auto& e : entries_) out(e.row) += entry_value(*this, e, x);
  return out;
}

double ConicProgram::evaluate_objective(const ConicPoint& x) const {
  double out = 0.0;
  for (const auto& e : objective_) out += entry_value(*this, e, x);
  return out;
}

ConicPoint ConicProgram::adjoint(const RVector& y) const {
  if (y.size() != num_rows()) throw ConicError("adjoint: multiplier size mismatch");
  ConicPoint out = zero_point();
  for (const auto& e : entries_) {
    const auto blk = static_cast<size_t>(e.block);
    const double yi = y(e.row);
    if (blocks_[blk].kind == ConeKind::Psd) {
      out.psd[blk](e.c, e.r) += 0.5 * yi * e.a;
      out.psd[blk](e.r, e.c) += 0.5 * yi * std::conj(e.a);
    } else {
      out.nonneg[blk](e.r) += yi * e.a.real();
    }
  }
  return out;
}

std::string to_string(ConicStatus s) {
  switch (s) {
    case ConicStatus::Feasible: return "feasible";
    case ConicStatus::Infeasible: return "infeasible";
    case ConicStatus::Optimal: return "optimal";
    case ConicStatus::NumericalFailure: return "numerical_failure";
  }
  return "unknown";
}

CertificateCheck verify_certificate(const ConicProgram& p, const RVector& y,
                                    double tol, double min_gap) {
  CertificateCheck out;
  if (y.size() != p.num_rows()) return out;
  const double norm = y.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) return out;
  const RVector yn = y / norm;
  const Eigen::Map<const RVector> b(p.rhs().data(), p.num_rows());
  out.gap = b.dot(yn);
  const ConicPoint at = p.adjoint(yn);
  double slack = std::numeric_limits<double>::infinity();
  for (size_t k = 0; k < p.blocks().size(); ++k) {
    if (p.blocks()[k].kind == ConeKind::Psd) {
      slack = std::min(slack, min_eigenvalue(-at.psd[k]));
    } else {
      slack = std::min(slack, (-at.nonneg[k]).minCoeff());
    }
  }
  out.cone_slack = slack;
  out.valid = out.gap >= min_gap && slack >= -tol;
  return out;
}

// ---------------------------------------------------------------------------
// Interior point engine

namespace {

struct HEntry {
  int r;
  int c;
  Complex a;
};

struct Term {
  int row;
  std::vector<HEntry> e;
};

// Internal standard form: min <C, X> s.t. A(X) = b, X in cone.
struct Compiled {
  int m = 0;
  RVector b;
  std::vector<int> side;
  std::vector<std::vector<Term>> terms;
  std::vector<CMatrix> C;
  int n_lp = 0;
  std::vector<std::vector<std::pair<int, double>>> cols;
  RVector c_lp;
  std::vector<int> index;  // program block -> psd index or lp offset
  int elastic_offset = -1;
};

Compiled compile(const ConicProgram& p, bool elastic, double objective_sign) {
  Compiled cp;
  cp.m = p.num_rows();
  cp.b = Eigen::Map<const RVector>(p.rhs().data(), cp.m);
  for (const auto& blk : p.blocks()) {
    if (blk.kind == ConeKind::Psd) {
      cp.index.push_back(static_cast<int>(cp.side.size()));
      cp.side.push_back(blk.size);
      cp.C.push_back(CMatrix::Zero(blk.size, blk.size));
    } else {
      cp.index.push_back(cp.n_lp);
      cp.n_lp += blk.size;
    }
  }
  if (elastic) {
    cp.elastic_offset = cp.n_lp;
    cp.n_lp += 2 * cp.m;
  }
  cp.cols.resize(static_cast<size_t>(cp.n_lp));
  cp.c_lp = RVector::Zero(cp.n_lp);
  cp.terms.resize(cp.side.size());

  // Merge raw entries into Hermitian coefficient matrices per (row, block).
  std::map<std::pair<int, int>, std::map<std::pair<int, int>, Complex>> psd;
  std::map<std::pair<int, int>, double> lp;
  for (const auto& e : p.entries()) {
    const auto& blk = p.blocks()[static_cast<size_t>(e.block)];
    const int idx = cp.index[static_cast<size_t>(e.block)];
    if (blk.kind == ConeKind::Psd) {
      auto& m = psd[{idx, e.row}];
      m[{e.c, e.r}] += 0.5 * e.a;
      m[{e.r, e.c}] += 0.5 * std::conj(e.a);
    } else {
      lp[{idx + e.r, e.row}] += e.a.real();
    }
  }
  for (const auto& [key, m] : psd) {
    Term t{key.second, {}};
    for (const auto& [rc, a] : m) {
      if (std::abs(a) > 0.0) t.e.push_back({rc.first, rc.second, a});
    }
    if (!t.e.empty()) cp.terms[static_cast<size_t>(key.first)].push_back(std::move(t));
  }
  for (const auto& [key, a] : lp) {
    if (a != 0.0) cp.cols[static_cast<size_t>(key.first)].push_back({key.second, a});
  }
  if (elastic) {
    for (int i = 0; i < cp.m; ++i) {
      const int pos = cp.elastic_offset + 2 * i;
      cp.cols[static_cast<size_t>(pos)].push_back({i, 1.0});
      cp.cols[static_cast<size_t>(pos + 1)].push_back({i, -1.0});
      cp.c_lp(pos) = 1.0;
      cp.c_lp(pos + 1) = 1.0;
    }
  } else {
    for (const auto& e : p.objective_entries()) {
      const auto& blk = p.blocks()[static_cast<size_t>(e.block)];
      const int idx = cp.index[static_cast<size_t>(e.block)];
      if (blk.kind == ConeKind::Psd) {
        auto& c = cp.C[static_cast<size_t>(idx)];
        c(e.c, e.r) += 0.5 * objective_sign * e.a;
        c(e.r, e.c) += 0.5 * objective_sign * std::conj(e.a);
      } else {
        cp.c_lp(idx + e.r) += objective_sign * e.a.real();
      }
    }
  }
  return cp;
}

struct Iterate {
  std::vector<CMatrix> X, Z;
  RVector x, z, y;
};

struct Direction {
  std::vector<CMatrix> dX, dZ;
  RVector dx, dz, dy;
};

double inner(const CMatrix& a, const CMatrix& b) {
  return (a.array() * b.conjugate().array()).sum().real();
}

RVector apply_a(const Compiled& cp, const std::vector<CMatrix>& X, const RVector& x) {
  RVector out = RVector::Zero(cp.m);
  for (size_t k = 0; k < cp.terms.size(); ++k) {
    for (const auto& t : cp.terms[k]) {
      double v = 0.0;
      for (const auto& e : t.e) v += (e.a * X[k](e.c, e.r)).real();
      out(t.row) += v;
    }
  }
  for (int j = 0; j < cp.n_lp; ++j) {
    for (const auto& [row, a] : cp.cols[static_cast<size_t>(j)]) out(row) += a * x(j);
  }
  return out;
}

void apply_at(const Compiled& cp, const RVector& y, std::vector<CMatrix>& S,
              RVector& s) {
  S.resize(cp.side.size());
  for (size_t k = 0; k < cp.side.size(); ++k) {
    S[k] = CMatrix::Zero(cp.side[k], cp.side[k]);
    for (const auto& t : cp.terms[k]) {
      const double yi = y(t.row);
      for (const auto& e : t.e) S[k](e.r, e.c) += yi * e.a;
    }
  }
  s = RVector::Zero(cp.n_lp);
  for (int j = 0; j < cp.n_lp; ++j) {
    for (const auto& [row, a] : cp.cols[static_cast<size_t>(j)]) s(j) += a * y(row);
  }
}

double max_step_psd(const CMatrix& X, const CMatrix& dX) {
  Eigen::LLT<CMatrix> llt(X);
  if (llt.info() != Eigen::Success) return 0.0;
  const CMatrix a = llt.matrixL().solve(dX);
  CMatrix q = llt.matrixL().solve(a.adjoint());
  q = hermitian_part(q);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(q, Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().minCoeff();
  return lmin < 0.0 ? -1.0 / lmin : std::numeric_limits<double>::infinity();
}

double max_step_lp(const RVector& x, const RVector& dx) {
  double a = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (dx(j) < 0.0) a = std::min(a, -x(j) / dx(j));
  }
  return a;
}

class InteriorPoint {
 public:
  InteriorPoint(const Compiled& cp, const SolverOptions& opts) : cp_(cp), opts_(opts) {}

  struct Result {
    Iterate it;
    bool converged = false;
    int iterations = 0;
    double relp = 0.0, reld = 0.0, relgap = 0.0;
    double pobj = 0.0, dobj = 0.0;
  };

  Result run() {
    Result res;
    Iterate it = initial_point();
    const double bnorm = cp_.b.norm();
    double cnorm = cp_.c_lp.squaredNorm();
    for (const auto& c : cp_.C) cnorm += c.squaredNorm();
    cnorm = std::sqrt(cnorm);
    int nu = cp_.n_lp;
    for (int s : cp_.side) nu += s;
    nu = std::max(nu, 1);

    Iterate best = it;
    Result best_res;
    double best_score = std::numeric_limits<double>::infinity();
    int stalls = 0;
    int since_best = 0;
    for (int iter = 0; iter < opts_.max_iterations; ++iter) {
      // Residuals.
      const RVector rp = cp_.b - apply_a(cp_, it.X, it.x);
      std::vector<CMatrix> aty;
      RVector aty_lp;
      apply_at(cp_, it.y, aty, aty_lp);
      std::vector<CMatrix> Rd(cp_.side.size());
      double rd_norm2 = 0.0;
      for (size_t k = 0; k < cp_.side.size(); ++k) {
        Rd[k] = cp_.C[k] - aty[k] - it.Z[k];
        rd_norm2 += Rd[k].squaredNorm();
      }
      const RVector rd = cp_.c_lp - aty_lp - it.z;
      rd_norm2 += rd.squaredNorm();

      double pobj = cp_.c_lp.dot(it.x), xz = it.x.dot(it.z);
      for (size_t k = 0; k < cp_.side.size(); ++k) {
        pobj += inner(cp_.C[k], it.X[k]);
        xz += inner(it.X[k], it.Z[k]);
      }
      const double dobj = cp_.b.dot(it.y);
      const double mu = xz / nu;
      res.relp = rp.norm() / (1.0 + bnorm);
      res.reld = std::sqrt(rd_norm2) / (1.0 + cnorm);
      res.relgap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
      res.pobj = pobj;
      res.dobj = dobj;
      res.iterations = iter;
      const double score = std::max({res.relp, res.reld, res.relgap});
      if (score < best_score) {
        best_score = score;
        best = it;
        best_res = res;
        since_best = 0;
      } else if (++since_best > 8) {
        // No progress: roundoff dominates near the boundary.
        break;
      }
      if (res.relp < opts_.target_accuracy && res.reld < opts_.target_accuracy &&
          res.relgap < opts_.target_accuracy) {
        res.converged = true;
        break;
      }

      if (!factor(it)) break;

      // Predictor.
      Direction aff;
      if (!direction(it, rp, Rd, rd, 0.0, nullptr, nullptr, aff)) break;
      const double ap_aff = std::min(1.0, primal_step(it, aff));
      const double ad_aff = std::min(1.0, dual_step(it, aff));
      double xz_aff = 0.0;
      for (size_t k = 0; k < cp_.side.size(); ++k) {
        xz_aff += inner(it.X[k] + ap_aff * aff.dX[k], it.Z[k] + ad_aff * aff.dZ[k]);
      }
      xz_aff += (it.x + ap_aff * aff.dx).dot(it.z + ad_aff * aff.dz);
      const double mu_aff = std::max(xz_aff, 0.0) / nu;
      double sigma = mu > 0.0 ? std::pow(mu_aff / mu, 3) : 0.0;
      sigma = std::clamp(sigma, 0.0, 1.0);

      // Corrector with the second-order term.
      std::vector<CMatrix> corr(cp_.side.size());
      for (size_t k = 0; k < cp_.side.size(); ++k) corr[k] = aff.dX[k] * aff.dZ[k];
      const RVector corr_lp = aff.dx.cwiseProduct(aff.dz);
      Direction d;
      if (!direction(it, rp, Rd, rd, sigma * mu, &corr, &corr_lp, d)) break;
      const double ap_max = primal_step(it, d);
      const double ad_max = dual_step(it, d);
      const double gamma = 0.9 + 0.09 * std::min({ap_aff, ad_aff, 1.0});
      const double ap = std::min(1.0, gamma * ap_max);
      const double ad = std::min(1.0, gamma * ad_max);
      if (ap < 1e-12 && ad < 1e-12) {
        if (++stalls > 3) break;
      } else {
        stalls = 0;
      }
      for (size_t k = 0; k < cp_.side.size(); ++k) {
        it.X[k] = hermitian_part(it.X[k] + ap * d.dX[k]);
        it.Z[k] = hermitian_part(it.Z[k] + ad * d.dZ[k]);
      }
      it.x += ap * d.dx;
      it.z += ad * d.dz;
      it.y += ad * d.dy;
      res.iterations = iter + 1;
    }
    if (res.converged) {
      res.it = it;
      return res;
    }
    best_res.it = best;
    best_res.converged = false;
    best_res.iterations = res.iterations;
    return best_res;
  }

 private:
  Iterate initial_point() const {
    double bmax = cp_.b.size() ? cp_.b.cwiseAbs().maxCoeff() : 0.0;
    double cmax = cp_.c_lp.size() ? cp_.c_lp.cwiseAbs().maxCoeff() : 0.0;
    for (const auto& c : cp_.C) cmax = std::max(cmax, c.cwiseAbs().maxCoeff());
    const double xi = std::max(1.0, bmax);
    const double eta = std::max(1.0, cmax);
    Iterate it;
    for (int s : cp_.side) {
      it.X.push_back(xi * CMatrix::Identity(s, s));
      it.Z.push_back(eta * CMatrix::Identity(s, s));
    }
    it.x = RVector::Constant(cp_.n_lp, xi);
    it.z = RVector::Constant(cp_.n_lp, eta);
    it.y = RVector::Zero(cp_.m);
    return it;
  }

  bool factor(const Iterate& it) {
    W_.resize(cp_.side.size());
    for (size_t k = 0; k < cp_.side.size(); ++k) {
      Eigen::LLT<CMatrix> llt(it.Z[k]);
      if (llt.info() != Eigen::Success) return false;
      W_[k] = hermitian_part(llt.solve(CMatrix::Identity(cp_.side[k], cp_.side[k])));
    }
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(cp_.m, cp_.m);
    for (size_t k = 0; k < cp_.side.size(); ++k) {
      const CMatrix& X = it.X[k];
      const CMatrix& W = W_[k];
      const int n = cp_.side[k];
      const auto& terms = cp_.terms[k];
      CMatrix G(n, n);
      for (const auto& tj : terms) {
        G.setZero();
        for (const auto& e : tj.e) G.noalias() += e.a * X.col(e.r) * W.row(e.c);
        for (const auto& ti : terms) {
          double v = 0.0;
          for (const auto& e : ti.e) v += (e.a * G(e.c, e.r)).real();
          M(ti.row, tj.row) += v;
        }
      }
    }
    for (int j = 0; j < cp_.n_lp; ++j) {
      const double dj = it.x(j) / it.z(j);
      const auto& col = cp_.cols[static_cast<size_t>(j)];
      for (const auto& [ri, ai] : col)
        for (const auto& [rj, aj] : col) M(ri, rj) += ai * aj * dj;
    }
    M = 0.5 * (M + M.transpose()).eval();
    const double scale = M.diagonal().cwiseAbs().maxCoeff();
    M.diagonal().array() += 1e-15 * std::max(scale, 1.0);
    chol_.compute(M);
    if (chol_.info() != Eigen::Success) {
      ldlt_.compute(M);
      use_ldlt_ = true;
      return ldlt_.info() == Eigen::Success;
    }
    use_ldlt_ = false;
    return true;
  }

  bool direction(const Iterate& it, const RVector& rp, const std::vector<CMatrix>& Rd,
                 const RVector& rd, double tau, const std::vector<CMatrix>* corr,
                 const RVector* corr_lp, Direction& d) const {
    const size_t K = cp_.side.size();
    std::vector<CMatrix> R(K);
    for (size_t k = 0; k < K; ++k) {
      const CMatrix& W = W_[k];
      R[k] = tau * W - it.X[k] - it.X[k] * Rd[k] * W;
      if (corr) R[k] -= (*corr)[k] * W;
    }
    RVector r = RVector::Zero(cp_.n_lp);
    for (int j = 0; j < cp_.n_lp; ++j) {
      double v = tau / it.z(j) - it.x(j) - it.x(j) * rd(j) / it.z(j);
      if (corr_lp) v -= (*corr_lp)(j) / it.z(j);
      r(j) = v;
    }
    const RVector rhs = rp - apply_a(cp_, R, r);
    d.dy = use_ldlt_ ? RVector(ldlt_.solve(rhs)) : RVector(chol_.solve(rhs));
    if (!d.dy.allFinite()) return false;
    std::vector<CMatrix> aty;
    RVector aty_lp;
    apply_at(cp_, d.dy, aty, aty_lp);
    d.dX.resize(K);
    d.dZ.resize(K);
    for (size_t k = 0; k < K; ++k) {
      d.dZ[k] = Rd[k] - aty[k];
      d.dX[k] = hermitian_part(R[k] + it.X[k] * aty[k] * W_[k]);
    }
    d.dz = rd - aty_lp;
    d.dx = r + it.x.cwiseProduct(aty_lp).cwiseQuotient(it.z);
    return true;
  }

  double primal_step(const Iterate& it, const Direction& d) const {
    double a = max_step_lp(it.x, d.dx);
    for (size_t k = 0; k < cp_.side.size(); ++k) a = std::min(a, max_step_psd(it.X[k], d.dX[k]));
    return a;
  }

  double dual_step(const Iterate& it, const Direction& d) const {
    double a = max_step_lp(it.z, d.dz);
    for (size_t k = 0; k < cp_.side.size(); ++k) a = std::min(a, max_step_psd(it.Z[k], d.dZ[k]));
    return a;
  }

  const Compiled& cp_;
  const SolverOptions& opts_;
  std::vector<CMatrix> W_;
  Eigen::LLT<Eigen::MatrixXd> chol_;
  Eigen::LDLT<Eigen::MatrixXd> ldlt_;
  bool use_ldlt_ = false;
};

ConicPoint extract_point(const ConicProgram& p, const Compiled& cp, const Iterate& it) {
  ConicPoint out = p.zero_point();
  for (size_t k = 0; k < p.blocks().size(); ++k) {
    const int idx = cp.index[k];
    if (p.blocks()[k].kind == ConeKind::Psd) {
      out.psd[k] = it.X[static_cast<size_t>(idx)];
    } else {
      out.nonneg[k] = it.x.segment(idx, p.blocks()[k].size);
    }
  }
  return out;
}

double max_residual(const ConicProgram& p, const ConicPoint& x) {
  if (p.num_rows() == 0) return 0.0;
  const Eigen::Map<const RVector> b(p.rhs().data(), p.num_rows());
  return (p.evaluate_rows(x) - b).cwiseAbs().maxCoeff();
}

}  // namespace

namespace {
double g_accuracy_fault = 0.0;
}  // namespace

void set_accuracy_fault(double target_accuracy) { g_accuracy_fault = target_accuracy; }

ConicOutcome solve(const ConicProgram& p, const SolverOptions& requested) {
  SolverOptions opts = requested;
  if (g_accuracy_fault > 0.0) opts.target_accuracy = g_accuracy_fault;
  if (opts.tol < 1e-12 || opts.tol > 1e-2) {
    throw ConicError("solve: tolerance outside the supported range");
  }
  ConicOutcome out;
  if (p.blocks().empty()) throw ConicError("solve: program has no variables");

  if (p.sense() == Sense::Feasibility) {
    const Compiled cp = compile(p, /*elastic=*/true, 1.0);
    InteriorPoint ipm(cp, opts);
    const auto res = ipm.run();
    out.iterations = res.iterations;
    out.solution = extract_point(p, cp, res.it);
    out.residual = max_residual(p, out.solution);
    out.dual = res.it.y;
    out.objective = 0.0;
    out.dual_objective = res.dobj;
    if (out.residual <= opts.tol) {
      out.status = ConicStatus::Feasible;
      return out;
    }
    const CertificateCheck check =
        verify_certificate(p, res.it.y, opts.tol, opts.min_certificate_gap);
    out.certificate_check = check;
    if (check.valid) {
      out.status = ConicStatus::Infeasible;
      out.certificate = RVector(res.it.y / res.it.y.norm());
    } else {
      out.status = ConicStatus::NumericalFailure;
      out.message = "neither a feasible point (residual " + std::to_string(out.residual) +
                    ") nor a verified certificate (gap " + std::to_string(check.gap) +
                    ", cone slack " + std::to_string(check.cone_slack) + ")";
    }
    return out;
  }

  const double sign = p.sense() == Sense::Maximize ? -1.0 : 1.0;
  const Compiled cp = compile(p, /*elastic=*/false, sign);
  InteriorPoint ipm(cp, opts);
  const auto res = ipm.run();
  out.iterations = res.iterations;
  out.solution = extract_point(p, cp, res.it);
  out.residual = max_residual(p, out.solution);
  out.dual = sign * res.it.y;
  out.objective = p.evaluate_objective(out.solution);
  out.dual_objective = sign * res.dobj;
  const bool accurate = res.relp < 1e-8 && res.reld < 1e-8 && res.relgap < 1e-8;
  if (res.converged || (accurate && out.residual <= opts.tol)) {
    out.status = ConicStatus::Optimal;
  } else {
    out.status = ConicStatus::NumericalFailure;
    out.message = "interior point stopped after " + std::to_string(res.iterations) +
                  " iterations (primal " + std::to_string(res.relp) + ", dual " +
                  std::to_string(res.reld) + ", gap " + std::to_string(res.relgap) + ")";
  }
  return out;
}

ConicOutcome solve(const ConicProgram& p, double tol) {
  SolverOptions opts;
  opts.tol = tol;
  return solve(p, opts);
}

}  // namespace chanorder

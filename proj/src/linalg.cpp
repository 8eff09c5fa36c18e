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

#include "chanorder/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace chanorder {

DimPair::DimPair(int a, int b) : first(a), second(b) {
  if (a < 1 || b < 1) {
    throw DimensionError("DimPair: dimensions must be >= 1");
  }
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMatrix partial_trace(const CMatrix& m, DimPair dims, Keep keep) {
  const int da = dims.first;
  const int db = dims.second;
  if (m.rows() != dims.total() || m.cols() != dims.total()) {
    throw DimensionError("partial_trace: matrix side " +
                         std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + " does not match " +
                         std::to_string(da) + "*" + std::to_string(db));
  }
  if (keep == Keep::First) {
    CMatrix out = CMatrix::Zero(da, da);
    for (int i = 0; i < da; ++i)
      for (int j = 0; j < da; ++j)
        for (int k = 0; k < db; ++k) out(i, j) += m(i * db + k, j * db + k);
    return out;
  }
  CMatrix out = CMatrix::Zero(db, db);
  for (int k = 0; k < da; ++k) out += m.block(k * db, k * db, db, db);
  return out;
}

CMatrix partial_transpose_second(const CMatrix& m, DimPair dims) {
  const int da = dims.first;
  const int db = dims.second;
  if (m.rows() != dims.total() || m.cols() != dims.total()) {
    throw DimensionError("partial_transpose_second: dimension mismatch");
  }
  CMatrix out(m.rows(), m.cols());
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j)
      out.block(i * db, j * db, db, db) =
          m.block(i * db, j * db, db, db).transpose();
  return out;
}

CMatrix swap_factors(const CMatrix& m, DimPair dims) {
  const int da = dims.first;
  const int db = dims.second;
  if (m.rows() != dims.total() || m.cols() != dims.total()) {
    throw DimensionError("swap_factors: dimension mismatch");
  }
  CMatrix out(m.rows(), m.cols());
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < db; ++b)
      for (int a2 = 0; a2 < da; ++a2)
        for (int b2 = 0; b2 < db; ++b2)
          out(b * da + a, b2 * da + a2) = m(a * db + b, a2 * db + b2);
  return out;
}

CMatrix regroup_pairs(const CMatrix& m, DimPair left, DimPair right) {
  const int a1 = left.first, b1 = left.second;
  const int a2 = right.first, b2 = right.second;
  const int n = a1 * b1 * a2 * b2;
  if (m.rows() != n || m.cols() != n) {
    throw DimensionError("regroup_pairs: dimension mismatch");
  }
  // (x1, y1, x2, y2) -> (x1, x2, y1, y2)
  std::vector<int> perm(static_cast<size_t>(n));
  for (int x1 = 0; x1 < a1; ++x1)
    for (int y1 = 0; y1 < b1; ++y1)
      for (int x2 = 0; x2 < a2; ++x2)
        for (int y2 = 0; y2 < b2; ++y2) {
          const int src = ((x1 * b1 + y1) * a2 + x2) * b2 + y2;
          const int dst = ((x1 * a2 + x2) * b1 + y1) * b2 + y2;
          perm[static_cast<size_t>(src)] = dst;
        }
  CMatrix out(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      out(perm[static_cast<size_t>(r)], perm[static_cast<size_t>(c)]) = m(r, c);
  return out;
}

CMatrix max_entangled(int d) {
  if (d < 1) throw DimensionError("max_entangled: d must be >= 1");
  CMatrix out = CMatrix::Zero(d * d, d * d);
  const double v = 1.0 / d;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out(i * d + i, j * d + j) = v;
  return out;
}

CMatrix identity(int d) { return CMatrix::Identity(d, d); }

bool is_square(const CMatrix& m) { return m.rows() == m.cols() && m.rows() > 0; }

bool all_finite(const CMatrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex v = m.data()[i];
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

double hermiticity_defect(const CMatrix& m) {
  if (!is_square(m)) return INFINITY;
  const double defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return defect / scale;
}

bool is_hermitian(const CMatrix& m, double tol) {
  return hermiticity_defect(m) <= tol;
}

CMatrix hermitian_part(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

RVector eigenvalues(const CMatrix& h) {
  if (!is_square(h)) throw DimensionError("eigenvalues: matrix not square");
  if (!is_hermitian(h)) {
    throw std::invalid_argument("eigenvalues: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(h),
                                            Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double min_eigenvalue(const CMatrix& h) { return eigenvalues(h).minCoeff(); }

double max_eigenvalue(const CMatrix& h) { return eigenvalues(h).maxCoeff(); }

bool is_psd(const CMatrix& h, double tol) {
  return is_hermitian(h) && min_eigenvalue(h) >= -tol;
}

bool is_density(const CMatrix& rho, double tol) {
  return is_psd(rho, tol) && std::abs(rho.trace() - 1.0) <= 1e-9;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("max_abs_diff: shape mismatch");
  }
  return (a - b).cwiseAbs().maxCoeff();
}

std::vector<CMatrix> hermitian_basis(int d) {
  if (d < 1) throw DimensionError("hermitian_basis: d must be >= 1");
  std::vector<CMatrix> out;
  out.reserve(static_cast<size_t>(d * d));
  for (int k = 0; k < d; ++k) {
    CMatrix e = CMatrix::Zero(d, d);
    e(k, k) = 1.0;
    out.push_back(e);
  }
  for (int k = 0; k < d; ++k)
    for (int l = k + 1; l < d; ++l) {
      CMatrix e = CMatrix::Zero(d, d);
      e(k, l) = 1.0;
      e(l, k) = 1.0;
      out.push_back(e);
    }
  const Complex i1(0.0, 1.0);
  for (int k = 0; k < d; ++k)
    for (int l = k + 1; l < d; ++l) {
      CMatrix e = CMatrix::Zero(d, d);
      e(k, l) = -i1;
      e(l, k) = i1;
      out.push_back(e);
    }
  return out;
}

int span_rank(const std::vector<CMatrix>& ms, double tol) {
  if (ms.empty()) return 0;
  const Eigen::Index n = ms.front().size();
  CMatrix stacked(n, static_cast<Eigen::Index>(ms.size()));
  for (size_t k = 0; k < ms.size(); ++k) {
    if (ms[k].size() != n) throw DimensionError("span_rank: shape mismatch");
    stacked.col(static_cast<Eigen::Index>(k)) =
        Eigen::Map<const CVector>(ms[k].data(), n);
  }
  Eigen::JacobiSVD<CMatrix> svd(stacked);
  const RVector s = svd.singularValues();
  int rank = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s(k) > tol * std::max(1.0, s(0))) ++rank;
  return rank;
}

CMatrix psd_sqrt(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(h));
  RVector ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

CMatrix psd_inv_sqrt(const CMatrix& h, double cutoff) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(h));
  RVector ev = es.eigenvalues();
  for (Eigen::Index k = 0; k < ev.size(); ++k)
    ev(k) = ev(k) > cutoff ? 1.0 / std::sqrt(ev(k)) : 0.0;
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace chanorder

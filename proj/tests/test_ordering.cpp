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


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "chanorder/ordering.hpp"
#include "chanorder/sampling.hpp"

using namespace chanorder;

namespace {

double h2(double p) { return p <= 0 || p >= 1 ? 0.0 : -p * std::log2(p) - (1 - p) * std::log2(1 - p); }

ClassicalChannel bsc(double e) { return ClassicalChannel::binary_symmetric(e); }

double pguess_brute(const JointDistribution& j) {
  const int nu = j.u_size(), ny = j.y_size();
  long long count = 1;
  for (int y = 0; y < ny; ++y) count *= nu;
  double best = 0.0;
  for (long long code = 0; code < count; ++code) {
    long long c = code;
    double p = 0.0;
    for (int y = 0; y < ny; ++y) {
      p += j.matrix()(static_cast<int>(c % nu), y);
      c /= nu;
    }
    best = std::max(best, p);
  }
  return best;
}

// pguess(U|Z) - pguess(U|Y) recomputed from the encoding.
double classical_gap(const ClassicalWitness& w, const ClassicalChannel& first, const ClassicalChannel& second) {
  return pguess_brute(JointDistribution::induced(w.prior, w.encoding, second)) -
         pguess_brute(JointDistribution::induced(w.prior, w.encoding, first));
}

// (id (x) N o Gamma)(phi) with Gamma applied from its POVM and preparations
// and N through its Kraus operators.
CMatrix through_witness(const QuantumWitness& w, const QuantumChannel& n) {
  const int dr = static_cast<int>(w.gamma.povm.front().rows());
  const int dbar = static_cast<int>(w.phi.size()) / dr;
  const CMatrix psi = w.phi * w.phi.adjoint();
  const int da = n.d_in();
  CMatrix on_a = CMatrix::Zero(dbar * da, dbar * da);
  for (size_t i = 0; i < w.gamma.povm.size(); ++i) {
    CMatrix marg = CMatrix::Zero(dbar, dbar);
    for (int a = 0; a < dbar; ++a)
      for (int b = 0; b < dbar; ++b)
        for (int r = 0; r < dr; ++r)
          for (int s = 0; s < dr; ++s) marg(a, b) += psi(a * dr + r, b * dr + s) * w.gamma.povm[i](s, r);
    on_a += kron(marg, w.gamma.preparations[i]);
  }
  CMatrix out = CMatrix::Zero(dbar * n.d_out(), dbar * n.d_out());
  for (const auto& k : n.kraus().ops) {
    const CMatrix big = kron(identity(dbar), k);
    out += big * on_a * big.adjoint();
  }
  return out;
}

// H_min(Rbar|B)_rho - H_min(Rbar|B')_sigma recomputed.
double quantum_gap(const QuantumWitness& w, const QuantumChannel& first, const QuantumChannel& second) {
  const int dr = static_cast<int>(w.gamma.povm.front().rows());
  const int dbar = static_cast<int>(w.phi.size()) / dr;
  return hmin_general(through_witness(w, first), DimPair(dbar, first.d_out())) -
         hmin_general(through_witness(w, second), DimPair(dbar, second.d_out()));
}

}  // namespace

TEST_CASE("binary symmetric pair in the degradable direction") {
  const auto v = classical_degradable(bsc(0.1), bsc(0.2));
  REQUIRE(v.status == VerdictStatus::Degradable);
  const double delta = 0.1 / 0.8;
  CHECK(std::abs((*v.classical_map)(1, 0) - delta) < 1e-6);
  CHECK(std::abs((*v.classical_map)(0, 1) - delta) < 1e-6);
  CHECK(std::abs(delta - 0.125) < 1e-15);
  // The composition formula e1 + e2 - 2 e1 e2 gives back 0.2.
  CHECK(std::abs(0.1 + delta - 2 * 0.1 * delta - 0.2) < 1e-15);
}

TEST_CASE("binary symmetric pair in the other direction") {
  const auto v = classical_degradable(bsc(0.2), bsc(0.1));
  REQUIRE(v.status == VerdictStatus::NotDegradable);
  REQUIRE(v.witness.has_value());
  REQUIRE(v.witness->classical.has_value());
  const auto& w = *v.witness->classical;
  CHECK(classical_gap(w, bsc(0.2), bsc(0.1)) >= 0.1 - 1e-7);
  CHECK(std::abs(pguess_brute(JointDistribution::induced(w.prior, w.encoding, bsc(0.2))) - 0.8) < 1e-6);
  CHECK(std::abs(pguess_brute(JointDistribution::induced(w.prior, w.encoding, bsc(0.1))) - 0.9) < 1e-6);
  // The certificate itself yields a witness too.
  REQUIRE(v.frame.has_value());
  CHECK(verify_certificate(classical_program(bsc(0.2), bsc(0.1)), v.frame->certificate).valid);
  const Witness fromcert = extract_classical_witness(*v.frame, bsc(0.2), bsc(0.1));
  CHECK(classical_gap(*fromcert.classical, bsc(0.2), bsc(0.1)) >= 1e-7);
}

TEST_CASE("constant channel against the identity") {
  const ClassicalChannel c = ClassicalChannel::constant(2, 2, 0);
  const auto v = classical_degradable(c, ClassicalChannel::identity(2));
  REQUIRE(v.status == VerdictStatus::NotDegradable);
  const auto& w = *v.witness->classical;
  CHECK(std::abs(w.pguess_first - 0.5) < 1e-6);
  CHECK(std::abs(w.pguess_second - 1.0) < 1e-6);
  CHECK(std::abs(classical_gap(w, c, ClassicalChannel::identity(2)) - 0.5) < 1e-6);
}

TEST_CASE("constructed classical pairs are degradable") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    Rng rng(s);
    const int nx = rng.uniform_int(1, 8), ny = rng.uniform_int(1, 8), nz = rng.uniform_int(1, 8);
    const ClassicalPair p = random_classical_pair(nx, ny, nz, true, s);
    const auto v = classical_degradable(p.first, p.second);
    REQUIRE(v.status == VerdictStatus::Degradable);
    const double res = (v.classical_map->matrix() * p.first.matrix() - p.second.matrix()).cwiseAbs().maxCoeff();
    CHECK(res <= 1e-8);
  }
}

TEST_CASE("free classical pairs: every witness validates") {
  int nd = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    Rng rng(1000 + s);
    const int nx = rng.uniform_int(2, 5), ny = rng.uniform_int(2, 4), nz = rng.uniform_int(2, 4);
    const ClassicalPair p = random_classical_pair(nx, ny, nz, false, 1000 + s);
    const auto v = classical_degradable(p.first, p.second);
    CHECK(v.status != VerdictStatus::Inconclusive);
    if (v.status == VerdictStatus::NotDegradable) {
      ++nd;
      REQUIRE(v.witness->classical.has_value());
      CHECK(classical_gap(*v.witness->classical, p.first, p.second) >= kWitnessMargin);
      CHECK(std::abs(classical_gap(*v.witness->classical, p.first, p.second) - v.witness->separation) < 1e-9);
    }
  }
  CHECK(nd > 50);
}

TEST_CASE("reflexivity and transitivity") {
  for (std::uint64_t s = 0; s < 30; ++s) {
    Rng rng(2000 + s);
    const int nx = rng.uniform_int(2, 4), ny = rng.uniform_int(2, 4), nz = rng.uniform_int(2, 4),
              nt = rng.uniform_int(2, 4);
    const ClassicalChannel a = ClassicalChannel::random(nx, ny, rng);
    CHECK(classical_degradable(a, a).status == VerdictStatus::Degradable);
    const ClassicalChannel b = compose(ClassicalChannel::random(ny, nz, rng), a);
    const ClassicalChannel c = compose(ClassicalChannel::random(nz, nt, rng), b);
    const auto ab = classical_degradable(a, b), bc = classical_degradable(b, c), ac = classical_degradable(a, c);
    REQUIRE(ab.status == VerdictStatus::Degradable);
    REQUIRE(bc.status == VerdictStatus::Degradable);
    CHECK(ac.status == VerdictStatus::Degradable);
    const RMatrix chained = bc.classical_map->matrix() * ab.classical_map->matrix() * a.matrix();
    CHECK((chained - c.matrix()).cwiseAbs().maxCoeff() <= ab.residual * nz + bc.residual + 1e-12);

    const QuantumChannel qa = random_channel(2, 2, 2, rng);
    CHECK(quantum_degradable(qa, qa).status == VerdictStatus::Degradable);
  }
}

TEST_CASE("constructed quantum pairs are degradable") {
  for (std::uint64_t s = 0; s < 60; ++s) {
    Rng rng(3000 + s);
    const int da = rng.uniform_int(1, 3), db = rng.uniform_int(1, 3), dc = rng.uniform_int(1, 3);
    const QuantumPair p = random_quantum_pair(da, db, dc, true, 3000 + s);
    const auto v = quantum_degradable(p.first, p.second);
    REQUIRE(v.status == VerdictStatus::Degradable);
    CHECK(v.residual <= 1e-7);
    const CMatrix rho = random_density(da, da, rng);
    CHECK(max_abs_diff(v.quantum_map->apply(p.first.apply(rho)), p.second.apply(rho)) < 1e-6);
  }
  const auto dep = quantum_degradable(QuantumChannel::identity(2), QuantumChannel::completely_depolarizing(2, 2));
  REQUIRE(dep.status == VerdictStatus::Degradable);
  CHECK(choi_distance(*dep.quantum_map, QuantumChannel::completely_depolarizing(2, 2)) < 1e-6);
}

TEST_CASE("dephasing cannot be degraded into the identity") {
  const QuantumChannel deph = QuantumChannel::dephasing(2), id = QuantumChannel::identity(2);
  const auto v = quantum_degradable(deph, id);
  REQUIRE(v.status == VerdictStatus::NotDegradable);
  REQUIRE(v.witness->quantum.has_value());
  const QuantumWitness& w = *v.witness->quantum;
  CHECK(quantum_gap(w, deph, id) >= kWitnessMargin);
  CHECK(std::abs(quantum_gap(w, deph, id) - (w.hmin_first - w.hmin_second)) < 1e-7);
}

TEST_CASE("free quantum pairs: every witness validates") {
  int nd = 0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    Rng rng(4000 + s);
    const int da = rng.uniform_int(2, 3), db = rng.uniform_int(2, 3), dc = rng.uniform_int(2, 3);
    const QuantumPair p = random_quantum_pair(da, db, dc, false, 4000 + s);
    const auto v = quantum_degradable(p.first, p.second);
    CHECK(v.status != VerdictStatus::Inconclusive);
    if (v.status != VerdictStatus::NotDegradable) continue;
    ++nd;
    REQUIRE(v.witness->quantum.has_value());
    const QuantumWitness& w = *v.witness->quantum;
    CHECK(std::abs(w.phi.norm() - 1.0) < 1e-9);
    CHECK_NOTHROW(w.gamma.validate());
    CHECK(quantum_gap(w, p.first, p.second) >= kWitnessMargin);
    CHECK(verify_certificate(quantum_program(p.first, p.second), v.frame->certificate).valid);
  }
  CHECK(nd > 10);
}

TEST_CASE("embedded classical pairs agree with the linear program") {
  int both = 0;
  for (std::uint64_t s = 0; s < 40; ++s) {
    Rng rng(5000 + s);
    const int nx = rng.uniform_int(2, 3), ny = rng.uniform_int(2, 3), nz = rng.uniform_int(2, 3);
    const ClassicalPair p = random_classical_pair(nx, ny, nz, s % 3 == 0, 5000 + s);
    const auto c = classical_degradable(p.first, p.second);
    const auto q = quantum_degradable(embed_classical(p.first), embed_classical(p.second));
    CHECK(c.status == q.status);
    if (c.witness && q.witness) {
      ++both;
      CHECK(std::abs(c.witness->separation - q.witness->separation) < 1e-6);
    }
  }
  CHECK(both > 5);
}

TEST_CASE("witness frame quantities") {
  const auto v = quantum_degradable(QuantumChannel::dephasing(2), QuantumChannel::identity(2));
  REQUIRE(v.frame.has_value());
  const SeparationFrame& f = *v.frame;
  CHECK(std::abs(f.total.trace().real() - 1.0) < 1e-9);
  CMatrix sum = CMatrix::Zero(f.total.rows(), f.total.cols());
  for (const auto& w : f.weighted) {
    CHECK(min_eigenvalue(hermitian_part(w)) > -1e-12);
    sum += w;
  }
  CHECK(max_abs_diff(sum, f.total) < 1e-12);
  CMatrix povm_sum = CMatrix::Zero(f.total.rows(), f.total.cols());
  for (const auto& p : f.povm) povm_sum += p;
  CHECK(max_abs_diff(povm_sum, identity(static_cast<int>(f.total.rows()))) < 1e-9);
}

TEST_CASE("guessing order sampling") {
  const QuantumPair deg = random_quantum_pair(2, 3, 2, true, 11);
  const ViolationReport r = check_ambiguity_sampled(deg.first, deg.second, 500, 1);
  CHECK(r.trials == 500);
  CHECK(r.violations == 0);
  CHECK(r.worst_margin >= -kViolationTol);
  const ViolationReport ext = check_ambiguity_sampled(deg.first, deg.second, 50, 2, AmbiguityOptions{2, {}});
  CHECK(ext.violations == 0);

  const ViolationReport same = check_ambiguity_sampled(deg.first, deg.first, 100, 3);
  CHECK(same.violations == 0);
  CHECK(same.worst_margin >= -1e-9);

  // A pair with a known witness: injecting its ensemble exposes a violation.
  const auto v = classical_degradable(bsc(0.2), bsc(0.1));
  REQUIRE(v.witness.has_value());
  AmbiguityOptions inj;
  inj.injected.push_back(witness_ensemble(*v.witness->classical));
  const ViolationReport hit =
      check_ambiguity_sampled(embed_classical(bsc(0.2)), embed_classical(bsc(0.1)), 5, 4, inj);
  CHECK(hit.violations >= 1);
  CHECK(hit.margins.front() < -0.05);
  CHECK(hit.worst_trial == 0);
}

TEST_CASE("coherence order sampling") {
  const QuantumPair deg = random_quantum_pair(2, 2, 3, true, 12);
  CHECK(check_coherence_sampled(deg.first, deg.second, 200, 5).violations == 0);
  CHECK(check_coherence_sampled(deg.first, deg.first, 50, 6).violations == 0);

  // Identity against complete depolarization with Gamma = id on Phi+:
  // H_min is -1 before and +1 after.
  CVector phi = CVector::Zero(4);
  phi[0] = phi[3] = 1.0 / std::sqrt(2.0);
  const CoherenceProbe probe{phi, 2, QuantumChannel::identity(2)};
  const QuantumChannel id = QuantumChannel::identity(2), dep = QuantumChannel::completely_depolarizing(2, 2);
  const double before = hmin_general(max_entangled(2), DimPair(2, 2));
  const double after = hmin_general(kron(identity(2) / 2.0, identity(2) / 2.0), DimPair(2, 2));
  CHECK(std::abs(before + 1.0) < 1e-6);
  CHECK(std::abs(after - 1.0) < 1e-6);
  const ViolationReport r = check_coherence_sampled(id, dep, 3, 7, {probe});
  CHECK(r.violations == 0);
  CHECK(std::abs(r.margins.front() - (after - before)) < 1e-6);

  // A quantum witness injected into its own pair violates the order.
  const auto v = quantum_degradable(QuantumChannel::dephasing(2), id);
  const QuantumWitness& w = *v.witness->quantum;
  const CoherenceProbe wp{w.phi, static_cast<int>(w.gamma.povm.front().rows()), w.channel};
  CHECK(check_coherence_sampled(QuantumChannel::dephasing(2), id, 3, 8, {wp}).violations >= 1);
}

TEST_CASE("noisiness sampling") {
  const ClassicalPair deg = random_classical_pair(3, 4, 3, true, 13);
  CHECK(check_noisiness_sampled(deg.first, deg.second, 500, 9).violations == 0);
  CHECK(check_noisiness_sampled(deg.first, deg.first, 100, 10).violations == 0);
  const ViolationReport r = check_noisiness_sampled(bsc(0.2), bsc(0.1), 1000, 11);
  CHECK(r.violations >= 1);
  // Trial 0 is the identity encoding with a uniform prior.
  CHECK(std::abs(r.margins.front() - (h2(0.1) - h2(0.2))) < 1e-12);
}

TEST_CASE("sampling is a function of the seed") {
  const QuantumPair p = random_quantum_pair(2, 2, 2, false, 14);
  const auto a = check_ambiguity_sampled(p.first, p.second, 30, 99);
  const auto b = check_ambiguity_sampled(p.first, p.second, 30, 99);
  CHECK(a.margins == b.margins);
  const auto c = check_ambiguity_sampled(p.first, p.second, 30, 100);
  CHECK(a.margins != c.margins);
}

TEST_CASE("search for not degradable pairs without noisiness violations") {
  KmSearchOptions o;
  o.trials = 30;
  o.noisiness_trials = 50;
  o.degradable = true;
  CHECK(km_search(o).empty());

  o.degradable = false;
  o.seed = 3;
  const auto a = km_search(o);
  const auto b = km_search(o);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].trial == b[i].trial);
    CHECK(a[i].pair.first.matrix() == b[i].pair.first.matrix());
    CHECK(a[i].noisiness.violations == 0);
    CHECK(classical_gap(*a[i].witness.classical, a[i].pair.first, a[i].pair.second) >= kWitnessMargin);
  }
  // The binary symmetric pair would be excluded by the same check.
  CHECK(check_noisiness_sampled(bsc(0.2), bsc(0.1), o.noisiness_trials, 0).violations >= 1);
}

TEST_CASE("input checks") {
  CHECK_THROWS(classical_degradable(ClassicalChannel::identity(2), ClassicalChannel::identity(3)));
  CHECK_THROWS(quantum_degradable(QuantumChannel::identity(2), QuantumChannel::identity(3)));
}

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

#include "chanorder/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include "chanorder/cli.hpp"
#include "chanorder/io.hpp"

namespace chanorder {

namespace {

using namespace acceptance;
using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

int scaled(int n, bool quick) { return quick ? std::max(1, n / 10) : n; }

// Bookkeeping for criterion 8, shared by every decision made in the run.
struct Honesty {
  int feasible_declared_infeasible = 0;
  int certificates = 0;
  int bad_certificates = 0;

  void record(const DegradabilityVerdict& v, const ConicProgram& program, bool constructed) {
    if (constructed && v.status == VerdictStatus::NotDegradable) ++feasible_declared_infeasible;
    if (v.status == VerdictStatus::NotDegradable && v.frame) {
      ++certificates;
      if (!verify_certificate(program, v.frame->certificate).valid) ++bad_certificates;
    }
  }
};

struct Suite {
  const AcceptanceOptions& opts;
  Honesty honesty;
  std::uint64_t seed(std::uint64_t criterion, std::uint64_t trial) const {
    return splitmix64(opts.seed ^ splitmix64(criterion * 1000003ULL + trial));
  }
};

DegradabilityVerdict decide(Suite& s, const ClassicalChannel& w, const ClassicalChannel& w2,
                            bool constructed) {
  DegradabilityVerdict v = classical_degradable(w, w2);
  s.honesty.record(v, classical_program(w, w2), constructed);
  return v;
}

DegradabilityVerdict decide(Suite& s, const QuantumChannel& n, const QuantumChannel& n2,
                            bool constructed) {
  DegradabilityVerdict v = quantum_degradable(n, n2);
  s.honesty.record(v, quantum_program(n, n2), constructed);
  return v;
}

// 1. Constructed-degradable soundness.
CriterionResult c1(Suite& s) {
  const auto t0 = Clock::now();
  const int n = scaled(100, s.opts.quick);
  int ok_c = 0, ok_q = 0;
  double worst = 0.0;
  for (int t = 0; t < n; ++t) {
    Rng rng(s.seed(1, t));
    const int nx = rng.uniform_int(1, 8), ny = rng.uniform_int(1, 8), nz = rng.uniform_int(1, 8);
    const ClassicalPair p = random_classical_pair(nx, ny, nz, true, s.seed(1, t));
    const auto v = decide(s, p.first, p.second, true);
    if (v.status == VerdictStatus::Degradable && v.residual <= kResidualTol) ++ok_c;
    if (v.classical_map) worst = std::max(worst, v.residual);
  }
  for (int t = 0; t < n; ++t) {
    Rng rng(s.seed(101, t));
    const int da = rng.uniform_int(1, 3), db = rng.uniform_int(1, 3), dc = rng.uniform_int(1, 3);
    const QuantumPair p = random_quantum_pair(da, db, dc, true, s.seed(101, t));
    const auto v = decide(s, p.first, p.second, true);
    if (v.status == VerdictStatus::Degradable && v.residual <= kResidualTol) ++ok_q;
    if (v.quantum_map) worst = std::max(worst, v.residual);
  }
  const double secs = since(t0);
  CriterionResult r{1, "constructed-degradable soundness", false, "", secs};
  r.pass = ok_c == n && ok_q == n && secs <= kSoundnessBudgetSeconds;
  r.detail = std::to_string(ok_c) + "/" + std::to_string(n) + " classical, " + std::to_string(ok_q) +
             "/" + std::to_string(n) + " quantum degradable, worst residual " + fmt("%.2e", worst) +
             " (tol " + fmt("%.0e", kResidualTol) + "), budget " + fmt("%.0f", kSoundnessBudgetSeconds) + " s";
  return r;
}

// 2. Witness soundness on free pairs.
CriterionResult c2(Suite& s) {
  const auto t0 = Clock::now();
  const int n = scaled(100, s.opts.quick);
  int nd = 0, validated = 0, inconclusive = 0;
  double worst = INFINITY;
  auto tally = [&](const DegradabilityVerdict& v, double margin) {
    if (v.status == VerdictStatus::Inconclusive) ++inconclusive;
    if (v.status != VerdictStatus::NotDegradable) return;
    ++nd;
    worst = std::min(worst, margin);
    if (margin >= kWitnessTol) ++validated;
  };
  for (int t = 0; t < n; ++t) {
    Rng rng(s.seed(2, t));
    const int nx = rng.uniform_int(2, 6), ny = rng.uniform_int(2, 6), nz = rng.uniform_int(2, 6);
    const ClassicalPair p = random_classical_pair(nx, ny, nz, false, s.seed(2, t));
    const auto v = decide(s, p.first, p.second, false);
    tally(v, v.witness ? validate_witness(*v.witness, p.first, p.second) : -INFINITY);
  }
  for (int t = 0; t < n; ++t) {
    Rng rng(s.seed(102, t));
    const int da = rng.uniform_int(2, 3), db = rng.uniform_int(2, 3), dc = rng.uniform_int(2, 3);
    const QuantumPair p = random_quantum_pair(da, db, dc, false, s.seed(102, t));
    const auto v = decide(s, p.first, p.second, false);
    tally(v, v.witness ? validate_witness(*v.witness, p.first, p.second) : -INFINITY);
  }
  CriterionResult r{2, "witness soundness", false, "", since(t0)};
  r.pass = nd > 0 && validated == nd;
  r.detail = std::to_string(validated) + "/" + std::to_string(nd) +
             " not_degradable verdicts re-validated over " + std::to_string(2 * n) +
             " free pairs, worst margin " + fmt("%.3e", nd ? worst : 0.0) + " (need >= " +
             fmt("%.0e", kWitnessTol) + "), " + std::to_string(inconclusive) + " inconclusive";
  return r;
}

JointDistribution random_joint(Rng& rng) {
  const int nu = rng.uniform_int(1, 8), ny = rng.uniform_int(1, 8);
  const auto p = random_simplex(nu * ny, rng);
  RMatrix m(nu, ny);
  for (int u = 0; u < nu; ++u)
    for (int y = 0; y < ny; ++y) m(u, y) = p[u * ny + y];
  return JointDistribution(m);
}

// 3. H_min of a cq embedding equals -log2 pguess.
CriterionResult c3(Suite& s) {
  const auto t0 = Clock::now();
  const int n = scaled(200, s.opts.quick);
  double worst = 0.0;
  int failures = 0;
  for (int t = 0; t < n; ++t) {
    Rng rng(s.seed(3, t));
    const JointDistribution j = random_joint(rng);
    try {
      const double h = hmin_general(cq_embedding(j), DimPair(j.u_size(), j.y_size()));
      worst = std::max(worst, std::abs(h + std::log2(pguess_classical(j))));
    } catch (const std::exception&) {
      ++failures;
    }
  }
  CriterionResult r{3, "cq min-entropy identity", false, "", since(t0)};
  r.pass = failures == 0 && worst <= kIdentityTol;
  r.detail = std::to_string(n) + " joints, max |hmin + log2 pguess| " + fmt("%.2e", worst) +
             " (tol " + fmt("%.0e", kIdentityTol) + "), " + std::to_string(failures) + " solver failures";
  return r;
}

// 4. -log2 qcorr equals H_min.
CriterionResult c4(Suite& s) {
  const auto t0 = Clock::now();
  const int n = scaled(100, s.opts.quick);
  double worst = 0.0;
  int failures = 0;
  for (int db : {2, 3}) {
    for (int t = 0; t < n; ++t) {
      Rng rng(s.seed(4 + 100 * db, t));
      const int d = 2 * db;
      const CMatrix rho = random_density(d, rng.uniform_int(1, d), rng);
      try {
        const double h = hmin_general(rho, DimPair(2, db));
        const double q = qcorr(rho, DimPair(2, db)).value;
        worst = std::max(worst, std::abs(-std::log2(q) - h));
      } catch (const std::exception&) {
        ++failures;
      }
    }
  }
  CriterionResult r{4, "qcorr / min-entropy duality", false, "", since(t0)};
  r.pass = failures == 0 && worst <= kDualityTol;
  r.detail = std::to_string(n) + " two-qubit + " + std::to_string(n) +
             " qubit-qutrit states, max |-log2 qcorr - hmin| " + fmt("%.2e", worst) + " (tol " +
             fmt("%.0e", kDualityTol) + "), " + std::to_string(failures) + " solver failures";
  return r;
}

// 5. Data processing on constructed-degradable pairs.
CriterionResult c5(Suite& s) {
  const auto t0 = Clock::now();
  const int pairs = 10;
  const int ens = scaled(500, s.opts.quick) / pairs;
  const int coh = scaled(200, s.opts.quick) / pairs;
  const int noisy = scaled(500, s.opts.quick) / pairs;
  int trials = 0, violations = 0;
  double worst = INFINITY;
  auto add = [&](const ViolationReport& r) {
    trials += r.trials;
    violations += r.violations;
    worst = std::min(worst, r.worst_margin);
  };
  int t_amb = 0, t_coh = 0, t_noi = 0;
  for (int t = 0; t < pairs; ++t) {
    Rng rng(s.seed(5, t));
    const int da = rng.uniform_int(2, 3), db = rng.uniform_int(2, 3), dc = rng.uniform_int(2, 3);
    const QuantumPair p = random_quantum_pair(da, db, dc, true, s.seed(5, t));
    add(check_ambiguity_sampled(p.first, p.second, std::max(1, ens), s.seed(55, t)));
    add(check_coherence_sampled(p.first, p.second, std::max(1, coh), s.seed(56, t)));
    t_amb += std::max(1, ens);
    t_coh += std::max(1, coh);
    const ClassicalPair c = random_classical_pair(rng.uniform_int(2, 6), rng.uniform_int(2, 6),
                                                  rng.uniform_int(2, 6), true, s.seed(57, t));
    add(check_noisiness_sampled(c.first, c.second, std::max(1, noisy), s.seed(58, t)));
    t_noi += std::max(1, noisy);
  }
  CriterionResult r{5, "data-processing suites", false, "", since(t0)};
  r.pass = violations == 0;
  r.detail = std::to_string(t_amb) + " ensembles, " + std::to_string(t_coh) + " coherence, " +
             std::to_string(t_noi) + " noisiness trials on constructed pairs: " +
             std::to_string(violations) + " violations beyond -" + fmt("%.0e", kDpiTol) +
             ", worst margin " + fmt("%.3e", worst);
  return r;
}

// 6. BSC threshold.
CriterionResult c6(Suite& s) {
  const auto t0 = Clock::now();
  int wrong = 0, checked = 0;
  double worst = 0.0;
  for (int a = 0; a <= 10; ++a) {
    for (int b = 0; b <= 10; ++b) {
      const double e = a / 20.0, e2 = b / 20.0;
      const bool expect = e <= e2 && e2 <= 1.0 - e;
      const auto v = decide(s, ClassicalChannel::binary_symmetric(e),
                            ClassicalChannel::binary_symmetric(e2), expect);
      const bool got = v.status == VerdictStatus::Degradable;
      if (got != expect || v.status == VerdictStatus::Inconclusive) ++wrong;
      if (got && a < 10) {
        const double delta = (e2 - e) / (1.0 - 2.0 * e);
        const RMatrix& phi = v.classical_map->matrix();
        const double err = std::max({std::abs(phi(1, 0) - delta), std::abs(phi(0, 1) - delta),
                                     std::abs(phi(0, 0) - (1.0 - delta)), std::abs(phi(1, 1) - (1.0 - delta))});
        worst = std::max(worst, err);
        ++checked;
      }
    }
  }
  CriterionResult r{6, "BSC threshold", false, "", since(t0)};
  r.pass = wrong == 0 && worst <= kBscTol;
  r.detail = "121 grid pairs, " + std::to_string(wrong) + " wrong verdicts, " + std::to_string(checked) +
             " maps vs delta, max error " + fmt("%.2e", worst) + " (tol " + fmt("%.0e", kBscTol) + ")";
  return r;
}

// 7. Embedded classical pairs: LP and SDP agree.
CriterionResult c7(Suite& s) {
  const auto t0 = Clock::now();
  const int n = scaled(100, s.opts.quick);
  int agree = 0, both_nd = 0;
  double worst = 0.0;
  for (int t = 0; t < n; ++t) {
    Rng rng(s.seed(7, t));
    const int nx = rng.uniform_int(2, 3), ny = rng.uniform_int(2, 3), nz = rng.uniform_int(2, 3);
    const bool constructed = t % 2 == 0;
    const ClassicalPair p = random_classical_pair(nx, ny, nz, constructed, s.seed(7, t));
    const auto a = decide(s, p.first, p.second, constructed);
    const auto b = decide(s, embed_classical(p.first), embed_classical(p.second), constructed);
    if (a.status == b.status && a.status != VerdictStatus::Inconclusive) ++agree;
    if (a.witness && b.witness) {
      ++both_nd;
      worst = std::max(worst, std::abs(a.witness->separation - b.witness->separation));
    }
  }
  CriterionResult r{7, "embedded classical consistency", false, "", since(t0)};
  r.pass = agree == n && worst <= kGapAgreeTol;
  r.detail = std::to_string(agree) + "/" + std::to_string(n) + " verdicts agree, " +
             std::to_string(both_nd) + " witness pairs, max gap difference " + fmt("%.2e", worst) +
             " (tol " + fmt("%.0e", kGapAgreeTol) + ")";
  return r;
}

// 8. Solver honesty over everything decided above.
CriterionResult c8(Suite& s) {
  const Honesty& h = s.honesty;
  CriterionResult r{8, "solver honesty", false, "", 0.0};
  r.pass = h.feasible_declared_infeasible == 0 && h.bad_certificates == 0;
  r.detail = std::to_string(h.feasible_declared_infeasible) +
             " constructed-feasible programs declared infeasible, " + std::to_string(h.bad_certificates) +
             "/" + std::to_string(h.certificates) + " certificates failing verification";
  return r;
}

// 9. Byte-identical CLI output for equal seeds.
CriterionResult c9(Suite& s) {
  const auto t0 = Clock::now();
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() /
                       ("chanorder-accept-" + std::to_string(s.seed(9, 0) & 0xffffffffULL));
  fs::create_directories(dir);
  int runs = 0, identical = 0, failed = 0;
  auto twice = [&](const std::vector<std::string>& args) {
    const CommandResult a = run_cli(args);
    const CommandResult b = run_cli(args);
    ++runs;
    if (a.exit_code != kExitOk) ++failed;
    if (a.exit_code == b.exit_code && a.output == b.output && !a.output.empty()) ++identical;
    return a;
  };
  const std::string seed = std::to_string(s.seed(9, 1) % 100000);
  const std::string cpre = (dir / "c").string(), qpre = (dir / "q").string();
  twice({"random-pair", "--free", "--kind", "classical", "--dims", "3,3,2", "--seed", seed, "--out", cpre});
  twice({"random-pair", "--degradable", "--kind", "classical", "--dims", "4,3,3", "--seed", seed});
  twice({"random-pair", "--degradable", "--kind", "quantum", "--dims", "2,2,2", "--seed", seed, "--out", qpre});
  twice({"random-pair", "--free", "--kind", "quantum", "--dims", "2,3,2", "--seed", seed});
  const std::string trials = s.opts.quick ? "10" : "40";
  twice({"sample", "noisiness", cpre + ".first.json", cpre + ".second.json", "--trials", trials, "--seed", seed});
  twice({"sample", "ambiguity", qpre + ".first.json", qpre + ".second.json", "--trials", trials, "--seed", seed});
  twice({"sample", "ambiguity", cpre + ".first.json", cpre + ".second.json", "--trials", trials, "--seed", seed});
  twice({"sample", "coherence", qpre + ".first.json", qpre + ".second.json", "--trials", trials, "--seed", seed});
  std::error_code ec;
  fs::remove_all(dir, ec);
  CriterionResult r{9, "reproducibility", false, "", since(t0)};
  r.pass = identical == runs && failed == 0;
  r.detail = std::to_string(identical) + "/" + std::to_string(runs) +
             " random-pair and sample commands byte-identical across two runs, " +
             std::to_string(failed) + " failed";
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(
    const AcceptanceOptions& opts, const std::function<void(const CriterionResult&)>& on_result) {
  Suite s{opts, {}};
  std::vector<CriterionResult> out;
  struct FaultGuard {
    explicit FaultGuard(double f) { set_accuracy_fault(f); }
    ~FaultGuard() { set_accuracy_fault(0.0); }
  } guard(opts.accuracy_fault);
  using Fn = CriterionResult (*)(Suite&);
  for (Fn f : {c1, c2, c3, c4, c5, c6, c7, c8, c9}) {
    CriterionResult r;
    try {
      r = f(s);
    } catch (const std::exception& e) {
      r.id = static_cast<int>(out.size()) + 1;
      r.title = "criterion " + std::to_string(r.id);
      r.pass = false;
      r.detail = std::string("aborted: ") + e.what();
    }
    if (on_result) on_result(r);
    out.push_back(r);
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  return std::string(r.pass ? "PASS" : "FAIL") + " [" + std::to_string(r.id) + "] " + r.title + ": " +
         r.detail + " (" + fmt("%.2f", r.seconds) + " s)";
}

}  // namespace chanorder

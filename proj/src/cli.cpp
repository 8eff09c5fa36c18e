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

#include "chanorder/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "CLI11.hpp"
#include "chanorder/acceptance.hpp"
#include "chanorder/io.hpp"

namespace chanorder {

namespace {

constexpr const char* kEmbedNotice =
    "classical channel embedded as a quantum channel (diagonal Choi) for comparison";

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

struct Loaded {
  std::string path;
  std::string bytes;
  Json json;
};

Loaded load(const std::string& path) {
  Loaded l{path, read_file(path), {}};
  l.json = parse_json(l.bytes, path);
  return l;
}

Json input_entry(const Loaded& l, const std::string& kind, const std::string& label) {
  Json j{{"file", l.path}, {"kind", kind}, {"fnv1a", fnv1a_hex(l.bytes)}};
  if (!label.empty()) j["label"] = label;
  return j;
}

std::string real_matrix_text(const RMatrix& m) {
  std::string s;
  for (int r = 0; r < m.rows(); ++r) {
    s += " ";
    for (int c = 0; c < m.cols(); ++c) s += " " + fmt("%.10g", m(r, c));
    s += "\n";
  }
  return s;
}

std::string complex_matrix_text(const CMatrix& m) {
  std::string s;
  for (int r = 0; r < m.rows(); ++r) {
    s += " ";
    for (int c = 0; c < m.cols(); ++c) {
      s += " " + fmt("%.6g", m(r, c).real());
      if (m(r, c).imag() != 0.0) s += fmt("%+.6gi", m(r, c).imag());
    }
    s += "\n";
  }
  return s;
}

// ---------------------------------------------------------------------------
// check-degradable

struct CheckArgs {
  std::string a, b, out;
  double tol = 1e-7;
  bool json = false;
};

CommandResult cmd_check(const CheckArgs& args) {
  const auto t0 = std::chrono::steady_clock::now();
  const Loaded la = load(args.a);
  const Loaded lb = load(args.b);
  const ChannelDocument da = channel_from_json(la.json);
  const ChannelDocument db = channel_from_json(lb.json);
  if (!(args.tol > 0.0) || args.tol > 1.0) throw InputError("--tol must lie in (0, 1]");
  if (da.as_quantum().d_in() != db.as_quantum().d_in()) {
    throw InputError("channels must share the input alphabet / space");
  }

  DegradabilityVerdict v;
  std::string notice;
  const bool classical = da.is_classical() && db.is_classical();
  if (classical) {
    v = classical_degradable(da.classical(), db.classical(), args.tol);
  } else {
    if (da.is_classical() || db.is_classical()) notice = kEmbedNotice;
    v = quantum_degradable(da.as_quantum(), db.as_quantum(), args.tol);
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  Json report;
  report["command"] = "check-degradable";
  report["inputs"] = Json::array({input_entry(la, da.is_classical() ? "classical" : "quantum", da.label),
                                  input_entry(lb, db.is_classical() ? "classical" : "quantum", db.label)});
  report["channels"] = Json::array({to_json(da), to_json(db)});
  report["program"] = classical ? "linear" : "semidefinite";
  if (!notice.empty()) report["notice"] = notice;
  report["tolerance"] = args.tol;
  report.update(to_json(v));
  report["wall_time_s"] = wall;

  CommandResult res;
  res.exit_code = v.status == VerdictStatus::Degradable      ? kExitOk
                  : v.status == VerdictStatus::NotDegradable ? kExitNotDegradable
                                                             : kExitInconclusive;
  if (!args.out.empty()) write_file(args.out, dump(report));
  if (args.json) {
    res.output = dump(report);
    return res;
  }

  std::string s = "verdict: " + to_string(v.status) + "\n";
  if (!notice.empty()) s += "notice: " + notice + "\n";
  if (v.classical_map) {
    s += "degrading map phi(z|y) (rows z, columns y):\n" + real_matrix_text(v.classical_map->matrix());
    s += "residual: " + fmt("%.3g", v.residual) + "\n";
  } else if (v.quantum_map) {
    s += "degrading map Psi, trace-1 Choi matrix:\n" + complex_matrix_text(v.quantum_map->choi());
    s += "residual: " + fmt("%.3g", v.residual) + "\n";
  }
  if (v.witness) {
    const Witness& w = *v.witness;
    s += "witness (" + w.origin + "):\n";
    if (w.classical) {
      s += "  pguess(U|first)  = " + fmt("%.12g", w.classical->pguess_first) + "\n";
      s += "  pguess(U|second) = " + fmt("%.12g", w.classical->pguess_second) + "\n";
    } else if (w.quantum) {
      s += "  H_min(Rbar|first)  = " + fmt("%.12g", w.quantum->hmin_first) + "\n";
      s += "  H_min(Rbar|second) = " + fmt("%.12g", w.quantum->hmin_second) + "\n";
    }
    s += "  margin = " + fmt("%.6g", w.margin()) + ", separation = " + fmt("%.6g", w.separation) + "\n";
    s += "  (use --json or --out for the full encoding)\n";
  }
  if (!v.message.empty()) s += "message: " + v.message + "\n";
  res.output = s;
  return res;
}

// ---------------------------------------------------------------------------
// measure

struct MeasureArgs {
  std::string which, input, channel;
  bool json = false;
};

std::string doc_kind(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw InputError("input document has no \"kind\"");
  }
  return j["kind"].get<std::string>();
}

CommandResult cmd_measure(const MeasureArgs& args) {
  const Loaded in = load(args.input);
  const std::string kind = doc_kind(in.json);
  Json report{{"command", "measure"}, {"measure", args.which}};
  report["inputs"] = Json::array({input_entry(in, kind, "")});
  double value = 0.0;
  std::string unit;

  auto need = [&](const char* k) {
    if (kind != k) throw InputError(args.which + " needs a \"" + k + "\" document, got \"" + kind + "\"");
  };
  if (!args.channel.empty() && args.which != "pguess") {
    throw InputError("--channel applies to pguess only");
  }

  if (args.which == "pguess") {
    unit = "probability";
    if (kind == "joint") {
      if (!args.channel.empty()) throw InputError("--channel needs an ensemble input");
      const JointDistribution j = joint_from_json(in.json);
      value = pguess_classical(j);
      Json decoder = Json::array();
      for (int y = 0; y < j.y_size(); ++y) {
        int best = 0;
        for (int u = 1; u < j.u_size(); ++u)
          if (j.matrix()(u, y) > j.matrix()(best, y)) best = u;
        decoder.push_back(best);
      }
      report["decoder"] = decoder;
    } else if (kind == "ensemble") {
      const CqEnsemble e = ensemble_from_json(in.json);
      GuessResult g;
      if (args.channel.empty()) {
        g = pguess_cq(e);
      } else {
        const Loaded lc = load(args.channel);
        const ChannelDocument cd = channel_from_json(lc.json);
        report["inputs"].push_back(input_entry(lc, cd.is_classical() ? "classical" : "quantum", cd.label));
        if (cd.is_classical()) report["notice"] = kEmbedNotice;
        const QuantumChannel n = cd.as_quantum();
        if (n.d_in() != e.dim()) throw InputError("channel input does not match the ensemble");
        g = pguess_cq(e, n);
      }
      value = g.value;
      Json povm = Json::array();
      for (const auto& p : g.povm) povm.push_back(matrix_to_json(p));
      report["povm"] = povm;
    } else {
      throw InputError("pguess needs a \"joint\" or \"ensemble\" document");
    }
  } else if (args.which == "hmin") {
    unit = "bits";
    HminResult h;
    if (kind == "joint") {
      const JointDistribution j = joint_from_json(in.json);
      h = hmin_general_full(cq_embedding(j), DimPair(j.u_size(), j.y_size()));
    } else {
      need("state");
      const StateDocument s = state_from_json(in.json);
      h = hmin_general_full(s.rho, s.dims);
    }
    value = h.hmin;
    report["sigma"] = matrix_to_json(h.sigma);
  } else if (args.which == "qcorr") {
    unit = "dimensionless";
    need("state");
    const StateDocument s = state_from_json(in.json);
    const QcorrResult q = qcorr(s.rho, s.dims);
    value = q.value;
    report["decoder"] = to_json(ChannelDocument{q.decoder, "decoder"});
  } else if (args.which == "centropy") {
    unit = "bits";
    need("joint");
    value = conditional_entropy(joint_from_json(in.json));
  } else {
    throw InputError("unknown measure \"" + args.which + "\"");
  }
  report["value"] = value;
  report["unit"] = unit;

  CommandResult res;
  if (args.json) {
    res.output = dump(report);
  } else {
    res.output = args.which + ": " + fmt("%.15g", value) + " " + unit + "\n";
    if (report.contains("notice")) res.output += "notice: " + report["notice"].get<std::string>() + "\n";
  }
  return res;
}

// ---------------------------------------------------------------------------
// sample

struct SampleArgs {
  std::string ordering, a, b, inject;
  int trials = 0;
  std::uint64_t seed = 0;
  int extension = 0;
};

Witness load_injected_witness(const std::string& path) {
  const Json j = load(path).json;
  return witness_from_json(j.contains("witness") ? j.at("witness") : j);
}

CoherenceProbe probe_from(const Witness& w) {
  if (w.quantum) {
    return CoherenceProbe{w.quantum->phi, static_cast<int>(w.quantum->gamma.povm.front().rows()),
                          w.quantum->channel};
  }
  // A classical witness as a coherence probe: sum_u sqrt(p(u)) |u>|u>
  // followed by the (dephasing) embedding of its encoding.
  const auto& c = *w.classical;
  const int k = static_cast<int>(c.prior.size());
  CVector phi = CVector::Zero(k * k);
  for (int u = 0; u < k; ++u) phi[u * k + u] = std::sqrt(std::max(c.prior[u], 0.0));
  return CoherenceProbe{phi, k, embed_classical(c.encoding)};
}

CommandResult cmd_sample(const SampleArgs& args) {
  const Loaded la = load(args.a);
  const Loaded lb = load(args.b);
  const ChannelDocument da = channel_from_json(la.json);
  const ChannelDocument db = channel_from_json(lb.json);
  if (args.trials < 1) throw InputError("--trials must be positive");
  if (args.extension < 0 || args.extension > 4) throw InputError("--extension must lie in [0, 4]");

  Json report{{"command", "sample"}, {"ordering", args.ordering}};
  report["inputs"] = Json::array({input_entry(la, da.is_classical() ? "classical" : "quantum", da.label),
                                  input_entry(lb, db.is_classical() ? "classical" : "quantum", db.label)});
  ViolationReport r;
  int injected = 0;
  if (args.ordering == "noisiness") {
    if (!da.is_classical() || !db.is_classical()) throw InputError("noisiness needs two classical channels");
    if (!args.inject.empty()) throw InputError("--inject applies to ambiguity and coherence");
    if (da.classical().in_size() != db.classical().in_size()) throw InputError("input alphabets differ");
    r = check_noisiness_sampled(da.classical(), db.classical(), args.trials, args.seed);
  } else if (args.ordering == "ambiguity" || args.ordering == "coherence") {
    if (da.is_classical() || db.is_classical()) report["notice"] = kEmbedNotice;
    const QuantumChannel n = da.as_quantum();
    const QuantumChannel n2 = db.as_quantum();
    if (n.d_in() != n2.d_in()) throw InputError("input spaces differ");
    std::optional<Witness> w;
    if (!args.inject.empty()) w = load_injected_witness(args.inject);
    if (args.ordering == "ambiguity") {
      AmbiguityOptions opts;
      opts.extension = args.extension;
      if (w) {
        if (!w->classical) throw InputError("ambiguity injection needs a classical witness");
        opts.injected.push_back(witness_ensemble(*w->classical));
      }
      injected = static_cast<int>(opts.injected.size());
      for (const auto& e : opts.injected)
        if (e.dim() != n.d_in()) throw InputError("injected ensemble does not match the input space");
      r = check_ambiguity_sampled(n, n2, args.trials, args.seed, opts);
      report["extension"] = args.extension;
    } else {
      if (args.extension != 0) throw InputError("--extension applies to ambiguity only");
      std::vector<CoherenceProbe> probes;
      if (w) probes.push_back(probe_from(*w));
      for (const auto& p : probes)
        if (p.encoding.d_out() != n.d_in()) throw InputError("injected encoding does not match the input space");
      injected = static_cast<int>(probes.size());
      r = check_coherence_sampled(n, n2, args.trials, args.seed, probes);
    }
  } else {
    throw InputError("unknown ordering \"" + args.ordering + "\"");
  }
  report["injected"] = injected;
  report.update(to_json(r));
  return CommandResult{kExitOk, dump(report), ""};
}

// ---------------------------------------------------------------------------
// random-pair

struct PairArgs {
  bool degradable = false, free = false;
  std::string kind = "classical", out;
  std::vector<int> dims{2, 2, 2};
  std::uint64_t seed = 0;
};

CommandResult cmd_random_pair(const PairArgs& args) {
  if (args.degradable == args.free) throw InputError("give exactly one of --degradable, --free");
  if (args.dims.size() != 3) throw InputError("--dims takes three sizes: input,first output,second output");
  const int cap = args.kind == "quantum" ? 4 : args.kind == "classical" ? 16 : 0;
  if (cap == 0) throw InputError("--kind must be classical or quantum");
  for (int d : args.dims)
    if (d < 1 || d > cap) throw InputError("dimensions must lie in [1, " + std::to_string(cap) + "]");

  const std::string tag = (args.degradable ? "degradable" : "free") + std::string(" pair, seed ") +
                          std::to_string(args.seed);
  ChannelDocument first{ClassicalChannel::identity(1), ""}, second = first;
  if (args.kind == "classical") {
    ClassicalPair p = random_classical_pair(args.dims[0], args.dims[1], args.dims[2], args.degradable, args.seed);
    first = ChannelDocument{p.first, "first of " + tag};
    second = ChannelDocument{p.second, "second of " + tag};
  } else {
    QuantumPair p = random_quantum_pair(args.dims[0], args.dims[1], args.dims[2], args.degradable, args.seed);
    first = ChannelDocument{p.first, "first of " + tag};
    second = ChannelDocument{p.second, "second of " + tag};
  }
  const std::string a = dump(to_json(first));
  const std::string b = dump(to_json(second));
  if (!args.out.empty()) {
    write_file(args.out + ".first.json", a);
    write_file(args.out + ".second.json", b);
  }
  Json both{{"first", to_json(first)}, {"second", to_json(second)}};
  return CommandResult{kExitOk, dump(both), ""};
}

// ---------------------------------------------------------------------------
// km-search

CommandResult cmd_km(const KmSearchOptions& opts, const std::vector<int>& sizes) {
  KmSearchOptions o = opts;
  if (sizes.size() != 3) throw InputError("--sizes takes three alphabet sizes");
  for (int s : sizes)
    if (s < 2 || s > 8) throw InputError("alphabet sizes must lie in [2, 8]");
  if (o.trials < 1 || o.noisiness_trials < 1) throw InputError("trial counts must be positive");
  o.nx = sizes[0];
  o.ny = sizes[1];
  o.nz = sizes[2];
  const auto found = km_search(o);
  Json report{{"command", "km-search"},
              {"exploratory", true},
              {"note",
               "candidates are certified not degradable and showed no sampled noisiness "
               "violation; sampling cannot certify the less-noisy ordering"},
              {"sizes", sizes},
              {"trials", o.trials},
              {"noisiness_trials", o.noisiness_trials},
              {"seed", o.seed}};
  Json cands = Json::array();
  for (const auto& c : found) {
    cands.push_back(Json{{"trial", c.trial},
                         {"first", to_json(ChannelDocument{c.pair.first, ""})},
                         {"second", to_json(ChannelDocument{c.pair.second, ""})},
                         {"witness", to_json(c.witness)},
                         {"noisiness", to_json(c.noisiness)}});
  }
  report["candidates"] = cands;
  return CommandResult{kExitOk, dump(report), ""};
}

// ---------------------------------------------------------------------------
// selftest

CommandResult cmd_selftest(bool full, double fault) {
  AcceptanceOptions opts;
  opts.quick = !full;
  if (fault < 0.0 || fault >= 1.0) throw InputError("--fault-accuracy must lie in [0, 1)");
  opts.accuracy_fault = fault;
  std::string out;
  bool ok = true;
  for (const auto& r : run_acceptance(opts)) {
    out += format_result(r) + "\n";
    ok = ok && r.pass;
  }
  out += ok ? "selftest: all criteria passed\n" : "selftest: FAILED\n";
  return CommandResult{ok ? kExitOk : 1, out, ""};
}

}  // namespace

CommandResult run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Degradability orderings of classical and quantum channels", "chanorder"};
  app.require_subcommand(1);

  CheckArgs check;
  auto* c = app.add_subcommand("check-degradable", "decide whether B is a post-processing of A");
  c->add_option("a", check.a, "first channel document")->required();
  c->add_option("b", check.b, "second channel document")->required();
  c->add_option("--tol", check.tol, "feasibility tolerance")->capture_default_str();
  c->add_flag("--json", check.json, "print the JSON report");
  c->add_option("--out", check.out, "also write the JSON report to this file");

  MeasureArgs measure;
  auto* m = app.add_subcommand("measure", "information measures of a state, joint or ensemble");
  m->add_option("measure", measure.which, "pguess | hmin | qcorr | centropy")
      ->required()
      ->check(CLI::IsMember({"pguess", "hmin", "qcorr", "centropy"}));
  m->add_option("input", measure.input, "input document")->required();
  m->add_option("--channel", measure.channel, "channel applied to an ensemble before guessing");
  m->add_flag("--json", measure.json, "print a JSON report");

  SampleArgs sample;
  auto* s = app.add_subcommand("sample", "sampled check of an ordering implied by degradability");
  s->add_option("ordering", sample.ordering, "ambiguity | coherence | noisiness")
      ->required()
      ->check(CLI::IsMember({"ambiguity", "coherence", "noisiness"}));
  s->add_option("a", sample.a, "first channel document")->required();
  s->add_option("b", sample.b, "second channel document")->required();
  s->add_option("--trials", sample.trials, "number of random trials")->required();
  s->add_option("--seed", sample.seed, "seed")->required();
  s->add_option("--extension", sample.extension, "ambiguity: tensor an identity of this size");
  s->add_option("--inject", sample.inject, "witness or report whose witness is evaluated first");
  s->add_flag("--json", "reports are always JSON");

  PairArgs pair;
  auto* p = app.add_subcommand("random-pair", "draw a random channel pair");
  auto* pd = p->add_flag("--degradable", pair.degradable, "second = Psi o first");
  auto* pf = p->add_flag("--free", pair.free, "independent channels");
  pd->excludes(pf);
  p->add_option("--kind", pair.kind, "classical | quantum")->capture_default_str();
  p->add_option("--dims", pair.dims, "input,first output,second output")->delimiter(',')->expected(3);
  p->add_option("--seed", pair.seed, "seed")->required();
  p->add_option("--out", pair.out, "write PREFIX.first.json and PREFIX.second.json");
  p->add_flag("--json", "output is always JSON");

  KmSearchOptions km;
  std::vector<int> sizes{3, 3, 3};
  auto* k = app.add_subcommand("km-search", "exploratory search for not degradable pairs without noisiness violations");
  k->add_option("--sizes", sizes, "|X|,|Y|,|Z|")->delimiter(',')->expected(3);
  k->add_option("--trials", km.trials, "pairs drawn")->capture_default_str();
  k->add_option("--noisiness-trials", km.noisiness_trials, "encodings per pair")->capture_default_str();
  k->add_flag("--degradable", km.degradable, "draw second = phi o first");
  k->add_option("--seed", km.seed, "seed")->required();
  k->add_flag("--json", "output is always JSON");

  bool quick = false, full = false;
  double fault = 0.0;
  auto* t = app.add_subcommand("selftest", "run the acceptance suite");
  auto* tq = t->add_flag("--quick", quick, "reduced sample counts (default)");
  auto* tf = t->add_flag("--full", full, "full sample counts");
  tq->excludes(tf);
  t->add_option("--fault-accuracy", fault, "test hook: corrupt the solver stopping accuracy")->group("");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    return CommandResult{kExitOk, app.help(), ""};
  } catch (const CLI::CallForAllHelp&) {
    return CommandResult{kExitOk, app.help("", CLI::AppFormatMode::All), ""};
  } catch (const CLI::ParseError& e) {
    std::string help;
    for (auto* sub : app.get_subcommands()) help = sub->help();
    if (help.empty()) help = app.help();
    return CommandResult{kExitInput, "", std::string("error: ") + e.what() + "\n" + help};
  }

  try {
    if (c->parsed()) return cmd_check(check);
    if (m->parsed()) return cmd_measure(measure);
    if (s->parsed()) return cmd_sample(sample);
    if (p->parsed()) return cmd_random_pair(pair);
    if (k->parsed()) return cmd_km(km, sizes);
    if (t->parsed()) return cmd_selftest(full, fault);
  } catch (const InputError& e) {
    return CommandResult{kExitInput, "", std::string("input error: ") + e.what() + "\n"};
  } catch (const std::invalid_argument& e) {
    // InvalidChannel, DimensionError and other validator rejections.
    return CommandResult{kExitInput, "", std::string("input error: ") + e.what() + "\n"};
  } catch (const std::exception& e) {
    return CommandResult{kExitInconclusive, "", std::string("numerical failure: ") + e.what() + "\n"};
  }
  return CommandResult{kExitInput, "", "no command\n"};
}

}  // namespace chanorder

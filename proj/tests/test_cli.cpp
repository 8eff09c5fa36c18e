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
#include <filesystem>

#include "chanorder/cli.hpp"
#include "chanorder/io.hpp"
#include "chanorder/sampling.hpp"

using namespace chanorder;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("chanorder-cli-" + std::to_string(splitmix64(reinterpret_cast<std::uintptr_t>(this)) % 1000000007ULL));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name, const std::string& text) const {
    const std::string p = (path / name).string();
    write_file(p, text);
    return p;
  }
  std::string at(const std::string& name) const { return (path / name).string(); }
};

std::string bsc_doc(double e) {
  return dump(to_json(ChannelDocument{ClassicalChannel::binary_symmetric(e), ""}));
}

Json out_json(const CommandResult& r) { return Json::parse(r.output); }

double h2(double p) { return -p * std::log2(p) - (1 - p) * std::log2(1 - p); }

}  // namespace

TEST_CASE("check-degradable on binary symmetric files") {
  TempDir t;
  const std::string a = t.file("a.json", bsc_doc(0.1));
  const std::string b = t.file("b.json", bsc_doc(0.2));
  const CommandResult r = run_cli({"check-degradable", a, b});
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("0.875") != std::string::npos);
  CHECK(r.output.find("0.125") != std::string::npos);

  const CommandResult j = run_cli({"check-degradable", a, b, "--json"});
  CHECK(j.exit_code == 0);
  const Json rep = out_json(j);
  CHECK(rep["verdict"] == "degradable");
  const ChannelDocument map = channel_from_json(rep["degrading_map"]);
  CHECK(std::abs(map.classical()(1, 0) - 0.125) < 1e-6);
  CHECK(std::abs(map.classical()(0, 0) - 0.875) < 1e-6);
}

TEST_CASE("not degradable reports carry a witness that re-validates") {
  TempDir t;
  const std::string a = t.file("a.json", bsc_doc(0.2));
  const std::string b = t.file("b.json", bsc_doc(0.1));
  const std::string out = t.at("report.json");
  const CommandResult r = run_cli({"check-degradable", a, b, "--out", out});
  CHECK(r.exit_code == 1);
  const Json rep = parse_json(read_file(out), out);
  CHECK(rep["verdict"] == "not_degradable");
  // Reload everything from the report alone.
  const Witness w = witness_from_json(rep["witness"]);
  const ChannelDocument first = channel_from_json(rep["channels"][0]);
  const ChannelDocument second = channel_from_json(rep["channels"][1]);
  const double margin = validate_witness(w, first.classical(), second.classical());
  CHECK(margin >= 1e-7);
  CHECK(std::abs(margin - rep["witness"]["margin"].get<double>()) < 1e-8);
  CHECK(std::abs(w.classical->pguess_second - w.classical->pguess_first - 0.1) < 1e-6);
}

TEST_CASE("quantum reports re-validate and mixed kinds are embedded") {
  TempDir t;
  CHECK(run_cli({"random-pair", "--free", "--kind", "quantum", "--dims", "2,2,2", "--seed", "3", "--out",
                 t.at("q")}).exit_code == 0);
  const std::string bsc = t.file("bsc.json", bsc_doc(0.1));
  const CommandResult r = run_cli({"check-degradable", t.at("q.first.json"), bsc, "--json"});
  REQUIRE(r.exit_code == 1);
  const Json rep = out_json(r);
  CHECK(rep.contains("notice"));
  CHECK(rep["program"] == "semidefinite");
  const Witness w = witness_from_json(rep["witness"]);
  REQUIRE(w.quantum.has_value());
  const double margin = validate_witness(w, channel_from_json(rep["channels"][0]).as_quantum(),
                                         channel_from_json(rep["channels"][1]).as_quantum());
  CHECK(std::abs(margin - rep["witness"]["margin"].get<double>()) < 1e-8);
}

TEST_CASE("exit codes depend on the verdict only") {
  TempDir t;
  const std::string a = t.file("a.json", bsc_doc(0.2));
  const std::string b = t.file("b.json", bsc_doc(0.1));
  CHECK(run_cli({"check-degradable", a, b}).exit_code == run_cli({"check-degradable", a, b, "--json"}).exit_code);
  CHECK(run_cli({"check-degradable", b, a}).exit_code == run_cli({"check-degradable", b, a, "--json"}).exit_code);
}

TEST_CASE("malformed inputs exit with 3") {
  TempDir t;
  const std::string good = t.file("good.json", bsc_doc(0.1));
  const std::string text = bsc_doc(0.2);
  const std::string trunc = t.file("trunc.json", text.substr(0, text.size() / 2));
  CHECK(run_cli({"check-degradable", trunc, good}).exit_code == 3);
  CHECK(run_cli({"check-degradable", t.at("missing.json"), good}).exit_code == 3);
  const std::string nonstoch = t.file(
      "bad.json", R"({"kind":"classical","d_in":2,"d_out":2,"matrix":[[0.5,0.5],[0.2,0.2]]})");
  CHECK(run_cli({"check-degradable", nonstoch, good}).exit_code == 3);
  const std::string shape = t.file(
      "shape.json", R"({"kind":"classical","d_in":3,"d_out":2,"matrix":[[0.5,0.5],[0.5,0.5]]})");
  CHECK(run_cli({"check-degradable", shape, good}).exit_code == 3);
  const std::string notcp = t.file("notcp.json",
      R"({"kind":"quantum","d_in":1,"d_out":2,"matrix":[[[1.5,0],[0,0]],[[0,0],[-0.5,0]]]})");
  CHECK(run_cli({"check-degradable", notcp, notcp}).exit_code == 3);
  const std::string three = t.file("three.json",
      dump(to_json(ChannelDocument{ClassicalChannel::identity(3), ""})));
  CHECK(run_cli({"check-degradable", three, good}).exit_code == 3);
  CHECK(run_cli({"check-degradable", good}).exit_code == 3);
  CHECK(run_cli({"frobnicate"}).exit_code == 3);
  CHECK(run_cli({"check-degradable", good, good, "--tol", "-1"}).exit_code == 3);
  const CommandResult r = run_cli({"check-degradable", trunc, good});
  CHECK(r.error.find("input error") != std::string::npos);
}

TEST_CASE("measure commands") {
  TempDir t;
  const std::string phi = t.file("phi.json", dump(to_json(StateDocument{max_entangled(2), DimPair(2, 2)})));
  const CommandResult h = run_cli({"measure", "hmin", phi, "--json"});
  REQUIRE(h.exit_code == 0);
  CHECK(std::abs(out_json(h)["value"].get<double>() + 1.0) < 1e-6);
  const CommandResult q = run_cli({"measure", "qcorr", phi, "--json"});
  REQUIRE(q.exit_code == 0);
  CHECK(std::abs(out_json(q)["value"].get<double>() - 2.0) < 1e-6);

  RMatrix m(2, 2);
  m << 0.45, 0.05, 0.05, 0.45;
  const std::string joint = t.file("joint.json", dump(to_json(JointDistribution(m))));
  const CommandResult g = run_cli({"measure", "pguess", joint, "--json"});
  REQUIRE(g.exit_code == 0);
  CHECK(std::abs(out_json(g)["value"].get<double>() - 0.9) < 1e-12);
  CHECK(out_json(g)["decoder"] == Json::array({0, 1}));
  const CommandResult hj = run_cli({"measure", "hmin", joint, "--json"});
  CHECK(std::abs(out_json(hj)["value"].get<double>() + std::log2(0.9)) < 1e-6);

  RMatrix ind(2, 3);
  ind << 0.3 * 0.2, 0.3 * 0.5, 0.3 * 0.3, 0.7 * 0.2, 0.7 * 0.5, 0.7 * 0.3;
  const std::string indep = t.file("indep.json", dump(to_json(JointDistribution(ind))));
  const CommandResult c = run_cli({"measure", "centropy", indep, "--json"});
  REQUIRE(c.exit_code == 0);
  CHECK(std::abs(out_json(c)["value"].get<double>() - h2(0.3)) < 1e-12);

  // Ensemble through a channel file.
  CMatrix z = CMatrix::Zero(2, 2), o = CMatrix::Zero(2, 2);
  z(0, 0) = 1.0;
  o(1, 1) = 1.0;
  const std::string ens = t.file("ens.json", dump(to_json(CqEnsemble{{0.5, 0.5}, {z, o}})));
  const std::string ch = t.file("bsc.json", bsc_doc(0.1));
  const CommandResult e = run_cli({"measure", "pguess", ens, "--channel", ch, "--json"});
  REQUIRE(e.exit_code == 0);
  CHECK(std::abs(out_json(e)["value"].get<double>() - 0.9) < 1e-7);

  CHECK(run_cli({"measure", "qcorr", joint}).exit_code == 3);
  CHECK(run_cli({"measure", "centropy", phi}).exit_code == 3);
  CHECK(run_cli({"measure", "entropy", phi}).exit_code == 3);
  const std::string badstate = t.file("bad.json", R"({"kind":"state","dims":[2,2],"matrix":[[[1,0]]]})");
  CHECK(run_cli({"measure", "hmin", badstate}).exit_code == 3);
}

TEST_CASE("sample commands") {
  TempDir t;
  REQUIRE(run_cli({"random-pair", "--degradable", "--kind", "quantum", "--dims", "2,2,2", "--seed", "5",
                   "--out", t.at("d")}).exit_code == 0);
  const std::string a = t.at("d.first.json"), b = t.at("d.second.json");
  for (const char* o : {"ambiguity", "coherence"}) {
    const CommandResult r = run_cli({"sample", o, a, b, "--trials", "50", "--seed", "1"});
    REQUIRE(r.exit_code == 0);
    CHECK(out_json(r)["violations"] == 0);
    CHECK(out_json(r)["trials"] == 50);
    CHECK(out_json(r)["seed"] == 1);
    CHECK(out_json(run_cli({"sample", o, a, a, "--trials", "20", "--seed", "2"}))["violations"] == 0);
  }
  const CommandResult ext = run_cli({"sample", "ambiguity", a, b, "--trials", "10", "--seed", "3", "--extension", "2"});
  CHECK(out_json(ext)["violations"] == 0);

  const std::string w = t.file("w.json", bsc_doc(0.2)), s = t.file("s.json", bsc_doc(0.1));
  const std::string rep = t.at("rep.json");
  REQUIRE(run_cli({"check-degradable", w, s, "--out", rep}).exit_code == 1);
  for (const char* o : {"ambiguity", "coherence"}) {
    const CommandResult hit = run_cli({"sample", o, w, s, "--trials", "5", "--seed", "4", "--inject", rep});
    REQUIRE(hit.exit_code == 0);
    CHECK(out_json(hit)["violations"].get<int>() >= 1);
    CHECK(out_json(hit)["injected"] == 1);
  }
  CHECK(out_json(run_cli({"sample", "noisiness", w, s, "--trials", "50", "--seed", "5"}))["violations"].get<int>() >= 1);
  CHECK(out_json(run_cli({"sample", "noisiness", s, w, "--trials", "200", "--seed", "5"}))["violations"] == 0);

  CHECK(run_cli({"sample", "noisiness", w, s, "--trials", "5"}).exit_code == 3);
  CHECK(run_cli({"sample", "noisiness", a, b, "--trials", "5", "--seed", "1"}).exit_code == 3);
  CHECK(run_cli({"sample", "noisiness", w, t.at("nope.json"), "--trials", "5", "--seed", "1"}).exit_code == 3);
}

TEST_CASE("random pairs") {
  TempDir t;
  for (const char* kind : {"classical", "quantum"}) {
    for (int s = 0; s < 5; ++s) {
      const std::string seed = std::to_string(s), pre = t.at(std::string(kind) + seed);
      const std::vector<std::string> args{"random-pair", "--degradable", "--kind", kind, "--dims", "3,2,3", "--seed", seed, "--out", pre};
      const CommandResult a = run_cli(args);
      REQUIRE(a.exit_code == 0);
      const std::string first = read_file(pre + ".first.json");
      CHECK(run_cli(args).output == a.output);
      CHECK(read_file(pre + ".first.json") == first);
      CHECK(run_cli({"check-degradable", pre + ".first.json", pre + ".second.json"}).exit_code == 0);
    }
  }
  int deg = 0, nd = 0;
  for (int s = 0; s < 100; ++s) {
    const std::string pre = t.at("f");
    REQUIRE(run_cli({"random-pair", "--free", "--kind", "quantum", "--dims", "2,2,2", "--seed", std::to_string(s),
                     "--out", pre}).exit_code == 0);
    const int code = run_cli({"check-degradable", pre + ".first.json", pre + ".second.json"}).exit_code;
    deg += code == 0;
    nd += code == 1;
  }
  CHECK(deg > 0);
  CHECK(nd > 0);
  CHECK(deg + nd == 100);
  CHECK(run_cli({"random-pair", "--free", "--kind", "quantum", "--dims", "5,2,2", "--seed", "1"}).exit_code == 3);
  CHECK(run_cli({"random-pair", "--free", "--kind", "classical", "--dims", "17,2,2", "--seed", "1"}).exit_code == 3);
  CHECK(run_cli({"random-pair", "--free", "--degradable", "--seed", "1"}).exit_code == 3);
  CHECK(run_cli({"random-pair", "--seed", "1"}).exit_code == 3);
}

TEST_CASE("channel documents round trip") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    Rng rng(s);
    const ClassicalChannel w = ClassicalChannel::random(rng.uniform_int(1, 5), rng.uniform_int(1, 5), rng);
    const ChannelDocument cw = channel_from_json(parse_json(dump(to_json(ChannelDocument{w, "w"})), "mem"));
    CHECK(cw.classical().matrix() == w.matrix());
    CHECK(cw.label == "w");
    const QuantumChannel n = random_channel(rng.uniform_int(1, 3), rng.uniform_int(1, 3), 2, rng);
    const ChannelDocument cn = channel_from_json(parse_json(dump(to_json(ChannelDocument{n, ""})), "mem"));
    CHECK(cn.quantum().choi() == n.choi());
  }
  // Verdicts and measures survive the trip.
  const QuantumPair p = random_quantum_pair(2, 2, 2, true, 77);
  const QuantumChannel a = channel_from_json(to_json(ChannelDocument{p.first, ""})).quantum();
  const QuantumChannel b = channel_from_json(to_json(ChannelDocument{p.second, ""})).quantum();
  const auto v1 = quantum_degradable(p.first, p.second), v2 = quantum_degradable(a, b);
  CHECK(v1.status == v2.status);
  CHECK(std::abs(v1.residual - v2.residual) < 1e-9);
  const CMatrix rho = a.choi();
  CHECK(std::abs(hmin_general(rho, DimPair(2, 2)) - hmin_general(p.first.choi(), DimPair(2, 2))) < 1e-9);
}

TEST_CASE("witness documents round trip") {
  const auto v = quantum_degradable(QuantumChannel::dephasing(2), QuantumChannel::identity(2));
  REQUIRE(v.witness.has_value());
  const Witness w = witness_from_json(parse_json(dump(to_json(*v.witness)), "mem"));
  CHECK(std::abs(validate_witness(w, QuantumChannel::dephasing(2), QuantumChannel::identity(2)) - v.witness->margin()) < 1e-8);
  CHECK_THROWS_AS(witness_from_json(Json{{"variant", "other"}}), InputError);
}

TEST_CASE("km-search output") {
  const std::vector<std::string> args{"km-search", "--sizes", "3,3,3", "--trials", "20", "--noisiness-trials", "50", "--seed", "4"};
  const CommandResult a = run_cli(args);
  REQUIRE(a.exit_code == 0);
  CHECK(out_json(a)["exploratory"] == true);
  CHECK(run_cli(args).output == a.output);
  CHECK(out_json(run_cli({"km-search", "--trials", "10", "--degradable", "--seed", "1"}))["candidates"].empty());
  CHECK(run_cli({"km-search", "--sizes", "9,3,3", "--seed", "1"}).exit_code == 3);
}

TEST_CASE("selftest") {
  const CommandResult ok = run_cli({"selftest", "--quick"});
  CHECK(ok.exit_code == 0);
  CHECK(ok.output.find("FAIL") == std::string::npos);
  // Fault injection: a corrupted solver stopping accuracy must be caught.
  const CommandResult bad = run_cli({"selftest", "--quick", "--fault-accuracy", "1e-3"});
  CHECK(bad.exit_code != 0);
  CHECK(bad.output.find("FAIL") != std::string::npos);
  // The hook does not leak into later runs.
  CHECK(run_cli({"selftest", "--quick"}).exit_code == 0);
}

TEST_CASE("help") {
  const CommandResult h = run_cli({"--help"});
  CHECK(h.exit_code == 0);
  CHECK(h.output.find("check-degradable") != std::string::npos);
}

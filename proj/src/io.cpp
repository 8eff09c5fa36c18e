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

#include "chanorder/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace chanorder {

namespace {

[[noreturn]] void bad(const std::string& what) { throw InputError(what); }

const Json& field(const Json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) bad(std::string(what) + ": missing \"" + key + "\"");
  return j.at(key);
}

int positive_int(const Json& j, const char* key, const char* what) {
  const Json& v = field(j, key, what);
  if (!v.is_number_integer() || v.get<long long>() < 1 || v.get<long long>() > 4096) {
    bad(std::string(what) + ": \"" + key + "\" must be a positive integer");
  }
  return v.get<int>();
}

double number(const Json& v, const char* what) {
  if (!v.is_number()) bad(std::string(what) + ": expected a number");
  return v.get<double>();
}

std::string kind_of(const Json& j, const char* what) {
  const Json& k = field(j, "kind", what);
  if (!k.is_string()) bad(std::string(what) + ": \"kind\" must be a string");
  return k.get<std::string>();
}

std::vector<double> real_vector(const Json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + ": expected an array");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(number(v, what));
  return out;
}

template <typename F>
auto rethrow_as_input(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    bad(std::string(what) + ": " + e.what());
  }
}

}  // namespace

QuantumChannel ChannelDocument::as_quantum() const {
  return is_classical() ? embed_classical(classical()) : quantum();
}

Json matrix_to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const Json& j, const char* what) {
  if (!j.is_array() || j.empty()) bad(std::string(what) + ": matrix must be a nonempty array");
  const auto rows = static_cast<int>(j.size());
  if (!j[0].is_array() || j[0].empty()) bad(std::string(what) + ": malformed matrix row");
  const auto cols = static_cast<int>(j[0].size());
  CMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != cols) {
      bad(std::string(what) + ": ragged matrix");
    }
    for (int c = 0; c < cols; ++c) {
      const Json& e = row[static_cast<size_t>(c)];
      if (!e.is_array() || e.size() != 2) bad(std::string(what) + ": entries must be [re, im]");
      m(r, c) = Complex(number(e[0], what), number(e[1], what));
    }
  }
  if (!all_finite(m)) bad(std::string(what) + ": non-finite entry");
  return m;
}

Json real_matrix_to_json(const RMatrix& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

RMatrix real_matrix_from_json(const Json& j, const char* what) {
  if (!j.is_array() || j.empty()) bad(std::string(what) + ": matrix must be a nonempty array");
  const auto rows = static_cast<int>(j.size());
  if (!j[0].is_array() || j[0].empty()) bad(std::string(what) + ": malformed matrix row");
  const auto cols = static_cast<int>(j[0].size());
  RMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != cols) {
      bad(std::string(what) + ": ragged matrix");
    }
    for (int c = 0; c < cols; ++c) m(r, c) = number(row[static_cast<size_t>(c)], what);
  }
  if (!m.allFinite()) bad(std::string(what) + ": non-finite entry");
  return m;
}

Json vector_to_json(const CVector& v) {
  Json out = Json::array();
  for (int k = 0; k < v.size(); ++k) out.push_back({v[k].real(), v[k].imag()});
  return out;
}

CVector vector_from_json(const Json& j, const char* what) {
  if (!j.is_array() || j.empty()) bad(std::string(what) + ": vector must be a nonempty array");
  CVector v(static_cast<int>(j.size()));
  for (size_t k = 0; k < j.size(); ++k) {
    if (!j[k].is_array() || j[k].size() != 2) bad(std::string(what) + ": entries must be [re, im]");
    v[static_cast<int>(k)] = Complex(number(j[k][0], what), number(j[k][1], what));
  }
  return v;
}

// ---------------------------------------------------------------------------
// Channels and inputs

Json to_json(const ChannelDocument& d) {
  Json j;
  if (d.is_classical()) {
    const auto& w = d.classical();
    j["kind"] = "classical";
    j["d_in"] = w.in_size();
    j["d_out"] = w.out_size();
    j["matrix"] = real_matrix_to_json(w.matrix());
  } else {
    const auto& n = d.quantum();
    j["kind"] = "quantum";
    j["d_in"] = n.d_in();
    j["d_out"] = n.d_out();
    j["matrix"] = matrix_to_json(n.choi());
  }
  if (!d.label.empty()) j["label"] = d.label;
  return j;
}

ChannelDocument channel_from_json(const Json& j) {
  const char* what = "channel document";
  const std::string kind = kind_of(j, what);
  const int din = positive_int(j, "d_in", what);
  const int dout = positive_int(j, "d_out", what);
  std::string label;
  if (j.contains("label")) {
    if (!j["label"].is_string()) bad("channel document: \"label\" must be a string");
    label = j["label"].get<std::string>();
  }
  if (kind == "classical") {
    RMatrix w = real_matrix_from_json(field(j, "matrix", what), what);
    if (w.rows() != dout || w.cols() != din) {
      bad("channel document: classical matrix must be d_out x d_in");
    }
    return rethrow_as_input(what, [&] {
      return ChannelDocument{ClassicalChannel(std::move(w)), label};
    });
  }
  if (kind == "quantum") {
    CMatrix choi = matrix_from_json(field(j, "matrix", what), what);
    if (choi.rows() != din * dout || choi.cols() != din * dout) {
      bad("channel document: Choi matrix must have side d_in * d_out");
    }
    return rethrow_as_input(what, [&] {
      return ChannelDocument{QuantumChannel(DimPair(din, dout), std::move(choi)), label};
    });
  }
  bad("channel document: unknown kind \"" + kind + "\"");
}

Json to_json(const StateDocument& s) {
  return Json{{"kind", "state"},
              {"dims", {s.dims.first, s.dims.second}},
              {"matrix", matrix_to_json(s.rho)}};
}

StateDocument state_from_json(const Json& j) {
  const char* what = "state document";
  if (kind_of(j, what) != "state") bad("state document: kind must be \"state\"");
  const Json& dims = field(j, "dims", what);
  if (!dims.is_array() || dims.size() != 2 || !dims[0].is_number_integer() ||
      !dims[1].is_number_integer()) {
    bad("state document: \"dims\" must be [dA, dB]");
  }
  const int da = dims[0].get<int>();
  const int db = dims[1].get<int>();
  if (da < 1 || db < 1) bad("state document: dimensions must be positive");
  StateDocument s{matrix_from_json(field(j, "matrix", what), what), DimPair(da, db)};
  rethrow_as_input(what, [&] {
    require_bipartite_state(s.rho, s.dims);
    return 0;
  });
  return s;
}

Json to_json(const JointDistribution& j) {
  return Json{{"kind", "joint"}, {"matrix", real_matrix_to_json(j.matrix())}};
}

JointDistribution joint_from_json(const Json& j) {
  const char* what = "joint document";
  if (kind_of(j, what) != "joint") bad("joint document: kind must be \"joint\"");
  RMatrix p = real_matrix_from_json(field(j, "matrix", what), what);
  return rethrow_as_input(what, [&] { return JointDistribution(std::move(p)); });
}

Json to_json(const CqEnsemble& e) {
  Json states = Json::array();
  for (const auto& s : e.states) states.push_back(matrix_to_json(s));
  return Json{{"kind", "ensemble"}, {"prior", e.prior}, {"states", states}};
}

CqEnsemble ensemble_from_json(const Json& j) {
  const char* what = "ensemble document";
  if (kind_of(j, what) != "ensemble") bad("ensemble document: kind must be \"ensemble\"");
  CqEnsemble e;
  e.prior = real_vector(field(j, "prior", what), what);
  const Json& states = field(j, "states", what);
  if (!states.is_array()) bad("ensemble document: \"states\" must be an array");
  for (const auto& s : states) e.states.push_back(matrix_from_json(s, what));
  rethrow_as_input(what, [&] {
    e.validate();
    return 0;
  });
  return e;
}

// ---------------------------------------------------------------------------
// Results

Json to_json(const Witness& w) {
  Json j;
  j["origin"] = w.origin;
  j["separation"] = w.separation;
  j["margin"] = w.margin();
  if (w.classical) {
    const auto& c = *w.classical;
    j["variant"] = "classical";
    j["prior"] = c.prior;
    j["encoding"] = to_json(ChannelDocument{c.encoding, "encoding p(x|u)"});
    j["pguess_first"] = c.pguess_first;
    j["pguess_second"] = c.pguess_second;
  } else if (w.quantum) {
    const auto& q = *w.quantum;
    j["variant"] = "quantum";
    j["phi"] = vector_to_json(q.phi);
    Json povm = Json::array();
    Json preps = Json::array();
    for (const auto& p : q.gamma.povm) povm.push_back(matrix_to_json(p));
    for (const auto& p : q.gamma.preparations) preps.push_back(matrix_to_json(p));
    j["povm"] = povm;
    j["preparations"] = preps;
    j["hmin_first"] = q.hmin_first;
    j["hmin_second"] = q.hmin_second;
  }
  return j;
}

Witness witness_from_json(const Json& j) {
  const char* what = "witness";
  const Json& variant = field(j, "variant", what);
  if (!variant.is_string()) bad("witness: \"variant\" must be a string");
  Witness w;
  if (j.contains("origin") && j["origin"].is_string()) w.origin = j["origin"].get<std::string>();
  if (j.contains("separation")) w.separation = number(j["separation"], what);
  if (variant == "classical") {
    ChannelDocument enc = channel_from_json(field(j, "encoding", what));
    if (!enc.is_classical()) bad("witness: encoding must be classical");
    w.classical = ClassicalWitness{enc.classical(), real_vector(field(j, "prior", what), what),
                                   number(field(j, "pguess_first", what), what),
                                   number(field(j, "pguess_second", what), what)};
    return w;
  }
  if (variant == "quantum") {
    MeasurePrepareChannel mp;
    const Json& povm = field(j, "povm", what);
    const Json& preps = field(j, "preparations", what);
    if (!povm.is_array() || !preps.is_array()) bad("witness: povm and preparations must be arrays");
    for (const auto& p : povm) mp.povm.push_back(matrix_from_json(p, what));
    for (const auto& p : preps) mp.preparations.push_back(matrix_from_json(p, what));
    QuantumChannel gamma = rethrow_as_input(what, [&] { return mp_channel(mp); });
    w.quantum = QuantumWitness{vector_from_json(field(j, "phi", what), what), mp, gamma,
                               number(field(j, "hmin_first", what), what),
                               number(field(j, "hmin_second", what), what)};
    return w;
  }
  bad("witness: unknown variant");
}

Json to_json(const DegradabilityVerdict& v) {
  Json j;
  j["verdict"] = to_string(v.status);
  j["attempts"] = v.attempts;
  if (v.classical_map) {
    j["degrading_map"] = to_json(ChannelDocument{*v.classical_map, "phi"});
    j["residual"] = v.residual;
  } else if (v.quantum_map) {
    j["degrading_map"] = to_json(ChannelDocument{*v.quantum_map, "Psi"});
    j["residual"] = v.residual;
  }
  if (v.witness) j["witness"] = to_json(*v.witness);
  if (v.frame) {
    j["separation_frame"] = Json{{"certificate_gap", v.frame->certificate_gap},
                                 {"lambda", v.frame->lambda},
                                 {"nu", v.frame->nu},
                                 {"operators", v.frame->y_ops.size()}};
  }
  if (!v.message.empty()) j["message"] = v.message;
  return j;
}

Json to_json(const ViolationReport& r) {
  Json j;
  j["trials"] = r.trials;
  j["violations"] = r.violations;
  j["worst_margin"] = std::isfinite(r.worst_margin) ? Json(r.worst_margin) : Json(nullptr);
  j["worst_trial"] = r.worst_trial;
  j["seed"] = r.seed;
  j["tolerance"] = kViolationTol;
  return j;
}

// ---------------------------------------------------------------------------
// Files

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(source + ": " + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(path + ": cannot write");
  out << text;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace chanorder

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

// JSON documents for channels, states, joints and ensembles, and the
// serialized forms of verdicts, witnesses and violation reports.
//
// Channel document:
//   {"kind": "classical", "d_in": |X|, "d_out": |Y|,
//    "matrix": [[w(0|0), w(0|1), ...], ...]}          rows indexed by y
//   {"kind": "quantum", "d_in": dA, "d_out": dB,
//    "matrix": [[[re, im], ...], ...]}                 trace-1 Choi, row major
// plus an optional "label". Other documents:
//   {"kind": "state", "dims": [dA, dB], "matrix": [[[re, im], ...], ...]}
//   {"kind": "joint", "matrix": [[p(u=0,y=0), ...], ...]}   rows indexed by u
//   {"kind": "ensemble", "prior": [...], "states": [matrix, ...]}

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include "chanorder/ordering.hpp"
#include "json.hpp"

namespace chanorder {

using Json = nlohmann::json;

/// Malformed or invalid input document.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ChannelDocument {
  std::variant<ClassicalChannel, QuantumChannel> channel;
  std::string label;

  bool is_classical() const { return channel.index() == 0; }
  const ClassicalChannel& classical() const { return std::get<0>(channel); }
  const QuantumChannel& quantum() const { return std::get<1>(channel); }
  /// The quantum channel, embedding a classical one.
  QuantumChannel as_quantum() const;
};

Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j, const char* what);
Json real_matrix_to_json(const RMatrix& m);
RMatrix real_matrix_from_json(const Json& j, const char* what);
Json vector_to_json(const CVector& v);
CVector vector_from_json(const Json& j, const char* what);

Json to_json(const ChannelDocument& d);
ChannelDocument channel_from_json(const Json& j);

struct StateDocument {
  CMatrix rho;
  DimPair dims;
};

Json to_json(const StateDocument& s);
StateDocument state_from_json(const Json& j);
Json to_json(const JointDistribution& j);
JointDistribution joint_from_json(const Json& j);
Json to_json(const CqEnsemble& e);
CqEnsemble ensemble_from_json(const Json& j);

Json to_json(const Witness& w);
Witness witness_from_json(const Json& j);
Json to_json(const DegradabilityVerdict& v);
Json to_json(const ViolationReport& r);

/// Parses text; throws InputError with the parser message on failure.
Json parse_json(const std::string& text, const std::string& source);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

/// 64-bit FNV-1a, printed as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

/// Serialization used for every document and report.
std::string dump(const Json& j);

}  // namespace chanorder

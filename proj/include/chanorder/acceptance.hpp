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

// The acceptance suite behind `selftest` and the acceptance test binary.
// Thresholds are pinned here; quick mode only shrinks the sample counts.

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace chanorder {

namespace acceptance {
inline constexpr double kResidualTol = 1e-7;
inline constexpr double kWitnessTol = 1e-7;
inline constexpr double kIdentityTol = 1e-6;
inline constexpr double kDualityTol = 1e-6;
inline constexpr double kDpiTol = 1e-7;
inline constexpr double kBscTol = 1e-6;
inline constexpr double kGapAgreeTol = 1e-6;
inline constexpr double kSoundnessBudgetSeconds = 60.0;
}  // namespace acceptance

struct AcceptanceOptions {
  bool quick = false;
  /// Fault injection: when positive, the conic solver stops at this
  /// accuracy for the whole run (see set_accuracy_fault). The criteria
  /// keep their pinned thresholds.
  double accuracy_fault = 0.0;
  std::uint64_t seed = 20170601;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

/// Runs criteria 1 to 9 in order, reporting each as it finishes.
std::vector<CriterionResult> run_acceptance(
    const AcceptanceOptions& opts,
    const std::function<void(const CriterionResult&)>& on_result = {});

/// "PASS [n] title: detail (t s)".
std::string format_result(const CriterionResult& r);

}  // namespace chanorder

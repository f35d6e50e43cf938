// Copyright 2026 The detlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DETLAB_EXPERIMENTS_HPP_
#define DETLAB_EXPERIMENTS_HPP_

#include <string>

#include "detlab/config.hpp"
#include "json.hpp"

namespace detlab {

inline constexpr const char* kToolVersion = "detlab 1.0.0";

/// Result of one experiment run: the JSON report (schema: tool_version,
/// config_hash, experiment, results[], assertions[]), an optional CSV table,
/// and the overall assertion outcome.
struct ExperimentOutcome {
  nlohmann::ordered_json report;
  std::string csv;
  bool all_passed = true;
};

/// Runs the named experiment suite. Deterministic: identical configs produce
/// byte-identical reports.
ExperimentOutcome run_experiment(const ExperimentConfig& cfg);

/// Serializes a report deterministically (2-space indent, '\n' terminated).
std::string report_to_string(const nlohmann::ordered_json& report);

}  // namespace detlab

#endif  // DETLAB_EXPERIMENTS_HPP_

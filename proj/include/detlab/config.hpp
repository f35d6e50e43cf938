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

#ifndef DETLAB_CONFIG_HPP_
#define DETLAB_CONFIG_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace detlab {

/// Parsed and validated experiment request. `params` holds the
/// experiment-specific block already checked against the catalog schema.
struct ExperimentConfig {
  std::string experiment;
  std::string law_name = "identity";
  std::vector<double> law_params;
  int level = 8;
  std::uint64_t seed = 1;
  int sphere_nodes = 0;
  nlohmann::json params = nlohmann::json::object();
  std::string out_path;
  std::string format = "json";
  std::string raw_text;  ///< original config text (hashed into reports)
};

/// Parses TOML text and validates every block; unknown experiments, unknown
/// fields, or wrongly typed values are rejected with field-path diagnostics
/// before any computation.
ExperimentConfig parse_config(const std::string& toml_text);

/// FNV-1a 64-bit hash, reported as 16 hex digits.
std::string config_hash(const std::string& text);

/// Machine-readable catalog: one entry per experiment with its parameter
/// schema and a short anchor describing which construction it exercises.
nlohmann::ordered_json experiment_catalog();

}  // namespace detlab

#endif  // DETLAB_CONFIG_HPP_

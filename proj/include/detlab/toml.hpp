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

#ifndef DETLAB_TOML_HPP_
#define DETLAB_TOML_HPP_

#include <string>

#include "json.hpp"

namespace detlab {

/// Parses the TOML subset used by experiment configs (dotted table headers,
/// scalars, homogeneous arrays, strings, booleans, comments) into a JSON
/// object. Throws ConfigError with a line-numbered message on bad input.
nlohmann::json toml_parse(const std::string& text);

}  // namespace detlab

#endif  // DETLAB_TOML_HPP_

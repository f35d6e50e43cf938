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

#include "detlab/config.hpp"

#include <cstdio>

#include "detlab/errors.hpp"
#include "detlab/toml.hpp"

namespace detlab {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

struct FieldSchema {
  const char* name;
  const char* type;  // "number", "integer", "string", "boolean", "array"
  const char* doc;
};

struct ExperimentSchema {
  const char* name;
  const char* anchor;
  std::vector<FieldSchema> fields;
};

const std::vector<ExperimentSchema>& schemas() {
  static const std::vector<ExperimentSchema> kSchemas = {
      {"identities",
       "null-Lagrangian and integration-by-parts identity battery",
       {{"n", "integer", "ambient dimension (2 or 3)"},
        {"fields", "integer", "number of random polynomial fields"},
        {"bumps", "integer", "number of random bump test fields"}}},
      {"radial",
       "constant-determinant radial family",
       {{"n", "integer", "ambient dimension"},
        {"lambda", "number", "target determinant"},
        {"c", "number", "profile constant"},
        {"branch", "integer", "+1 or -1 (even n)"},
        {"samples", "integer", "determinant sample count"}}},
      {"ex1",
       "piecewise radial very weak solution",
       {{"n", "integer", "ambient dimension"},
        {"a", "number", "inner interface radius"},
        {"b", "number", "outer interface radius"},
        {"lambda1", "number", "inner determinant"},
        {"lambda2", "number", "outer determinant"},
        {"bumps", "integer", "number of random bump test fields"}}},
      {"ex2",
       "disjoint-ball packing of rescaled solutions",
       {{"n", "integer", "ambient dimension"},
        {"balls", "integer", "number of packed balls"},
        {"bumps", "integer", "number of random bump test fields"}}},
      {"qm-sweep",
       "failure of quasimonotonicity at the identity",
       {{"n", "integer", "ambient dimension"},
        {"a", "number", "profile corner location"},
        {"epsilons", "array", "epsilon sweep values"},
        {"probe", "boolean", "cross-check the volume integral at the first negative epsilon"}}},
      {"mu-estimate",
       "linear-boundary functionals and the mu ratio",
       {{"n", "integer", "ambient dimension"},
        {"a", "number", "inner interface radius"},
        {"b", "number", "outer interface radius"},
        {"lambda1", "number", "inner determinant"},
        {"lambda2", "number", "outer determinant"}}},
      {"relation2d",
       "2-D gradient differential relation and the explicit non-Lipschitz pair",
       {{"lambda", "number", "outer determinant of the pair (> 1)"},
        {"samples", "integer", "Monte Carlo sample count"}}},
      {"energy",
       "local energy minimality under compact perturbations",
       {{"field", "string", "base field: identity | classification"},
        {"n", "integer", "ambient dimension"},
        {"lambda", "number", "classification determinant"},
        {"c", "number", "classification constant"},
        {"bumps", "integer", "number of random perturbations"}}},
      {"blowup",
       "Sobolev blow-up exponents at the singular interface",
       {{"n", "integer", "ambient dimension"},
        {"a", "number", "inner interface radius"},
        {"b", "number", "outer interface radius"},
        {"lambda1", "number", "inner determinant"},
        {"lambda2", "number", "outer determinant"}}},
  };
  return kSchemas;
}

const ExperimentSchema* find_schema(const std::string& name) {
  for (const auto& s : schemas())
    if (name == s.name) return &s;
  return nullptr;
}

[[noreturn]] void reject(const std::string& path, const std::string& msg) {
  throw ConfigError("config: " + path + ": " + msg);
}

bool type_matches(const json& v, const std::string& type) {
  if (type == "number") return v.is_number();
  if (type == "integer") return v.is_number_integer();
  if (type == "string") return v.is_string();
  if (type == "boolean") return v.is_boolean();
  if (type == "array") return v.is_array();
  return false;
}

void check_known_keys(const json& block, const std::string& path,
                      const std::vector<std::string>& known) {
  for (const auto& [key, value] : block.items()) {
    bool ok = false;
    for (const auto& k : known) ok = ok || k == key;
    if (!ok) reject(path + "." + key, "unknown field");
  }
}

}  // namespace

std::string config_hash(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ExperimentConfig parse_config(const std::string& toml_text) {
  const json root = toml_parse(toml_text);
  ExperimentConfig cfg;
  cfg.raw_text = toml_text;

  check_known_keys(root, "config", {"experiment", "law", "quad", "params", "output"});
  if (!root.contains("experiment") || !root["experiment"].is_string())
    reject("experiment", "required string field");
  cfg.experiment = root["experiment"].get<std::string>();
  const ExperimentSchema* schema = find_schema(cfg.experiment);
  if (schema == nullptr) reject("experiment", "unknown experiment '" + cfg.experiment + "'");

  if (root.contains("law")) {
    const json& law = root["law"];
    if (!law.is_object()) reject("law", "must be a table");
    check_known_keys(law, "law", {"name", "params"});
    if (law.contains("name")) {
      if (!law["name"].is_string()) reject("law.name", "must be a string");
      cfg.law_name = law["name"].get<std::string>();
    }
    if (law.contains("params")) {
      if (!law["params"].is_array()) reject("law.params", "must be an array of numbers");
      for (const auto& v : law["params"]) {
        if (!v.is_number()) reject("law.params", "must be an array of numbers");
        cfg.law_params.push_back(v.get<double>());
      }
    }
  }

  if (root.contains("quad")) {
    const json& quad = root["quad"];
    if (!quad.is_object()) reject("quad", "must be a table");
    check_known_keys(quad, "quad", {"level", "seed", "sphere_nodes"});
    if (quad.contains("level")) {
      if (!quad["level"].is_number_integer()) reject("quad.level", "must be an integer");
      cfg.level = quad["level"].get<int>();
      if (cfg.level < 2 || cfg.level > 12) reject("quad.level", "must lie in [2, 12]");
    }
    if (quad.contains("seed")) {
      if (!quad["seed"].is_number_integer()) reject("quad.seed", "must be an integer");
      cfg.seed = quad["seed"].get<std::uint64_t>();
    }
    if (quad.contains("sphere_nodes")) {
      if (!quad["sphere_nodes"].is_number_integer())
        reject("quad.sphere_nodes", "must be an integer");
      cfg.sphere_nodes = quad["sphere_nodes"].get<int>();
      if (cfg.sphere_nodes < 0) reject("quad.sphere_nodes", "must be >= 0");
    }
  }

  if (root.contains("params")) {
    const json& params = root["params"];
    if (!params.is_object()) reject("params", "must be a table");
    for (const auto& [key, value] : params.items()) {
      const FieldSchema* fs = nullptr;
      for (const auto& f : schema->fields)
        if (key == f.name) fs = &f;
      if (fs == nullptr) reject("params." + key, "unknown field for experiment " + cfg.experiment);
      if (!type_matches(value, fs->type))
        reject("params." + key, std::string("expected ") + fs->type);
    }
    cfg.params = params;
  }

  if (root.contains("output")) {
    const json& output = root["output"];
    if (!output.is_object()) reject("output", "must be a table");
    check_known_keys(output, "output", {"path", "format"});
    if (output.contains("path")) {
      if (!output["path"].is_string()) reject("output.path", "must be a string");
      cfg.out_path = output["path"].get<std::string>();
    }
    if (output.contains("format")) {
      if (!output["format"].is_string()) reject("output.format", "must be a string");
      cfg.format = output["format"].get<std::string>();
      if (cfg.format != "json" && cfg.format != "csv")
        reject("output.format", "must be 'json' or 'csv'");
    }
  }
  return cfg;
}

ordered_json experiment_catalog() {
  ordered_json catalog = ordered_json::array();
  for (const auto& s : schemas()) {
    ordered_json entry;
    entry["experiment"] = s.name;
    entry["anchor"] = s.anchor;
    ordered_json fields = ordered_json::array();
    for (const auto& f : s.fields) {
      ordered_json fe;
      fe["name"] = f.name;
      fe["type"] = f.type;
      fe["doc"] = f.doc;
      fields.push_back(fe);
    }
    entry["params"] = fields;
    catalog.push_back(entry);
  }
  return catalog;
}

}  // namespace detlab

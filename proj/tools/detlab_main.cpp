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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "detlab/config.hpp"
#include "detlab/errors.hpp"
#include "detlab/experiments.hpp"

namespace {

namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw detlab::ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Reports must never be observed half-written: write to a sibling temp file
// and rename into place.
void write_atomic(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw detlab::Error("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw detlab::Error("short write on '" + tmp.string() + "'");
  }
  fs::rename(tmp, path);
}

int run_command(const std::string& config_path, int level_override, long long seed_override,
                const std::string& out_dir) {
  detlab::ExperimentConfig cfg = detlab::parse_config(read_file(config_path));
  if (level_override > 0) cfg.level = level_override;
  if (seed_override >= 0) cfg.seed = static_cast<std::uint64_t>(seed_override);

  const detlab::ExperimentOutcome outcome = detlab::run_experiment(cfg);

  fs::path report_path;
  if (!cfg.out_path.empty())
    report_path = cfg.out_path;
  else
    report_path = cfg.experiment + "_report.json";
  if (!out_dir.empty()) report_path = fs::path(out_dir) / report_path.filename();

  write_atomic(report_path, detlab::report_to_string(outcome.report));
  std::cout << "report: " << report_path.string() << "\n";
  if (!outcome.csv.empty()) {
    fs::path csv_path = report_path;
    csv_path.replace_extension(".csv");
    write_atomic(csv_path, outcome.csv);
    std::cout << "table:  " << csv_path.string() << "\n";
  }

  int failed = 0;
  for (const auto& a : outcome.report["assertions"]) {
    if (!a["passed"].get<bool>()) {
      ++failed;
      std::cout << "FAILED  " << a["name"].get<std::string>() << " value "
                << a["value"].get<double>() << " tolerance " << a["tolerance"].get<double>()
                << "\n";
    }
  }
  std::cout << (failed == 0 ? "all assertions passed" : std::to_string(failed) + " assertion(s) failed")
            << "\n";
  return failed == 0 ? 0 : 2;
}

int list_command(bool as_json) {
  const nlohmann::ordered_json catalog = detlab::experiment_catalog();
  if (as_json) {
    std::cout << catalog.dump(2) << "\n";
    return 0;
  }
  std::printf("%-12s %-58s %s\n", "experiment", "anchor", "params");
  for (const auto& entry : catalog) {
    std::string params;
    for (const auto& f : entry["params"]) {
      if (!params.empty()) params += ", ";
      params += f["name"].get<std::string>();
    }
    std::printf("%-12s %-58s %s\n", entry["experiment"].get<std::string>().c_str(),
                entry["anchor"].get<std::string>().c_str(), params.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"detlab: numerical experiments around determinant-driven Euler-Lagrange systems"};
  app.require_subcommand(1);

  std::string config_path;
  int level_override = 0;
  long long seed_override = -1;
  std::string out_dir;
  CLI::App* run = app.add_subcommand("run", "run an experiment suite from a TOML config");
  run->add_option("--config", config_path, "path to the TOML config")->required();
  run->add_option("--level", level_override, "override quad.level");
  run->add_option("--seed", seed_override, "override quad.seed");
  run->add_option("--out", out_dir, "directory for report files");

  bool list_json = false;
  CLI::App* list = app.add_subcommand("list", "list experiments and their parameter schemas");
  list->add_flag("--json", list_json, "machine-readable catalog");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return run_command(config_path, level_override, seed_override, out_dir);
    return list_command(list_json);
  } catch (const detlab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

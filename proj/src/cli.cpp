// Copyright 2026 The kerramp Authors
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


#include "kerramp/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <CLI11.hpp>

#include "kerramp/commands.hpp"

namespace kerramp::cli {
namespace {

void build_app(CLI::App& app, RunConfig& cfg) {
  app.description(
      "Cross-Kerr phase amplification by squeeze-Kerr-squeeze circuits.\n"
      "Commands: table1, figure2, lossy, verify, amplify.");
  app.set_version_flag("--version", kVersion);
  app.set_config("--config", "", "flat key=value file; flags override it");
  app.allow_config_extras(CLI::config_extras_mode::error);

  app.add_option("command", cfg.command, "table1 | figure2 | lossy | verify | amplify")
      ->required()
      ->check(CLI::IsMember({"table1", "figure2", "lossy", "verify", "amplify"}));

  app.add_option("--delta", cfg.delta, "initial phase shift, rad");
  app.add_option("--delta-deg", cfg.delta_deg, "initial phase shift, deg");
  app.add_option("--theta1", cfg.theta1, "outer squeezing parameter");
  app.add_option("--theta2", cfg.theta2, "inner squeezing parameter");
  app.add_option("--db", cfg.db, "inner squeezing in dB (<= 0)");
  app.add_option("--db-rows", cfg.db_rows, "table1 rows in dB")->delimiter(',');
  app.add_option("--dphi-in-deg", cfg.dphi_in_deg, "figure2 curves, deg")->delimiter(',');
  app.add_option("--theta-max", cfg.theta_max, "figure2 grid end")->capture_default_str();
  app.add_option("--points", cfg.points, "figure2 points per curve")
      ->capture_default_str()
      ->check(CLI::Range(std::size_t{2}, std::size_t{1000000}));
  app.add_option("--dim", cfg.dim, "Fock truncation per bosonic mode")
      ->check(CLI::Range(std::size_t{2}, std::size_t{4096}));
  app.add_option("--block", cfg.block, "interior block: highest level checked");
  app.add_option("--max-dim", cfg.max_dim, "lossy: largest truncation tried")
      ->capture_default_str();
  app.add_option("--rs", cfg.rs, "lossy: squeezer reflectance(s)")->delimiter(',');
  app.add_option("--rk", cfg.rk, "lossy: Kerr reflectance(s)")->delimiter(',');
  app.add_option("--state", cfg.state, "plus-plus | werner | custom")
      ->capture_default_str()
      ->check(CLI::IsMember({"plus-plus", "werner", "custom"}));
  app.add_option("--p", cfg.p, "Werner mixing parameter")->capture_default_str();
  app.add_option("--amplitudes", cfg.amplitudes, "custom: four real amplitudes")
      ->delimiter(',');
  app.add_option("--tol", cfg.tol, "lossy: convergence tolerance")->capture_default_str();
  app.add_option("--rep", cfg.rep,
                 "verify: all | matrix-2x2 | derivation | fock-single | "
                 "fock-two-mode | two-mode-circuit | three-mode-circuit")
      ->capture_default_str();
  app.add_option("--samples", cfg.samples, "verify: random parameter points")
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "verify: random seed")->capture_default_str();
  app.add_option("--format", cfg.format, "csv | json")
      ->capture_default_str()
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", cfg.out, "output file (default stdout)");
  app.add_flag("--full-precision", cfg.full_precision,
               "CSV: shortest round-trip numbers everywhere");
}

std::filesystem::path output_path(const std::string& out) {
  std::filesystem::path path(out);
  if (path.is_relative()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') {
      path = std::filesystem::path(dir) / path;
    }
  }
  return path;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"kerramp", "kerramp"};
  build_app(app, cfg);

  // CLI11 expects the arguments in reverse order.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    const CommandResult result = run_command(cfg);
    const std::string text = render(cfg, result.table);
    if (cfg.out) {
      const auto path = output_path(*cfg.out);
      std::ofstream file(path, std::ios::binary);
      if (!file) throw UsageError("cannot open output file " + path.string());
      file << text;
      if (!file) throw UsageError("failed writing " + path.string());
    } else {
      out << text;
    }
    return result.exit_code;
  } catch (const UsageError& e) {
    err << "kerramp: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "kerramp: " << e.what() << "\n";
    return kUsageError;
  }
}

}  // namespace kerramp::cli

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

#ifndef KERRAMP_COMMANDS_HPP_
#define KERRAMP_COMMANDS_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "kerramp/loss.hpp"
#include "kerramp/su11.hpp"

namespace kerramp::cli {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kVerificationFailure = 2,
  kNonConvergence = 3,
};

/// Bad or contradictory user input.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double deg_to_rad(double deg);
double rad_to_deg(double rad);

/// Everything a command may read. Unset optionals mean "not supplied"; each
/// command applies its own defaults.
struct RunConfig {
  std::string command;
  std::optional<double> delta;      // rad
  std::optional<double> delta_deg;  // deg
  std::optional<double> theta1;
  std::optional<double> theta2;
  std::optional<double> db;
  std::vector<double> db_rows;      // table1 rows
  std::vector<double> dphi_in_deg;  // figure2 curves
  std::optional<std::size_t> dim;
  std::optional<std::size_t> block;
  std::vector<double> rs;
  std::vector<double> rk;
  std::string state = "plus-plus";  // plus-plus | werner | custom
  double p = 0.5;
  std::vector<double> amplitudes;   // custom: <00|, <01|, <10|, <11| (real)
  double tol = 1e-3;
  std::size_t max_dim = 160;
  std::size_t points = 200;
  double theta_max = 2.5;
  std::string rep = "all";
  std::size_t samples = 50;
  std::uint64_t seed = 20140301;
  std::string format = "csv";
  std::optional<std::string> out;
  bool full_precision = false;

  nlohmann::ordered_json echo() const;
};

/// Initial phase in rad. Throws UsageError unless exactly one of delta /
/// delta_deg is set (or neither, when `fallback` is given).
double resolve_delta(const RunConfig& cfg, std::optional<double> fallback = {});

struct Theta1Spec { double value; };
struct Theta2Spec { double value; };
/// Exactly one of theta1 / theta2 / db (db resolves to a theta2 magnitude).
using SqueezeSpec = std::variant<Theta1Spec, Theta2Spec>;
SqueezeSpec resolve_squeeze(const RunConfig& cfg,
                            std::optional<double> fallback_theta1 = {});

// ---------------------------------------------------------------------------
// Result tables

/// A table cell: empty, number, integer, flag or text. `decimals` >= 0 fixes
/// the CSV rendering of a number; otherwise the shortest round-trip form.
struct Cell {
  std::variant<std::monostate, double, long long, bool, std::string> value;
  int decimals = -1;
};

struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string format_number(double x, int decimals = -1);
std::string to_csv(const ResultTable& table, bool full_precision = false);
nlohmann::ordered_json table_json(const ResultTable& table,
                               const nlohmann::ordered_json& meta);

// ---------------------------------------------------------------------------
// Commands

struct Table1Row {
  double db = 0.0;
  double theta2 = 0.0;
  double kappa1 = 0.0;
  ThetaInversion col2;
  ThetaInversion col3;
  double delta2 = 0.0;
  double delta3 = 0.0;

  std::optional<double> kappa2() const;
  std::optional<double> kappa3() const;
};

inline const std::vector<double> kTable1Db{-3.0, -9.0, -10.0, -11.5, -13.0, -20.0};
inline constexpr double kTable1Delta2Deg = 9.0;
inline constexpr double kTable1Delta3Deg = 28.8;

std::vector<Table1Row> table1(const std::vector<double>& db_rows,
                              double delta2 = deg_to_rad(kTable1Delta2Deg),
                              double delta3 = deg_to_rad(kTable1Delta3Deg));
ResultTable table1_table(const std::vector<Table1Row>& rows);

struct Figure2Point {
  char panel = 'a';          // 'a': vs theta1, 'b': vs |theta2|
  double dphi_in = 0.0;      // rad
  double theta = 0.0;
  double dphi_amp = 0.0;     // rad
  bool saturated = false;
};

/// Panel (a) and (b) curves, one per initial phase, `points` samples of
/// [0, theta_max] each. Throws UsageError for an empty grid.
std::vector<Figure2Point> figure2(const std::vector<double>& dphi_in,
                                  double theta_max, std::size_t points);
ResultTable figure2_table(const std::vector<Figure2Point>& pts);

struct LossyPoint {
  double rs = 0.0;
  double rk = 0.0;
  double fidelity = 0.0;
  std::size_t dim = 0;
  double convergence_delta = 0.0;
  bool converged = false;
};

/// Input state on (a:2, b:D) for a `state` selector.
DensityMatrix make_input_state(const RunConfig& cfg, const ModeLayout& layout);

/// Fidelity for every (rs, rk) pair, evaluated concurrently, returned in grid
/// order (rs outer, rk inner).
std::vector<LossyPoint> lossy(const RunConfig& cfg);
ResultTable lossy_table(const std::vector<LossyPoint>& pts);

struct VerifyRow {
  std::string check;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Default truncations of the Fock checks. Squeezing spreads population far
/// above the checked block, so these sit where the block residual has
/// converged well below tolerance (see --dim to probe smaller spaces).
struct VerifyDims {
  std::size_t fock_single = 160;        // block 40
  std::size_t fock_two_mode = 28;       // block 5
  std::size_t two_mode_circuit = 80;    // block 15
  std::size_t three_mode_circuit = 28;  // block 5
};
inline constexpr VerifyDims kVerifyDims{};

std::vector<VerifyRow> verify(const RunConfig& cfg);
ResultTable verify_table(const std::vector<VerifyRow>& rows);

ResultTable amplify_table(const RunConfig& cfg);

/// Runs cfg.command and returns the table plus the exit code it implies.
struct CommandResult {
  ResultTable table;
  int exit_code = kSuccess;
};
CommandResult run_command(const RunConfig& cfg);

/// Renders a result in cfg.format with the config echoed in JSON output.
std::string render(const RunConfig& cfg, const ResultTable& table);

}  // namespace kerramp::cli

#endif  // KERRAMP_COMMANDS_HPP_

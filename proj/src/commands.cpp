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

#include "kerramp/commands.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <future>
#include <numbers>
#include <random>
#include <sstream>

#include "kerramp/circuits.hpp"

namespace kerramp::cli {
namespace {

using json = nlohmann::ordered_json;

Cell num(double x, int decimals = -1) { return Cell{x, decimals}; }
Cell integer(std::size_t x) { return Cell{static_cast<long long>(x), -1}; }
Cell flag(bool x) { return Cell{x, -1}; }
Cell text(std::string s) { return Cell{std::move(s), -1}; }
Cell empty() { return Cell{std::monostate{}, -1}; }

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

json RunConfig::echo() const {
  json j;
  j["command"] = command;
  j["delta"] = optional_json(delta);
  j["delta_deg"] = optional_json(delta_deg);
  j["theta1"] = optional_json(theta1);
  j["theta2"] = optional_json(theta2);
  j["db"] = optional_json(db);
  j["db_rows"] = db_rows;
  j["dphi_in_deg"] = dphi_in_deg;
  j["dim"] = optional_json(dim);
  j["block"] = optional_json(block);
  j["rs"] = rs;
  j["rk"] = rk;
  j["state"] = state;
  j["p"] = p;
  j["amplitudes"] = amplitudes;
  j["tol"] = tol;
  j["max_dim"] = max_dim;
  j["points"] = points;
  j["theta_max"] = theta_max;
  j["rep"] = rep;
  j["samples"] = samples;
  j["seed"] = seed;
  j["format"] = format;
  j["full_precision"] = full_precision;
  return j;
}

double resolve_delta(const RunConfig& cfg, std::optional<double> fallback) {
  if (cfg.delta && cfg.delta_deg) {
    throw UsageError("give the initial phase once: --delta (rad) or --delta-deg");
  }
  if (cfg.delta) return *cfg.delta;
  if (cfg.delta_deg) return deg_to_rad(*cfg.delta_deg);
  if (fallback) return *fallback;
  throw UsageError("initial phase required: --delta (rad) or --delta-deg");
}

SqueezeSpec resolve_squeeze(const RunConfig& cfg,
                            std::optional<double> fallback_theta1) {
  const int given = int(cfg.theta1.has_value()) + int(cfg.theta2.has_value()) +
                    int(cfg.db.has_value());
  if (given > 1) throw UsageError("give exactly one of --theta1, --theta2, --db");
  if (cfg.theta1) return Theta1Spec{*cfg.theta1};
  if (cfg.theta2) return Theta2Spec{*cfg.theta2};
  if (cfg.db) {
    try {
      return Theta2Spec{db_to_theta(*cfg.db)};
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  if (fallback_theta1) return Theta1Spec{*fallback_theta1};
  throw UsageError("squeezing required: one of --theta1, --theta2, --db");
}

// ---------------------------------------------------------------------------
// Formatting

std::string format_number(double x, int decimals) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  if (decimals >= 0) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
    return buf;
  }
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string to_csv(const ResultTable& table, bool full_precision) {
  std::ostringstream out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      const Cell& c = row[i];
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              out << format_number(v, full_precision ? -1 : c.decimals);
            } else if constexpr (std::is_same_v<T, long long>) {
              out << v;
            } else if constexpr (std::is_same_v<T, bool>) {
              out << (v ? "true" : "false");
            } else if constexpr (std::is_same_v<T, std::string>) {
              out << v;
            }
          },
          c.value);
    }
    out << '\n';
  }
  return out.str();
}

json table_json(const ResultTable& table, const json& meta) {
  json rows = json::array();
  for (const auto& row : table.rows) {
    json r = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
              r[table.columns[i]] = nullptr;
            } else {
              r[table.columns[i]] = v;
            }
          },
          row[i].value);
    }
    rows.push_back(std::move(r));
  }
  return json{{"meta", meta}, {"rows", std::move(rows)}};
}

// ---------------------------------------------------------------------------
// table1

std::optional<double> Table1Row::kappa2() const {
  if (col2.saturated) return std::nullopt;
  return col2.dphi_amp / delta2;
}

std::optional<double> Table1Row::kappa3() const {
  if (col3.saturated) return std::nullopt;
  return col3.dphi_amp / delta3;
}

std::vector<Table1Row> table1(const std::vector<double>& db_rows, double delta2,
                              double delta3) {
  std::vector<Table1Row> rows;
  for (double db : db_rows) {
    Table1Row r;
    r.db = db;
    r.theta2 = db_to_theta(db);
    // delta -> 0: tanh 2 theta1 -> tanh |theta2|.
    r.kappa1 = kappa_small_delta(r.theta2 / 2.0);
    r.delta2 = delta2;
    r.delta3 = delta3;
    r.col2 = invert_theta2(delta2, r.theta2);
    r.col3 = invert_theta2(delta3, r.theta2);
    rows.push_back(r);
  }
  return rows;
}

ResultTable table1_table(const std::vector<Table1Row>& rows) {
  ResultTable t{{"db", "theta2_rad", "kappa1", "kappa2", "dphi2_amp_deg", "kappa3",
                 "dphi3_amp_deg", "saturated2", "saturated3"},
                {}};
  for (const auto& r : rows) {
    auto kappa = [](std::optional<double> k) { return k ? num(*k, 2) : empty(); };
    t.rows.push_back({num(r.db, 1), num(r.theta2, 2), num(r.kappa1, 2),
                      kappa(r.kappa2()), num(rad_to_deg(r.col2.dphi_amp), 1),
                      kappa(r.kappa3()), num(rad_to_deg(r.col3.dphi_amp), 1),
                      flag(r.col2.saturated), flag(r.col3.saturated)});
  }
  return t;
}

// ---------------------------------------------------------------------------
// figure2

std::vector<Figure2Point> figure2(const std::vector<double>& dphi_in,
                                  double theta_max, std::size_t points) {
  if (dphi_in.empty() || points < 2 || !(theta_max > 0.0)) {
    throw UsageError("figure2 needs at least one curve and two grid points");
  }
  std::vector<Figure2Point> out;
  for (char panel : {'a', 'b'}) {
    for (double delta : dphi_in) {
      for (std::size_t i = 0; i < points; ++i) {
        const double theta = theta_max * double(i) / double(points - 1);
        Figure2Point pt{panel, delta, theta, 0.0, false};
        if (panel == 'a') {
          pt.dphi_amp = solve_params(delta, theta).dphi_amp;
        } else {
          const ThetaInversion inv = invert_theta2(delta, theta);
          pt.dphi_amp = inv.dphi_amp;
          pt.saturated = inv.saturated;
        }
        out.push_back(pt);
      }
    }
  }
  return out;
}

ResultTable figure2_table(const std::vector<Figure2Point>& pts) {
  ResultTable t{{"panel", "dphi_in_rad", "theta", "dphi_amp_deg", "kappa", "saturated"},
                {}};
  for (const auto& p : pts) {
    t.rows.push_back({text(std::string(1, p.panel)), num(p.dphi_in), num(p.theta),
                      num(rad_to_deg(p.dphi_amp)),
                      p.saturated ? empty() : num(p.dphi_amp / p.dphi_in),
                      flag(p.saturated)});
  }
  return t;
}

// ---------------------------------------------------------------------------
// lossy

DensityMatrix make_input_state(const RunConfig& cfg, const ModeLayout& layout) {
  if (cfg.state == "plus-plus") return make_plus_plus(layout);
  if (cfg.state == "werner") {
    try {
      return make_werner(layout, cfg.p);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  if (cfg.state == "custom") {
    if (cfg.amplitudes.size() != 4) {
      throw UsageError("custom state needs four amplitudes for |00>,|01>,|10>,|11>");
    }
    Vector psi = Vector::Zero(static_cast<Eigen::Index>(layout.total_dim()));
    for (std::size_t a : {0, 1}) {
      for (std::size_t b : {0, 1}) {
        const std::vector<std::size_t> levels{a, b};
        psi(static_cast<Eigen::Index>(layout.flat_index(levels))) =
            cfg.amplitudes[2 * a + b];
      }
    }
    if (psi.norm() == 0.0) throw UsageError("custom amplitudes are all zero");
    return DensityMatrix::pure(layout, psi);
  }
  throw UsageError("unknown state '" + cfg.state + "'");
}

std::vector<LossyPoint> lossy(const RunConfig& cfg) {
  const double delta = resolve_delta(cfg, 0.5);
  const SqueezeSpec squeeze = resolve_squeeze(cfg, 0.5);
  double theta1 = 0.0;
  if (const auto* t1 = std::get_if<Theta1Spec>(&squeeze)) {
    theta1 = t1->value;
  } else {
    const ThetaInversion inv = invert_theta2(delta, std::get<Theta2Spec>(squeeze).value);
    if (inv.saturated) throw UsageError("requested theta2 is beyond saturation");
    theta1 = *inv.theta1;
  }
  const CircuitParams params = solve_params(delta, theta1);
  const std::vector<double> rs = cfg.rs.empty() ? std::vector<double>{0.1} : cfg.rs;
  const std::vector<double> rk = cfg.rk.empty() ? std::vector<double>{0.1} : cfg.rk;

  LossyRunOptions options;
  options.start_dim = cfg.dim.value_or(20);
  options.max_dim = std::max(cfg.max_dim, options.start_dim);
  options.tolerance = cfg.tol;

  const ModeLayout layout({2, options.start_dim});
  const DensityMatrix rho_in = make_input_state(cfg, layout);

  std::vector<std::future<LossyPoint>> jobs;
  for (double s : rs) {
    for (double k : rk) {
      LossConfig loss;
      loss.r_s = s;
      loss.r_k = k;
      try {
        loss.validate();
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      jobs.push_back(std::async(std::launch::async, [=, &rho_in] {
        const LossyRunReport rep = run_lossy_amplifier(rho_in, params, loss, options);
        return LossyPoint{s, k, rep.fidelity, rep.dim, rep.convergence_delta,
                          rep.converged};
      }));
    }
  }
  std::vector<LossyPoint> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

ResultTable lossy_table(const std::vector<LossyPoint>& pts) {
  ResultTable t{{"rs", "rk", "fidelity", "dim", "convergence_delta", "converged"}, {}};
  for (const auto& p : pts) {
    t.rows.push_back({num(p.rs), num(p.rk), num(p.fidelity), integer(p.dim),
                      num(p.convergence_delta), flag(p.converged)});
  }
  return t;
}

// ---------------------------------------------------------------------------
// verify

std::vector<VerifyRow> verify(const RunConfig& cfg) {
  const std::string& rep = cfg.rep;
  static const std::vector<std::string> kReps{
      "all", "matrix-2x2", "derivation", "fock-single", "fock-two-mode",
      "two-mode-circuit", "three-mode-circuit"};
  if (std::find(kReps.begin(), kReps.end(), rep) == kReps.end()) {
    throw UsageError("unknown --rep '" + rep + "'");
  }
  const bool all = rep == "all";
  auto wants = [&](const char* name) { return all || rep == name; };
  // --dim / --block only apply when a single check is selected.
  auto dim_or = [&](std::size_t d) { return all ? d : cfg.dim.value_or(d); };
  auto block_or = [&](std::size_t b) {
    return InteriorBlock{all ? b : cfg.block.value_or(b)};
  };
  auto point = [&](double delta, double theta1) {
    const double d = resolve_delta(cfg, delta);
    double t1 = theta1;
    if (cfg.theta1 || cfg.theta2 || cfg.db) {
      const SqueezeSpec s = resolve_squeeze(cfg);
      if (const auto* a = std::get_if<Theta1Spec>(&s)) {
        t1 = a->value;
      } else {
        const ThetaInversion inv = invert_theta2(d, std::get<Theta2Spec>(s).value);
        if (inv.saturated) throw UsageError("requested theta2 is beyond saturation");
        t1 = *inv.theta1;
      }
    }
    return solve_params(d, t1);
  };

  std::vector<VerifyRow> rows;
  auto add = [&](std::string name, double residual, double tol) {
    rows.push_back({std::move(name), residual, tol, residual < tol});
  };

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> delta_dist(1e-6, std::numbers::pi / 2.0 - 0.1);
  std::uniform_real_distribution<double> theta_dist(0.0, 2.0);
  std::vector<CircuitParams> samples;
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    const double d = delta_dist(rng);
    samples.push_back(solve_params(d, theta_dist(rng)));
  }

  if (wants("matrix-2x2")) {
    const Su11Generators g = generators(ModeLayout({2}), Representation::kMatrix2x2);
    add("matrix-2x2/commutators", commutator_residuals(g, {0}).max(), 1e-12);
    double worst = 0.0;
    for (const auto& p : samples) worst = std::max(worst, verify_identity(p, g, {0}));
    add("matrix-2x2/identity", worst, 1e-12);
  }
  if (wants("derivation")) {
    double diag = 0.0, modulus = 0.0, phase = 0.0;
    for (const auto& p : samples) {
      const MatrixDerivation m = verify_matrix_derivation(p);
      diag = std::max(diag, m.diagonal_residual);
      modulus = std::max(modulus, std::abs(std::abs(m.y) - 1.0));
      phase = std::max(phase, std::abs(std::arg(m.y) - p.gamma));
    }
    add("derivation/diagonal", diag, 1e-12);
    add("derivation/unit-modulus", modulus, 1e-12);
    add("derivation/arg-equals-gamma", phase, 1e-12);
  }
  if (wants("fock-single")) {
    const ModeLayout layout({2, dim_or(kVerifyDims.fock_single)});
    const Su11Generators g = generators(layout, Representation::kFockSingle);
    const InteriorBlock block = block_or(40);
    add("fock-single/commutators", commutator_residuals(g, block).max(), 1e-10);
    add("fock-single/identity", verify_identity(point(0.3, 0.4), g, block), 1e-6);
  }
  if (wants("fock-two-mode")) {
    const std::size_t d = dim_or(kVerifyDims.fock_two_mode);
    const ModeLayout layout({2, d, d});
    const Su11Generators g = generators(layout, Representation::kFockTwoMode);
    const InteriorBlock block = block_or(5);
    add("fock-two-mode/commutators", commutator_residuals(g, block).max(), 1e-10);
    add("fock-two-mode/identity", verify_identity(point(0.5, 0.5), g, block), 1e-6);
  }
  if (wants("two-mode-circuit")) {
    const ModeLayout layout({2, dim_or(kVerifyDims.two_mode_circuit)});
    const AmplifierBuild b = build_two_mode_amplifier(point(0.5, 0.5), layout);
    add("two-mode-circuit/equivalence", block_residual(b.lhs, b.rhs, block_or(15)),
        1e-7);
  }
  if (wants("three-mode-circuit")) {
    const std::size_t d = dim_or(kVerifyDims.three_mode_circuit);
    const ModeLayout layout({2, d, d});
    const CircuitParams p = point(0.5, 0.5);
    const AmplifierBuild direct = build_three_mode_amplifier(p, layout, false);
    const AmplifierBuild swapped = build_three_mode_amplifier(p, layout, true);
    add("three-mode-circuit/equivalence",
        block_residual(direct.lhs, direct.rhs, block_or(5)), 1e-6);
    const Operator kk = kerr(layout, 0, 1, p.delta) * kerr(layout, 0, 2, p.delta);
    const Operator sw = swap(layout, 1, 2);
    const Operator decomposed = kerr(layout, 0, 1, p.delta) * sw *
                                kerr(layout, 0, 1, p.delta) * sw;
    add("three-mode-circuit/swap-decomposition", max_abs_diff(kk, decomposed), 1e-12);
    add("three-mode-circuit/swap-circuit",
        max_abs_diff(direct.lhs, swapped.lhs), 1e-12);
  }
  return rows;
}

ResultTable verify_table(const std::vector<VerifyRow>& rows) {
  ResultTable t{{"check", "max_residual", "tolerance", "pass"}, {}};
  for (const auto& r : rows) {
    t.rows.push_back({text(r.check), num(r.residual), num(r.tolerance), flag(r.pass)});
  }
  return t;
}

// ---------------------------------------------------------------------------
// amplify

ResultTable amplify_table(const RunConfig& cfg) {
  const double delta = resolve_delta(cfg);
  const SqueezeSpec squeeze = resolve_squeeze(cfg);
  ResultTable t{{"delta_rad", "theta1", "theta2", "gamma", "kappa", "kappa_per_medium",
                 "dphi_amp_rad", "dphi_amp_deg", "beta", "beta_prime_qubit",
                 "beta_prime_boson", "saturated"},
                {}};
  std::optional<CircuitParams> params;
  if (const auto* t1 = std::get_if<Theta1Spec>(&squeeze)) {
    params = solve_params(delta, t1->value);
  } else {
    const double theta2 = std::get<Theta2Spec>(squeeze).value;
    const ThetaInversion inv = invert_theta2(delta, theta2);
    if (inv.saturated) {
      t.rows.push_back({num(delta), empty(), num(-std::abs(theta2)), empty(), empty(),
                        empty(), num(std::numbers::pi), num(180.0), num(delta / 2.0),
                        empty(), empty(), flag(true)});
      return t;
    }
    params = solve_params(delta, *inv.theta1);
  }
  const CircuitParams& p = *params;
  const PhaseShiftCoefficients bp = p.beta_prime_two_mode();
  t.rows.push_back({num(p.delta), num(p.theta1), num(p.theta2), num(p.gamma),
                    num(p.kappa), num(p.kappa_per_medium()), num(p.dphi_amp),
                    num(rad_to_deg(p.dphi_amp)), num(p.beta_coeff), num(bp.qubit),
                    num(bp.bosonic), flag(false)});
  return t;
}

// ---------------------------------------------------------------------------

CommandResult run_command(const RunConfig& cfg) {
  try {
    if (cfg.command == "table1") {
      const auto& dbs = cfg.db_rows.empty() ? kTable1Db : cfg.db_rows;
      return {table1_table(table1(dbs)), kSuccess};
    }
    if (cfg.command == "figure2") {
      std::vector<double> deltas;
      if (cfg.dphi_in_deg.empty()) {
        deltas = {1e-7, deg_to_rad(kTable1Delta2Deg), deg_to_rad(kTable1Delta3Deg)};
      } else {
        for (double d : cfg.dphi_in_deg) deltas.push_back(deg_to_rad(d));
      }
      return {figure2_table(figure2(deltas, cfg.theta_max, cfg.points)), kSuccess};
    }
    if (cfg.command == "lossy") {
      const auto pts = lossy(cfg);
      const bool all_converged = std::all_of(pts.begin(), pts.end(),
                                             [](const auto& p) { return p.converged; });
      return {lossy_table(pts), all_converged ? kSuccess : kNonConvergence};
    }
    if (cfg.command == "verify") {
      const auto rows = verify(cfg);
      const bool ok = std::all_of(rows.begin(), rows.end(),
                                  [](const auto& r) { return r.pass; });
      return {verify_table(rows), ok ? kSuccess : kVerificationFailure};
    }
    if (cfg.command == "amplify") return {amplify_table(cfg), kSuccess};
  } catch (const std::domain_error& e) {
    throw UsageError(e.what());
  }
  throw UsageError("unknown command '" + cfg.command + "'");
}

std::string render(const RunConfig& cfg, const ResultTable& table) {
  if (cfg.format == "csv") return to_csv(table, cfg.full_precision);
  if (cfg.format == "json") {
    json meta;
    meta["tool"] = "kerramp";
    meta["version"] = kVersion;
    meta["config"] = cfg.echo();
    return table_json(table, meta).dump(2) + "\n";
  }
  throw UsageError("unknown --format '" + cfg.format + "' (csv or json)");
}

}  // namespace kerramp::cli

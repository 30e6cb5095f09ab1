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

#ifndef KERRAMP_LOSS_HPP_
#define KERRAMP_LOSS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "kerramp/fock.hpp"
#include "kerramp/su11.hpp"

namespace kerramp {

/// Fictitious beam splitters of the lossy two-mode amplifier. The primed ones
/// act on the qubit mode a, the rest on the bosonic mode b.
enum class Splitter { kB1, kB2, kB2Prime, kB3, kB4, kB4Prime, kB5 };

/// Reflectances of the loss model. r_s covers the splitters after each
/// squeezer (B1, B3, B5) and r_k those after each Kerr medium (B2, B2', B4,
/// B4'); any splitter may be overridden individually.
struct LossConfig {
  double r_s = 0.0;
  double r_k = 0.0;
  std::optional<double> r1, r2, r2_prime, r3, r4, r4_prime, r5;

  double reflectance(Splitter s) const;
  /// Throws std::invalid_argument if any reflectance is outside [0, 1].
  void validate() const;
};

/// theta = arccos(sqrt(1 - R)), so sin^2 theta = R.
double bs_angle(double reflectance);

/// exp[theta (x v^dagger - x^dagger v)] coupling signal mode x with ancilla v.
/// Throws std::invalid_argument for R outside [0, 1] or identical modes.
Operator beam_splitter(const ModeLayout& layout, std::size_t signal_mode,
                       std::size_t ancilla_mode, double reflectance);

/// Kraus operators E_k = <k|_v B |0>_v of a beam splitter fed with a vacuum
/// ancilla, k = 0 .. ancilla_dim - 1. The splitter conserves the total photon
/// number, so it is exponentiated one photon-number block at a time.
std::vector<Matrix> beam_splitter_kraus(std::size_t signal_dim,
                                        std::size_t ancilla_dim,
                                        double reflectance);

/// Loss on one mode: attach a vacuum ancilla with the mode's dimension, mix
/// on a beam splitter of reflectance R and discard the ancilla.
DensityMatrix apply_loss(const DensityMatrix& rho, std::size_t mode,
                         double reflectance);

/// The same channel evaluated literally on the enlarged space
/// rho (x) |0><0|. Cost grows with the square of the ancilla dimension; meant
/// for cross-checks on small truncations.
DensityMatrix apply_loss_dilated(const DensityMatrix& rho, std::size_t mode,
                                 double reflectance);

struct LossChannel {
  std::size_t mode;
  double reflectance;
};

/// Applies `unitary`, then each loss channel in order, each with its own
/// fresh vacuum ancilla.
DensityMatrix lossy_stage(const DensityMatrix& rho, const Operator& unitary,
                          std::span<const LossChannel> losses);

/// Order of the two loss channels that follow each Kerr medium. They act on
/// different modes and commute; the option exists to check that.
enum class KerrLossOrder { kQubitFirst, kBosonFirst };

struct LossyRunOptions {
  std::size_t start_dim = 20;
  std::size_t max_dim = 160;
  double tolerance = 1e-3;
  KerrLossOrder order = KerrLossOrder::kQubitFirst;
};

struct LossyOutcome {
  DensityMatrix rho_out;
  DensityMatrix rho_ideal;
  double fidelity;
};

struct LossyRunReport {
  DensityMatrix rho_out;
  DensityMatrix rho_ideal;
  double fidelity = 0.0;
  std::size_t dim = 0;              // truncation of mode b in the final run
  double convergence_delta = 0.0;   // |F(dim) - F(dim / 2)|
  bool converged = false;
  std::vector<std::pair<std::size_t, double>> history;  // (dim, fidelity)
};

/// One lossy run of the five-stage amplifier at the truncation of rho_in,
/// whose layout must be (a:2, b:D). rho_ideal is K(2 gamma) rho_in K^dagger.
LossyOutcome run_lossy_amplifier_at(const DensityMatrix& rho_in,
                                    const CircuitParams& params,
                                    const LossConfig& loss,
                                    KerrLossOrder order = KerrLossOrder::kQubitFirst);

/// Runs at D = max(start_dim, input D) and doubles D until the fidelity moves
/// by less than options.tolerance. Stops at max_dim with converged = false
/// and the last estimate.
LossyRunReport run_lossy_amplifier(const DensityMatrix& rho_in,
                                   const CircuitParams& params,
                                   const LossConfig& loss,
                                   const LossyRunOptions& options = {});

/// |++> on modes 0 and 1, vacuum elsewhere. Needs at least two modes.
DensityMatrix make_plus_plus(const ModeLayout& layout);

/// p |Phi+><Phi+| + (1 - p) I / 4 on the two-qubit block of modes 0 and 1.
/// Throws std::invalid_argument for p outside [0, 1].
DensityMatrix make_werner(const ModeLayout& layout, double p);

/// Formal damping time t = -ln(1 - R); +infinity for R = 1.
double master_equation_time(double reflectance);

}  // namespace kerramp

#endif  // KERRAMP_LOSS_HPP_

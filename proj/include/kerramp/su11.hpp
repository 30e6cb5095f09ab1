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

#ifndef KERRAMP_SU11_HPP_
#define KERRAMP_SU11_HPP_

#include <optional>

#include "kerramp/fock.hpp"

namespace kerramp {

/// Coefficients of a linear phase shifter exp(-i beta) with
/// beta = qubit * (n_a - 1/2) + bosonic * (sum of n over the bosonic modes).
struct PhaseShiftCoefficients {
  double qubit = 0.0;
  double bosonic = 0.0;
};

/// Angles of the squeeze-Kerr-squeeze amplifier and everything derived from
/// them. Build with solve_params(); the fields are consistent only then.
struct CircuitParams {
  double delta = 0.0;      // initial cross-Kerr phase (rad)
  double theta1 = 0.0;     // outer squeezer
  double theta2 = 0.0;     // inner squeezer
  double gamma = 0.0;      // half the amplified phase (rad)
  double kappa = 0.0;      // 2 gamma / delta
  double dphi_amp = 0.0;   // 2 gamma (rad)
  double beta_coeff = 0.0; // P = exp(-i beta_coeff n_b)

  double dphi_in() const { return delta; }
  /// kappa / 2, counting both Kerr media. Informational only.
  double kappa_per_medium() const { return kappa / 2.0; }
  /// P' for the single-mode-squeezing circuit.
  PhaseShiftCoefficients beta_prime_two_mode() const {
    return {gamma - delta, -gamma};
  }
  /// P' for the two-mode-squeezing (three-mode) circuit.
  PhaseShiftCoefficients beta_prime_three_mode() const {
    return {2.0 * (gamma - delta), -gamma};
  }
};

/// Solves theta2 = artanh(-cos d tanh 2t1), gamma = atan(tan d cosh 2t1).
/// Throws std::domain_error unless delta lies in (0, pi/2), and
/// std::invalid_argument for a non-finite theta1.
CircuitParams solve_params(double delta, double theta1);

/// Result of inverting the theta2 relation for theta1.
struct ThetaInversion {
  bool saturated = false;
  std::optional<double> theta1;  // empty when saturated
  double dphi_amp = 0.0;         // pi when saturated
};

/// tanh 2 theta1 = |tanh theta2| / cos delta; saturated once the right-hand
/// side reaches 1.
ThetaInversion invert_theta2(double delta, double theta2);

/// Small-delta amplification factor 2 cosh 2 theta1.
double kappa_small_delta(double theta1);

/// Quadrature-variance dB to squeeze parameter: |dB| ln 10 / 20.
/// Throws std::invalid_argument for db > 0.
double db_to_theta(double db);

enum class Representation { kFockSingle, kFockTwoMode, kMatrix2x2 };

struct Su11Generators {
  Operator gamma1;
  Operator gamma2;
  Operator gamma3;
  Representation representation;
};

/// Builds the generator triple. Fock representations expect the layout
/// (a:2, b:D) or (a:2, b:D, c:D'); the 2x2 matrices ignore the layout.
/// Throws std::invalid_argument for an incompatible layout.
Su11Generators generators(const ModeLayout& layout, Representation rep);

struct CommutatorResiduals {
  double g1g2 = 0.0;  // [G1, G2] + 2i G3
  double g2g3 = 0.0;  // [G2, G3] - 2i G1
  double g3g1 = 0.0;  // [G3, G1] - 2i G2
  double max() const;
};

/// Commutation-rule residuals, on the full space for the 2x2 representation
/// and on `block` otherwise.
CommutatorResiduals commutator_residuals(const Su11Generators& gens,
                                         const InteriorBlock& block);

/// || e^{i t1 G2} e^{i d/2 G3} e^{i t2 G2} e^{i d/2 G3} e^{i t1 G2}
///    - e^{i gamma G3} ||_max on `block` (ignored for the 2x2 representation).
double verify_identity(const CircuitParams& params, const Su11Generators& gens,
                       const InteriorBlock& block);

/// The explicit 2x2 product V D w[[1,x],[x,1]] D V = diag(y, y*).
struct MatrixDerivation {
  double x = 0.0;
  double w = 0.0;
  Complex y;
  Eigen::Matrix2cd product;
  double diagonal_residual = 0.0;  // || product - diag(y, y*) ||_max
};

MatrixDerivation verify_matrix_derivation(const CircuitParams& params);

}  // namespace kerramp

#endif  // KERRAMP_SU11_HPP_

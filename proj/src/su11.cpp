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

#include "kerramp/su11.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace kerramp {
namespace {

constexpr Complex kI(0.0, 1.0);

void check_delta(double delta) {
  if (!(delta > 0.0 && delta < std::numbers::pi / 2.0)) {
    throw std::domain_error("delta must lie in (0, pi/2), got " +
                            std::to_string(delta));
  }
}

// exp(A) for a traceless 2x2 matrix: A^2 = -det(A) I.
Eigen::Matrix2cd exp_traceless_2x2(const Eigen::Matrix2cd& a) {
  const Complex s = std::sqrt(-a.determinant());
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  if (std::abs(s) < 1e-300) return id + a;
  return std::cosh(s) * id + (std::sinh(s) / s) * a;
}

Operator exp_i(double angle, const Operator& generator, Representation rep) {
  if (rep == Representation::kMatrix2x2) {
    const Eigen::Matrix2cd a = kI * angle * Eigen::Matrix2cd(generator.matrix());
    return Operator(generator.layout(), Matrix(exp_traceless_2x2(a)));
  }
  return expm((kI * angle) * generator);
}

}  // namespace

CircuitParams solve_params(double delta, double theta1) {
  check_delta(delta);
  if (!std::isfinite(theta1)) {
    throw std::invalid_argument("theta1 must be finite");
  }
  CircuitParams p;
  p.delta = delta;
  p.theta1 = theta1;
  p.theta2 = std::atanh(-std::cos(delta) * std::tanh(2.0 * theta1));
  p.gamma = std::atan(std::tan(delta) * std::cosh(2.0 * theta1));
  p.dphi_amp = 2.0 * p.gamma;
  p.kappa = p.dphi_amp / delta;
  p.beta_coeff = delta / 2.0;
  return p;
}

ThetaInversion invert_theta2(double delta, double theta2) {
  check_delta(delta);
  const double ratio = std::tanh(std::abs(theta2)) / std::cos(delta);
  ThetaInversion out;
  if (ratio >= 1.0) {
    out.saturated = true;
    out.dphi_amp = std::numbers::pi;
    return out;
  }
  out.theta1 = 0.5 * std::atanh(ratio);
  out.dphi_amp = solve_params(delta, *out.theta1).dphi_amp;
  return out;
}

double kappa_small_delta(double theta1) { return 2.0 * std::cosh(2.0 * theta1); }

double db_to_theta(double db) {
  if (db > 0.0) {
    throw std::invalid_argument("squeezing in dB must be <= 0");
  }
  return std::abs(db) * std::log(10.0) / 20.0;
}

Su11Generators generators(const ModeLayout& layout, Representation rep) {
  switch (rep) {
    case Representation::kMatrix2x2: {
      const ModeLayout qubit({2});
      Matrix g1(2, 2), g2(2, 2), g3(2, 2);
      g1 << 0.0, 1.0, -1.0, 0.0;
      g2 << 0.0, -kI, -kI, 0.0;
      g3 << 1.0, 0.0, 0.0, -1.0;
      return {Operator(qubit, g1), Operator(qubit, g2), Operator(qubit, g3), rep};
    }
    case Representation::kFockSingle: {
      if (layout.num_modes() != 2 || layout.dim(0) != 2) {
        throw std::invalid_argument("single-mode generators need layout (2, D)");
      }
      const Operator b = annihilation(layout, 1);
      const Operator bd = creation(layout, 1);
      const Operator z = parity_z(layout, 0);
      const Operator bb = b * b;
      const Operator bdbd = bd * bd;
      const Operator id = Operator::identity(layout);
      const Operator g1 = Complex(0.5) * ((bb + bdbd) * z);
      const Operator g2 = (0.5 * kI) * (bb - bdbd);
      const Operator g3 = Complex(0.5) * ((Complex(2.0) * number_op(layout, 1) + id) * z);
      return {Operator(layout, g1.matrix(), {true, false, false}),
              Operator(layout, g2.matrix(), {true, false, false}),
              Operator(layout, g3.matrix(), {true, false, true}), rep};
    }
    case Representation::kFockTwoMode: {
      if (layout.num_modes() != 3 || layout.dim(0) != 2) {
        throw std::invalid_argument("two-mode generators need layout (2, D, D')");
      }
      const Operator bc = annihilation(layout, 1) * annihilation(layout, 2);
      const Operator bdcd = bc.adjoint();
      const Operator z = parity_z(layout, 0);
      const Operator id = Operator::identity(layout);
      const Operator g1 = (bc + bdcd) * z;
      const Operator g2 = kI * (bc - bdcd);
      const Operator g3 = (number_op(layout, 1) + number_op(layout, 2) + id) * z;
      return {Operator(layout, g1.matrix(), {true, false, false}),
              Operator(layout, g2.matrix(), {true, false, false}),
              Operator(layout, g3.matrix(), {true, false, true}), rep};
    }
  }
  throw std::invalid_argument("unknown representation");
}

double CommutatorResiduals::max() const { return std::max({g1g2, g2g3, g3g1}); }

CommutatorResiduals commutator_residuals(const Su11Generators& gens,
                                         const InteriorBlock& block) {
  auto residual = [&](const Operator& lhs, const Operator& rhs) {
    if (gens.representation == Representation::kMatrix2x2) {
      return max_abs_diff(lhs, rhs);
    }
    return block_residual(lhs, rhs, block);
  };
  const Complex two_i(0.0, 2.0);
  CommutatorResiduals r;
  r.g1g2 = residual(commutator(gens.gamma1, gens.gamma2), -two_i * gens.gamma3);
  r.g2g3 = residual(commutator(gens.gamma2, gens.gamma3), two_i * gens.gamma1);
  r.g3g1 = residual(commutator(gens.gamma3, gens.gamma1), two_i * gens.gamma2);
  return r;
}

double verify_identity(const CircuitParams& params, const Su11Generators& gens,
                       const InteriorBlock& block) {
  const Representation rep = gens.representation;
  const Operator outer = exp_i(params.theta1, gens.gamma2, rep);
  const Operator inner = exp_i(params.theta2, gens.gamma2, rep);
  const Operator kerr = exp_i(params.delta / 2.0, gens.gamma3, rep);
  const Operator lhs = outer * kerr * inner * kerr * outer;
  const Operator rhs = exp_i(params.gamma, gens.gamma3, rep);
  if (rep == Representation::kMatrix2x2) return max_abs_diff(lhs, rhs);
  return block_residual(lhs, rhs, block);
}

MatrixDerivation verify_matrix_derivation(const CircuitParams& params) {
  const double t1 = params.theta1;
  const double delta = params.delta;
  MatrixDerivation out;
  out.x = -std::cos(delta) * std::tanh(2.0 * t1);
  out.w = 1.0 / std::sqrt(1.0 - out.x * out.x);
  const double c2 = std::cosh(2.0 * t1);
  out.y = out.w / c2 * Complex(std::cos(delta), c2 * std::sin(delta));

  Eigen::Matrix2cd v;
  v << std::cosh(t1), std::sinh(t1), std::sinh(t1), std::cosh(t1);
  Eigen::Matrix2cd phase = Eigen::Matrix2cd::Zero();
  phase(0, 0) = std::exp(kI * (delta / 2.0));
  phase(1, 1) = std::exp(-kI * (delta / 2.0));
  Eigen::Matrix2cd middle;
  middle << 1.0, out.x, out.x, 1.0;
  middle *= out.w;
  out.product = v * phase * middle * phase * v;

  Eigen::Matrix2cd expected = Eigen::Matrix2cd::Zero();
  expected(0, 0) = out.y;
  expected(1, 1) = std::conj(out.y);
  out.diagonal_residual = (out.product - expected).cwiseAbs().maxCoeff();
  return out;
}

}  // namespace kerramp

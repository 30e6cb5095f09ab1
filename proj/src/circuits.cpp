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

#include "kerramp/circuits.hpp"

#include <cmath>
#include <stdexcept>

namespace kerramp {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Vector levels_of(const ModeLayout& layout, std::size_t mode) {
  Vector n(static_cast<Eigen::Index>(layout.total_dim()));
  for (std::size_t i = 0; i < layout.total_dim(); ++i) {
    n(static_cast<Eigen::Index>(i)) = static_cast<double>(layout.level(i, mode));
  }
  return n;
}

}  // namespace

Operator squeeze_single(const ModeLayout& layout, std::size_t mode, double theta) {
  const Operator b = annihilation(layout, mode);
  const Operator bb = b * b;
  return expm(Complex(-theta / 2.0) * (bb - bb.adjoint()));
}

Operator squeeze_two_mode(const ModeLayout& layout, std::size_t mode_b,
                          std::size_t mode_c, double theta) {
  if (mode_b == mode_c) {
    throw std::invalid_argument("squeeze_two_mode: modes must differ");
  }
  const Operator bc = annihilation(layout, mode_b) * annihilation(layout, mode_c);
  return expm(Complex(-theta) * (bc - bc.adjoint()));
}

Operator kerr(const ModeLayout& layout, std::size_t mode_a, std::size_t mode_b,
              double dphi) {
  const Vector na = levels_of(layout, mode_a);
  const Vector nb = levels_of(layout, mode_b);
  Vector phases(na.size());
  for (Eigen::Index i = 0; i < na.size(); ++i) {
    phases(i) = std::exp(Complex(0.0, dphi * (na(i) * nb(i)).real()));
  }
  return Operator::diagonal(layout, phases, {false, true, true});
}

Operator phase_shift(const ModeLayout& layout, const PhaseTerms& terms) {
  Eigen::VectorXd beta =
      Eigen::VectorXd::Constant(static_cast<Eigen::Index>(layout.total_dim()),
                                terms.constant);
  for (const auto& [mode, coeff] : terms.number_terms) {
    beta += coeff * levels_of(layout, mode).real();
  }
  Vector phases(beta.size());
  for (Eigen::Index i = 0; i < beta.size(); ++i) {
    phases(i) = std::exp(Complex(0.0, -beta(i)));
  }
  return Operator::diagonal(layout, phases, {false, true, true});
}

PhaseTerms phase_terms(const PhaseShiftCoefficients& coeffs, std::size_t qubit_mode,
                       const std::vector<std::size_t>& bosonic_modes) {
  PhaseTerms terms;
  terms.number_terms.emplace_back(qubit_mode, coeffs.qubit);
  terms.constant = -coeffs.qubit / 2.0;
  for (std::size_t m : bosonic_modes) terms.number_terms.emplace_back(m, coeffs.bosonic);
  return terms;
}

Operator swap(const ModeLayout& layout, std::size_t mode_b, std::size_t mode_c) {
  if (layout.dim(mode_b) != layout.dim(mode_c)) {
    throw std::invalid_argument("swap: modes have different dimensions");
  }
  const auto n = static_cast<Eigen::Index>(layout.total_dim());
  Matrix p = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < layout.total_dim(); ++i) {
    auto levels = layout.multi_index(i);
    std::swap(levels[mode_b], levels[mode_c]);
    p(static_cast<Eigen::Index>(layout.flat_index(levels)),
      static_cast<Eigen::Index>(i)) = 1.0;
  }
  return Operator(layout, std::move(p), {true, true, mode_b == mode_c});
}

Operator gate_operator(const ModeLayout& layout, const Gate& g) {
  return std::visit(
      Overloaded{
          [&](const gate::SqueezeSingle& s) { return squeeze_single(layout, s.mode, s.theta); },
          [&](const gate::SqueezeTwoMode& s) {
            return squeeze_two_mode(layout, s.mode_b, s.mode_c, s.theta);
          },
          [&](const gate::Kerr& k) { return kerr(layout, k.mode_a, k.mode_b, k.dphi); },
          [&](const gate::PhaseShift& p) { return phase_shift(layout, p.terms); },
          [&](const gate::Swap& s) { return swap(layout, s.mode_b, s.mode_c); },
      },
      g);
}

std::string gate_name(const Gate& g) {
  return std::visit(Overloaded{
                        [](const gate::SqueezeSingle&) { return std::string("S"); },
                        [](const gate::SqueezeTwoMode&) { return std::string("S2"); },
                        [](const gate::Kerr&) { return std::string("K"); },
                        [](const gate::PhaseShift&) { return std::string("P"); },
                        [](const gate::Swap&) { return std::string("SWAP"); },
                    },
                    g);
}

void validate(const CircuitPlan& plan) {
  const ModeLayout& layout = plan.layout;
  for (const Gate& g : plan.gates) {
    std::visit(Overloaded{
                   [&](const gate::SqueezeSingle& s) { layout.check_mode(s.mode); },
                   [&](const gate::SqueezeTwoMode& s) {
                     layout.check_mode(s.mode_b);
                     layout.check_mode(s.mode_c);
                   },
                   [&](const gate::Kerr& k) {
                     layout.check_mode(k.mode_a);
                     layout.check_mode(k.mode_b);
                   },
                   [&](const gate::PhaseShift& p) {
                     for (const auto& term : p.terms.number_terms) {
                       layout.check_mode(term.first);
                     }
                   },
                   [&](const gate::Swap& s) {
                     layout.check_mode(s.mode_b);
                     layout.check_mode(s.mode_c);
                   },
               },
               g);
  }
}

Operator compose(const CircuitPlan& plan) {
  validate(plan);
  Operator u = Operator::identity(plan.layout);
  for (const Gate& g : plan.gates) u = gate_operator(plan.layout, g) * u;
  return u;
}

AmplifierBuild build_two_mode_amplifier(const CircuitParams& params,
                                        const ModeLayout& layout) {
  if (layout.num_modes() != 2 || layout.dim(0) != 2) {
    throw std::invalid_argument("two-mode amplifier needs layout (a:2, b:D)");
  }
  constexpr std::size_t a = 0, b = 1;
  const gate::PhaseShift p{PhaseTerms{{{b, params.beta_coeff}}, 0.0}};
  const gate::PhaseShift p_prime{phase_terms(params.beta_prime_two_mode(), a, {b})};

  CircuitPlan plan{layout,
                   {gate::SqueezeSingle{b, params.theta1},
                    gate::Kerr{a, b, params.delta},
                    p,
                    gate::SqueezeSingle{b, params.theta2},
                    p,
                    gate::Kerr{a, b, params.delta},
                    gate::SqueezeSingle{b, params.theta1},
                    p_prime},
                   params};
  Operator lhs = compose(plan);
  Operator rhs = kerr(layout, a, b, params.dphi_amp);
  return {std::move(plan), std::move(lhs), std::move(rhs)};
}

AmplifierBuild build_three_mode_amplifier(const CircuitParams& params,
                                          const ModeLayout& layout,
                                          bool use_swap_decomposition) {
  if (layout.num_modes() != 3 || layout.dim(0) != 2 ||
      layout.dim(1) != layout.dim(2)) {
    throw std::invalid_argument("three-mode amplifier needs layout (a:2, b:D, c:D)");
  }
  constexpr std::size_t a = 0, b = 1, c = 2;
  const gate::PhaseShift p{
      PhaseTerms{{{b, params.beta_coeff}, {c, params.beta_coeff}}, 0.0}};
  const gate::PhaseShift p_prime{
      phase_terms(params.beta_prime_three_mode(), a, {b, c})};

  std::vector<Gate> kerr_pair;
  if (use_swap_decomposition) {
    // K_ab SWAP K_ab SWAP, rightmost first.
    kerr_pair = {gate::Swap{b, c}, gate::Kerr{a, b, params.delta}, gate::Swap{b, c},
                 gate::Kerr{a, b, params.delta}};
  } else {
    kerr_pair = {gate::Kerr{a, c, params.delta}, gate::Kerr{a, b, params.delta}};
  }

  std::vector<Gate> gates;
  gates.push_back(gate::SqueezeTwoMode{b, c, params.theta1});
  gates.insert(gates.end(), kerr_pair.begin(), kerr_pair.end());
  gates.push_back(p);
  gates.push_back(gate::SqueezeTwoMode{b, c, params.theta2});
  gates.push_back(p);
  gates.insert(gates.end(), kerr_pair.begin(), kerr_pair.end());
  gates.push_back(gate::SqueezeTwoMode{b, c, params.theta1});
  gates.push_back(p_prime);

  CircuitPlan plan{layout, std::move(gates), params};
  Operator lhs = compose(plan);
  Operator rhs = kerr(layout, a, b, params.dphi_amp) * kerr(layout, a, c, params.dphi_amp);
  return {std::move(plan), std::move(lhs), std::move(rhs)};
}

double conditional_phase(const Operator& u, std::size_t n_b) {
  const ModeLayout& layout = u.layout();
  if (layout.num_modes() < 2 || layout.dim(0) != 2 || n_b >= layout.dim(1)) {
    throw std::invalid_argument("conditional_phase: probe outside layout");
  }
  auto diag = [&](std::size_t na, std::size_t nb) {
    std::vector<std::size_t> levels(layout.num_modes(), 0);
    levels[0] = na;
    levels[1] = nb;
    const std::size_t i = layout.flat_index(levels);
    return u(i, i);
  };
  const Complex z = diag(1, n_b) * std::conj(diag(0, n_b)) * std::conj(diag(1, 0)) *
                    diag(0, 0);
  return std::arg(z);
}

}  // namespace kerramp

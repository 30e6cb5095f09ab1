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

#ifndef KERRAMP_CIRCUITS_HPP_
#define KERRAMP_CIRCUITS_HPP_

#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "kerramp/fock.hpp"
#include "kerramp/su11.hpp"

namespace kerramp {

/// exp(-(theta/2)(b b - b^dagger b^dagger)) on `mode`.
Operator squeeze_single(const ModeLayout& layout, std::size_t mode, double theta);

/// exp(-theta(b c - b^dagger c^dagger)). Throws std::invalid_argument when
/// mode_b == mode_c.
Operator squeeze_two_mode(const ModeLayout& layout, std::size_t mode_b,
                          std::size_t mode_c, double theta);

/// exp(i dphi n_a n_b).
Operator kerr(const ModeLayout& layout, std::size_t mode_a, std::size_t mode_b,
              double dphi);

/// exp(-i (sum_k c_k n_{m_k} + constant)).
struct PhaseTerms {
  std::vector<std::pair<std::size_t, double>> number_terms;  // (mode, c_k)
  double constant = 0.0;
};
Operator phase_shift(const ModeLayout& layout, const PhaseTerms& terms);

/// exp(-i beta') for the given P' coefficients: qubit * (n_a - 1/2) +
/// bosonic * (n of every mode listed in bosonic_modes).
PhaseTerms phase_terms(const PhaseShiftCoefficients& coeffs, std::size_t qubit_mode,
                       const std::vector<std::size_t>& bosonic_modes);

/// Permutation exchanging two modes of equal dimension. Throws
/// std::invalid_argument when the dimensions differ.
Operator swap(const ModeLayout& layout, std::size_t mode_b, std::size_t mode_c);

namespace gate {
struct SqueezeSingle { std::size_t mode; double theta; };
struct SqueezeTwoMode { std::size_t mode_b; std::size_t mode_c; double theta; };
struct Kerr { std::size_t mode_a; std::size_t mode_b; double dphi; };
struct PhaseShift { PhaseTerms terms; };
struct Swap { std::size_t mode_b; std::size_t mode_c; };
}  // namespace gate

using Gate = std::variant<gate::SqueezeSingle, gate::SqueezeTwoMode, gate::Kerr,
                          gate::PhaseShift, gate::Swap>;

Operator gate_operator(const ModeLayout& layout, const Gate& g);
std::string gate_name(const Gate& g);

/// Gates are stored in the order they act on a state: gates.front() acts
/// first, so the circuit unitary is gates.back() * ... * gates.front().
struct CircuitPlan {
  ModeLayout layout;
  std::vector<Gate> gates;
  CircuitParams params;
};

/// Throws std::invalid_argument if a gate references a mode outside the layout.
void validate(const CircuitPlan& plan);
Operator compose(const CircuitPlan& plan);

struct AmplifierBuild {
  CircuitPlan plan;
  Operator lhs;  // composed gate sequence
  Operator rhs;  // amplified Kerr target
};

/// K(2 gamma) = P' S1 K(delta) P S2 P K(delta) S1 on the layout (a:2, b:D).
AmplifierBuild build_two_mode_amplifier(const CircuitParams& params,
                                        const ModeLayout& layout);

/// Same structure on (a:2, b:D, c:D) with S = S_bc, K = K_ab K_ac,
/// P = P_b P_c. With use_swap_decomposition each K_ac is replaced by
/// SWAP_bc K_ab SWAP_bc.
AmplifierBuild build_three_mode_amplifier(const CircuitParams& params,
                                          const ModeLayout& layout,
                                          bool use_swap_decomposition);

/// arg[<1,n|U|1,n> <0,n|U|0,n>* <1,0|U|1,0>* <0,0|U|0,0>] for a layout whose
/// mode 0 is the qubit and mode 1 the probed bosonic mode (all other modes in
/// vacuum). Wrapped to (-pi, pi]; equals n * dphi for a cross-Kerr exp(i dphi
/// n_a n_b) up to that wrapping.
double conditional_phase(const Operator& u, std::size_t n_b);

}  // namespace kerramp

#endif  // KERRAMP_CIRCUITS_HPP_

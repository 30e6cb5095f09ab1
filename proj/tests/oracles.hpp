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


// Reference implementations used only by the tests. They share no code with
// the library beyond the Eigen types.

#ifndef KERRAMP_TESTS_ORACLES_HPP_
#define KERRAMP_TESTS_ORACLES_HPP_

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Amplitude damping on one mode of a row-major multi-mode space, with
/// A_k = sum_n sqrt(C(n,k)) (1-R)^((n-k)/2) R^(k/2) |n-k><n|.
Matrix amplitude_damping(const Matrix& rho, const std::vector<std::size_t>& dims,
                         std::size_t mode, double reflectance);

/// Forward Euler for d rho/dt = b rho b^+ - (b^+ b rho + rho b^+ b) / 2 on a
/// single truncated mode.
Matrix lindblad_euler(const Matrix& rho, double t, double dt);

/// theta1 with theta2(theta1) = -|theta2| by bisection on
/// atanh(-cos d tanh 2 t1).
double bisect_theta1(double delta, double theta2_abs, double tol = 1e-13);

/// <n| exp(-(r/2)(bb - b+b+)) |0> from the closed-form series.
std::vector<double> squeezed_vacuum(double r, std::size_t dim);

/// Haar-ish random mixed state: G G^+ / tr, G complex Gaussian with `rank`
/// columns.
Matrix random_density(std::size_t dim, std::size_t rank, std::mt19937_64& rng);

/// Fidelity from the spectrum of rho1 rho2: (sum sqrt(lambda_i))^2, skipping
/// eigenvalues below 1e-14.
double fidelity_by_product(const Matrix& rho1, const Matrix& rho2);

/// Reduced state of a two-mode (d0, d1) matrix on mode `keep`.
Matrix reduce_two_mode(const Matrix& rho, std::size_t d0, std::size_t d1,
                       std::size_t keep);

}  // namespace oracle

#endif  // KERRAMP_TESTS_ORACLES_HPP_

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

#include "kerramp/loss.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "kerramp/circuits.hpp"

namespace kerramp {
namespace {

using Index = Eigen::Index;

constexpr std::size_t kQubit = 0;
constexpr std::size_t kBoson = 1;

void check_reflectance(double r) {
  if (!(r >= 0.0 && r <= 1.0)) {
    throw std::invalid_argument("reflectance must lie in [0, 1], got " +
                                std::to_string(r));
  }
}

const DensityMatrix::Tolerance kStageTolerance{1e-10, 1e-8, -1e-8};

}  // namespace

double LossConfig::reflectance(Splitter s) const {
  switch (s) {
    case Splitter::kB1: return r1.value_or(r_s);
    case Splitter::kB3: return r3.value_or(r_s);
    case Splitter::kB5: return r5.value_or(r_s);
    case Splitter::kB2: return r2.value_or(r_k);
    case Splitter::kB2Prime: return r2_prime.value_or(r_k);
    case Splitter::kB4: return r4.value_or(r_k);
    case Splitter::kB4Prime: return r4_prime.value_or(r_k);
  }
  throw std::invalid_argument("unknown splitter");
}

void LossConfig::validate() const {
  for (Splitter s : {Splitter::kB1, Splitter::kB2, Splitter::kB2Prime, Splitter::kB3,
                     Splitter::kB4, Splitter::kB4Prime, Splitter::kB5}) {
    check_reflectance(reflectance(s));
  }
}

double bs_angle(double reflectance) {
  check_reflectance(reflectance);
  return std::acos(std::sqrt(1.0 - reflectance));
}

Operator beam_splitter(const ModeLayout& layout, std::size_t signal_mode,
                       std::size_t ancilla_mode, double reflectance) {
  if (signal_mode == ancilla_mode) {
    throw std::invalid_argument("beam_splitter: signal and ancilla must differ");
  }
  const double theta = bs_angle(reflectance);
  const Operator x = annihilation(layout, signal_mode);
  const Operator v = annihilation(layout, ancilla_mode);
  const Operator xvd = x * v.adjoint();
  return expm(Complex(theta) * (xvd - xvd.adjoint()));
}

std::vector<Matrix> beam_splitter_kraus(std::size_t signal_dim,
                                        std::size_t ancilla_dim,
                                        double reflectance) {
  const double theta = bs_angle(reflectance);
  const Index ds = static_cast<Index>(signal_dim);
  std::vector<Matrix> kraus(ancilla_dim, Matrix::Zero(ds, ds));

  // Input |n, 0> lives in the block of total photon number N = n, spanned by
  // |j, N - j> with j the signal level.
  for (std::size_t n = 0; n < signal_dim; ++n) {
    const std::size_t j_min = n >= ancilla_dim ? n - (ancilla_dim - 1) : 0;
    const std::size_t size = n - j_min + 1;
    auto pos = [&](std::size_t j) { return static_cast<Index>(j - j_min); };

    Matrix column(static_cast<Index>(size), 1);
    if (size == 1) {
      column(0, 0) = 1.0;
    } else {
      Matrix gen = Matrix::Zero(static_cast<Index>(size), static_cast<Index>(size));
      for (std::size_t j = j_min; j <= n; ++j) {
        const std::size_t m = n - j;
        // x v^dagger |j, m> = sqrt(j (m + 1)) |j - 1, m + 1>
        if (j > j_min) {
          gen(pos(j - 1), pos(j)) += theta * std::sqrt(double(j) * double(m + 1));
        }
        // x^dagger v |j, m> = sqrt((j + 1) m) |j + 1, m - 1>
        if (j < n) {
          gen(pos(j + 1), pos(j)) -= theta * std::sqrt(double(j + 1) * double(m));
        }
      }
      const Operator block = expm(Operator(ModeLayout({size}), std::move(gen)));
      column = block.matrix().col(pos(n));
    }
    for (std::size_t j = j_min; j <= n; ++j) {
      kraus[n - j](static_cast<Index>(j), static_cast<Index>(n)) = column(pos(j), 0);
    }
  }
  return kraus;
}

DensityMatrix apply_loss(const DensityMatrix& rho, std::size_t mode,
                         double reflectance) {
  const ModeLayout& layout = rho.layout();
  const std::size_t d = layout.dim(mode);
  check_reflectance(reflectance);
  if (reflectance == 0.0) return rho;
  Matrix out = Matrix::Zero(rho.matrix().rows(), rho.matrix().cols());
  for (const Matrix& local : beam_splitter_kraus(d, d, reflectance)) {
    if (local.cwiseAbs().maxCoeff() == 0.0) continue;
    const Matrix e = embed(layout, mode, local).matrix();
    out += e * rho.matrix() * e.adjoint();
  }
  out = 0.5 * (out + out.adjoint());
  return DensityMatrix(layout, std::move(out), kStageTolerance);
}

DensityMatrix apply_loss_dilated(const DensityMatrix& rho, std::size_t mode,
                                 double reflectance) {
  const ModeLayout& layout = rho.layout();
  const std::size_t d = layout.dim(mode);
  const ModeLayout ancilla_layout({d});
  const std::array<std::size_t, 1> vacuum{0};
  const DensityMatrix joint =
      tensor(rho, DensityMatrix::basis(ancilla_layout, vacuum));
  const std::size_t ancilla = layout.num_modes();
  const DensityMatrix mixed =
      evolve(joint, beam_splitter(joint.layout(), mode, ancilla, reflectance));
  std::vector<std::size_t> keep(layout.num_modes());
  std::iota(keep.begin(), keep.end(), std::size_t{0});
  return partial_trace(mixed, keep);
}

DensityMatrix lossy_stage(const DensityMatrix& rho, const Operator& unitary,
                          std::span<const LossChannel> losses) {
  DensityMatrix out = evolve(rho, unitary);
  for (const LossChannel& ch : losses) {
    rho.layout().check_mode(ch.mode);
    out = apply_loss(out, ch.mode, ch.reflectance);
  }
  return out;
}

LossyOutcome run_lossy_amplifier_at(const DensityMatrix& rho_in,
                                    const CircuitParams& params,
                                    const LossConfig& loss, KerrLossOrder order) {
  loss.validate();
  const ModeLayout& layout = rho_in.layout();
  if (layout.num_modes() != 2 || layout.dim(kQubit) != 2) {
    throw std::invalid_argument("lossy amplifier needs layout (a:2, b:D)");
  }
  const Operator s1 = squeeze_single(layout, kBoson, params.theta1);
  const Operator s2 = squeeze_single(layout, kBoson, params.theta2);
  const Operator k = kerr(layout, kQubit, kBoson, params.delta);
  const Operator p = phase_shift(layout, PhaseTerms{{{kBoson, params.beta_coeff}}, 0.0});
  const Operator p_prime =
      phase_shift(layout, phase_terms(params.beta_prime_two_mode(), kQubit, {kBoson}));

  auto kerr_losses = [&](Splitter on_b, Splitter on_a) {
    const LossChannel b{kBoson, loss.reflectance(on_b)};
    const LossChannel a{kQubit, loss.reflectance(on_a)};
    return order == KerrLossOrder::kQubitFirst ? std::array<LossChannel, 2>{a, b}
                                               : std::array<LossChannel, 2>{b, a};
  };
  const std::array<LossChannel, 1> after_s1{{{kBoson, loss.reflectance(Splitter::kB1)}}};
  const std::array<LossChannel, 1> after_s2{{{kBoson, loss.reflectance(Splitter::kB3)}}};
  const std::array<LossChannel, 1> after_s3{{{kBoson, loss.reflectance(Splitter::kB5)}}};

  DensityMatrix rho = lossy_stage(rho_in, s1, after_s1);
  rho = lossy_stage(rho, k, kerr_losses(Splitter::kB2, Splitter::kB2Prime));
  rho = evolve(lossy_stage(rho, s2 * p, after_s2), p);
  rho = lossy_stage(rho, k, kerr_losses(Splitter::kB4, Splitter::kB4Prime));
  rho = evolve(lossy_stage(rho, s1, after_s3), p_prime);

  DensityMatrix ideal = evolve(rho_in, kerr(layout, kQubit, kBoson, params.dphi_amp));
  const double f = fidelity(ideal, rho);
  return {std::move(rho), std::move(ideal), f};
}

LossyRunReport run_lossy_amplifier(const DensityMatrix& rho_in,
                                   const CircuitParams& params,
                                   const LossConfig& loss,
                                   const LossyRunOptions& options) {
  const ModeLayout& in_layout = rho_in.layout();
  if (in_layout.num_modes() != 2 || in_layout.dim(kQubit) != 2) {
    throw std::invalid_argument("lossy amplifier needs layout (a:2, b:D)");
  }
  std::size_t dim = std::max(options.start_dim, in_layout.dim(kBoson));
  const std::size_t max_dim = std::max(options.max_dim, dim);

  auto run_at = [&](std::size_t d) {
    return run_lossy_amplifier_at(embed_state(rho_in, ModeLayout({2, d})), params,
                                  loss, options.order);
  };
  LossyOutcome current = run_at(dim);
  LossyRunReport report{current.rho_out, current.rho_ideal, current.fidelity, dim,
                        std::numeric_limits<double>::infinity(), false,
                        {{dim, current.fidelity}}};
  while (2 * dim <= max_dim) {
    dim *= 2;
    LossyOutcome next = run_at(dim);
    report.history.emplace_back(dim, next.fidelity);
    report.convergence_delta = std::abs(next.fidelity - current.fidelity);
    current = std::move(next);
    if (report.convergence_delta < options.tolerance) {
      report.converged = true;
      break;
    }
  }
  report.rho_out = std::move(current.rho_out);
  report.rho_ideal = std::move(current.rho_ideal);
  report.fidelity = current.fidelity;
  report.dim = dim;
  return report;
}

DensityMatrix make_plus_plus(const ModeLayout& layout) {
  if (layout.num_modes() < 2) {
    throw std::invalid_argument("make_plus_plus: needs two modes");
  }
  Vector psi = Vector::Zero(static_cast<Index>(layout.total_dim()));
  std::vector<std::size_t> levels(layout.num_modes(), 0);
  for (std::size_t a : {0, 1}) {
    for (std::size_t b : {0, 1}) {
      levels[0] = a;
      levels[1] = b;
      psi(static_cast<Index>(layout.flat_index(levels))) = 0.5;
    }
  }
  return DensityMatrix::pure(layout, psi);
}

DensityMatrix make_werner(const ModeLayout& layout, double p) {
  if (layout.num_modes() < 2) {
    throw std::invalid_argument("make_werner: needs two modes");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("make_werner: p must lie in [0, 1]");
  }
  std::vector<std::size_t> levels(layout.num_modes(), 0);
  auto at = [&](std::size_t a, std::size_t b) {
    levels[0] = a;
    levels[1] = b;
    return static_cast<Index>(layout.flat_index(levels));
  };
  const Index n = static_cast<Index>(layout.total_dim());
  Matrix rho = Matrix::Zero(n, n);
  for (std::size_t a : {0, 1}) {
    for (std::size_t b : {0, 1}) rho(at(a, b), at(a, b)) += (1.0 - p) / 4.0;
  }
  const Index i00 = at(0, 0);
  const Index i11 = at(1, 1);
  rho(i00, i00) += p / 2.0;
  rho(i11, i11) += p / 2.0;
  rho(i00, i11) += p / 2.0;
  rho(i11, i00) += p / 2.0;
  return DensityMatrix(layout, std::move(rho));
}

double master_equation_time(double reflectance) {
  check_reflectance(reflectance);
  if (reflectance == 1.0) return std::numeric_limits<double>::infinity();
  return -std::log1p(-reflectance);
}

}  // namespace kerramp

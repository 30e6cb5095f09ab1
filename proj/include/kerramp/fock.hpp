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

#ifndef KERRAMP_FOCK_HPP_
#define KERRAMP_FOCK_HPP_

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace kerramp {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Ordered list of per-mode Fock truncations. Mode 0 is the most significant
/// digit of the flat index (row-major), so for dims (d0, d1, d2) the basis
/// state |n0, n1, n2> sits at flat index (n0 * d1 + n1) * d2 + n2.
class ModeLayout {
 public:
  /// Throws std::invalid_argument on an empty list or any dim < 2.
  explicit ModeLayout(std::vector<std::size_t> dims);

  std::size_t num_modes() const { return dims_.size(); }
  std::size_t total_dim() const { return total_dim_; }
  std::size_t dim(std::size_t mode) const;
  std::span<const std::size_t> dims() const { return dims_; }

  /// Distance in the flat index between |..n_mode..> and |..n_mode+1..>.
  std::size_t stride(std::size_t mode) const;

  std::size_t flat_index(std::span<const std::size_t> levels) const;
  std::vector<std::size_t> multi_index(std::size_t flat) const;
  std::size_t level(std::size_t flat, std::size_t mode) const;

  /// Throws std::out_of_range for mode >= num_modes().
  void check_mode(std::size_t mode) const;

  bool operator==(const ModeLayout& other) const = default;

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> strides_;
  std::size_t total_dim_ = 1;
};

ModeLayout make_layout(std::vector<std::size_t> dims);

/// Square sub-block of a truncated space: basis states whose every mode level
/// is <= max_level (levels above a mode's own truncation are not restricted).
/// Operators built from truncated ladders are only trustworthy here.
struct InteriorBlock {
  std::size_t max_level;

  bool contains(const ModeLayout& layout, std::size_t flat) const;
  std::vector<std::size_t> indices(const ModeLayout& layout) const;
};

/// Default interior block used for identity checks: levels <= D / 2 where D
/// is the largest mode dimension of the layout.
InteriorBlock default_block(const ModeLayout& layout);

struct OperatorFlags {
  bool hermitian = false;
  bool unitary = false;
  bool diagonal = false;
};

/// Dense complex matrix acting on the Hilbert space described by a layout.
class Operator {
 public:
  /// Throws std::invalid_argument if the matrix shape does not match, or if
  /// the hermitian flag is set on a matrix that is not Hermitian to 1e-12.
  Operator(ModeLayout layout, Matrix matrix, OperatorFlags flags = {});

  static Operator identity(const ModeLayout& layout);
  static Operator zero(const ModeLayout& layout);
  static Operator diagonal(const ModeLayout& layout, const Vector& entries,
                           OperatorFlags flags = {});

  const ModeLayout& layout() const { return layout_; }
  const Matrix& matrix() const { return matrix_; }
  OperatorFlags flags() const { return flags_; }
  Complex operator()(std::size_t row, std::size_t col) const {
    return matrix_(static_cast<Eigen::Index>(row),
                   static_cast<Eigen::Index>(col));
  }

  Operator adjoint() const;

 private:
  ModeLayout layout_;
  Matrix matrix_;
  OperatorFlags flags_;
};

Operator operator*(const Operator& lhs, const Operator& rhs);
Operator operator+(const Operator& lhs, const Operator& rhs);
Operator operator-(const Operator& lhs, const Operator& rhs);
Operator operator*(Complex scalar, const Operator& op);

Operator commutator(const Operator& lhs, const Operator& rhs);

/// Max-norm of the elementwise difference.
double max_abs_diff(const Operator& lhs, const Operator& rhs);
/// Max-norm of the elementwise difference restricted to block rows and cols.
double block_residual(const Operator& lhs, const Operator& rhs,
                      const InteriorBlock& block);
/// ||U^dagger U - I||_max, over the full space or an interior block.
double unitarity_residual(const Operator& op);
double unitarity_residual(const Operator& op, const InteriorBlock& block);

/// Embeds a single-mode matrix on `mode` via Kronecker products with
/// identities on every other mode.
Operator embed(const ModeLayout& layout, std::size_t mode, const Matrix& local);

Operator annihilation(const ModeLayout& layout, std::size_t mode);
Operator creation(const ModeLayout& layout, std::size_t mode);
Operator number_op(const ModeLayout& layout, std::size_t mode);
/// Z = 2n - 1 on the given mode.
Operator parity_z(const ModeLayout& layout, std::size_t mode);

/// exp(A) for anti-Hermitian A, via the eigendecomposition of H = -iA.
/// The sparsity graph of A is split into connected components first and each
/// block is diagonalised on its own; the result is exact either way.
/// Throws std::invalid_argument if ||A + A^dagger||_max > 1e-10.
Operator expm(const Operator& generator);

/// Hermitian, positive-semidefinite, unit-trace matrix over a layout.
class DensityMatrix {
 public:
  struct Tolerance {
    double hermiticity = 1e-12;
    double trace = 1e-10;
    double min_eigenvalue = -1e-10;
  };

  /// Throws std::invalid_argument when the matrix is not a valid state within
  /// `tol`.
  DensityMatrix(ModeLayout layout, Matrix matrix, Tolerance tol);
  DensityMatrix(ModeLayout layout, Matrix matrix)
      : DensityMatrix(std::move(layout), std::move(matrix), Tolerance{}) {}

  static DensityMatrix pure(const ModeLayout& layout, const Vector& amplitudes);
  static DensityMatrix basis(const ModeLayout& layout,
                             std::span<const std::size_t> levels);

  const ModeLayout& layout() const { return layout_; }
  const Matrix& matrix() const { return matrix_; }

  double trace() const;
  double purity() const;
  double min_eigenvalue() const;
  Complex element(std::size_t row, std::size_t col) const {
    return matrix_(static_cast<Eigen::Index>(row),
                   static_cast<Eigen::Index>(col));
  }

 private:
  ModeLayout layout_;
  Matrix matrix_;
};

/// Reduced state over `keep` (in the given order). Throws std::invalid_argument
/// for an empty, duplicated or out-of-range mode list.
DensityMatrix partial_trace(const DensityMatrix& rho,
                            std::span<const std::size_t> keep);

/// U rho U^dagger, re-symmetrised. Throws std::invalid_argument on layout
/// mismatch.
DensityMatrix evolve(const DensityMatrix& rho, const Operator& unitary);

/// rho (x) sigma over the concatenated layout.
DensityMatrix tensor(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Zero-pads a state onto a layout with the same number of modes and every
/// dim at least as large. Throws std::invalid_argument if the state has
/// weight on levels the target cannot hold.
DensityMatrix embed_state(const DensityMatrix& rho, const ModeLayout& target);

/// Hermitian PSD square root. Eigenvalues in [-1e-10, 0) are clipped to zero;
/// anything below -1e-8 throws std::invalid_argument.
Operator sqrtm_psd(const Operator& hermitian);
Operator sqrtm_psd(const DensityMatrix& rho);

/// Uhlmann-Jozsa fidelity [Tr sqrt(sqrt(r1) r2 sqrt(r1))]^2, clamped to [0, 1].
/// If rho_ideal has numerical rank 1 it reduces to <psi|rho_out|psi>.
double fidelity(const DensityMatrix& rho_ideal, const DensityMatrix& rho_out);

}  // namespace kerramp

#endif  // KERRAMP_FOCK_HPP_

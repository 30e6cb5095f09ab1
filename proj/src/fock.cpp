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

#include "kerramp/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCore>
#include <unsupported/Eigen/KroneckerProduct>

namespace kerramp {
namespace {

using Index = Eigen::Index;

Index idx(std::size_t i) { return static_cast<Index>(i); }

// Gates are mostly diagonal or block-sparse; below this fill fraction a
// product goes through a sparse factor instead of a dense GEMM.
constexpr double kSparseFill = 0.2;

bool is_sparse(const Matrix& m) {
  const auto nnz = (m.array() != Complex(0.0)).count();
  return double(nnz) < kSparseFill * double(m.size());
}

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void require_same_layout(const ModeLayout& a, const ModeLayout& b,
                         const char* what) {
  if (!(a == b)) {
    throw std::invalid_argument(std::string(what) + ": layout mismatch");
  }
}

// Disjoint-set forest over matrix indices, used to find the independent
// blocks of a generator.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

Eigen::SelfAdjointEigenSolver<Matrix> hermitian_eigen(const Matrix& m) {
  const Matrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("Hermitian eigendecomposition failed");
  }
  return solver;
}

}  // namespace

// ---------------------------------------------------------------------------
// ModeLayout

ModeLayout::ModeLayout(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) {
    throw std::invalid_argument("ModeLayout: at least one mode is required");
  }
  for (std::size_t d : dims_) {
    if (d < 2) {
      throw std::invalid_argument("ModeLayout: every mode needs dim >= 2, got " +
                                  std::to_string(d));
    }
  }
  strides_.assign(dims_.size(), 1);
  for (std::size_t m = dims_.size(); m-- > 0;) {
    strides_[m] = total_dim_;
    total_dim_ *= dims_[m];
  }
}

ModeLayout make_layout(std::vector<std::size_t> dims) {
  return ModeLayout(std::move(dims));
}

void ModeLayout::check_mode(std::size_t mode) const {
  if (mode >= dims_.size()) {
    throw std::out_of_range("mode index " + std::to_string(mode) +
                            " out of range for " +
                            std::to_string(dims_.size()) + " modes");
  }
}

std::size_t ModeLayout::dim(std::size_t mode) const {
  check_mode(mode);
  return dims_[mode];
}

std::size_t ModeLayout::stride(std::size_t mode) const {
  check_mode(mode);
  return strides_[mode];
}

std::size_t ModeLayout::flat_index(std::span<const std::size_t> levels) const {
  if (levels.size() != dims_.size()) {
    throw std::invalid_argument("flat_index: wrong number of levels");
  }
  std::size_t flat = 0;
  for (std::size_t m = 0; m < dims_.size(); ++m) {
    if (levels[m] >= dims_[m]) {
      throw std::out_of_range("flat_index: level exceeds truncation");
    }
    flat += levels[m] * strides_[m];
  }
  return flat;
}

std::vector<std::size_t> ModeLayout::multi_index(std::size_t flat) const {
  if (flat >= total_dim_) throw std::out_of_range("multi_index: flat index");
  std::vector<std::size_t> levels(dims_.size());
  for (std::size_t m = 0; m < dims_.size(); ++m) {
    levels[m] = (flat / strides_[m]) % dims_[m];
  }
  return levels;
}

std::size_t ModeLayout::level(std::size_t flat, std::size_t mode) const {
  return (flat / stride(mode)) % dims_[mode];
}

bool InteriorBlock::contains(const ModeLayout& layout, std::size_t flat) const {
  for (std::size_t m = 0; m < layout.num_modes(); ++m) {
    if (layout.level(flat, m) > max_level) return false;
  }
  return true;
}

std::vector<std::size_t> InteriorBlock::indices(const ModeLayout& layout) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < layout.total_dim(); ++i) {
    if (contains(layout, i)) out.push_back(i);
  }
  return out;
}

InteriorBlock default_block(const ModeLayout& layout) {
  const auto dims = layout.dims();
  return InteriorBlock{*std::max_element(dims.begin(), dims.end()) / 2};
}

// ---------------------------------------------------------------------------
// Operator

Operator::Operator(ModeLayout layout, Matrix matrix, OperatorFlags flags)
    : layout_(std::move(layout)), matrix_(std::move(matrix)), flags_(flags) {
  const Index n = idx(layout_.total_dim());
  if (matrix_.rows() != n || matrix_.cols() != n) {
    throw std::invalid_argument("Operator: matrix is " +
                                std::to_string(matrix_.rows()) + "x" +
                                std::to_string(matrix_.cols()) +
                                ", layout needs " + std::to_string(n));
  }
  if (flags_.hermitian) {
    const double scale = std::max(1.0, max_abs(matrix_));
    if (max_abs(matrix_ - matrix_.adjoint()) > 1e-12 * scale) {
      throw std::invalid_argument("Operator: flagged hermitian but A != A^dagger");
    }
  }
}

Operator Operator::identity(const ModeLayout& layout) {
  const Index n = idx(layout.total_dim());
  return Operator(layout, Matrix::Identity(n, n), {true, true, true});
}

Operator Operator::zero(const ModeLayout& layout) {
  const Index n = idx(layout.total_dim());
  return Operator(layout, Matrix::Zero(n, n), {true, false, true});
}

Operator Operator::diagonal(const ModeLayout& layout, const Vector& entries,
                            OperatorFlags flags) {
  flags.diagonal = true;
  return Operator(layout, entries.asDiagonal().toDenseMatrix(), flags);
}

Operator Operator::adjoint() const {
  return Operator(layout_, matrix_.adjoint(), flags_);
}

Operator operator*(const Operator& lhs, const Operator& rhs) {
  require_same_layout(lhs.layout(), rhs.layout(), "operator*");
  const OperatorFlags f{false, lhs.flags().unitary && rhs.flags().unitary,
                        lhs.flags().diagonal && rhs.flags().diagonal};
  const Matrix& a = lhs.matrix();
  const Matrix& b = rhs.matrix();
  Matrix product;
  if (lhs.flags().diagonal) {
    product = a.diagonal().asDiagonal() * b;
  } else if (rhs.flags().diagonal) {
    product = a * b.diagonal().asDiagonal();
  } else if (is_sparse(a)) {
    const Eigen::SparseMatrix<Complex> sa = a.sparseView();
    product = sa * b;
  } else if (is_sparse(b)) {
    const Eigen::SparseMatrix<Complex> sb = b.sparseView();
    product = a * sb;
  } else {
    product = a * b;
  }
  return Operator(lhs.layout(), std::move(product), f);
}

Operator operator+(const Operator& lhs, const Operator& rhs) {
  require_same_layout(lhs.layout(), rhs.layout(), "operator+");
  return Operator(lhs.layout(), lhs.matrix() + rhs.matrix(),
                  {false, false, lhs.flags().diagonal && rhs.flags().diagonal});
}

Operator operator-(const Operator& lhs, const Operator& rhs) {
  require_same_layout(lhs.layout(), rhs.layout(), "operator-");
  return Operator(lhs.layout(), lhs.matrix() - rhs.matrix(),
                  {false, false, lhs.flags().diagonal && rhs.flags().diagonal});
}

Operator operator*(Complex scalar, const Operator& op) {
  return Operator(op.layout(), scalar * op.matrix(),
                  {false, false, op.flags().diagonal});
}

Operator commutator(const Operator& lhs, const Operator& rhs) {
  return lhs * rhs - rhs * lhs;
}

double max_abs_diff(const Operator& lhs, const Operator& rhs) {
  require_same_layout(lhs.layout(), rhs.layout(), "max_abs_diff");
  return max_abs(lhs.matrix() - rhs.matrix());
}

double block_residual(const Operator& lhs, const Operator& rhs,
                      const InteriorBlock& block) {
  require_same_layout(lhs.layout(), rhs.layout(), "block_residual");
  const auto rows = block.indices(lhs.layout());
  double worst = 0.0;
  for (std::size_t r : rows) {
    for (std::size_t c : rows) {
      worst = std::max(worst, std::abs(lhs(r, c) - rhs(r, c)));
    }
  }
  return worst;
}

double unitarity_residual(const Operator& op) {
  const Index n = op.matrix().rows();
  return max_abs(op.matrix().adjoint() * op.matrix() - Matrix::Identity(n, n));
}

double unitarity_residual(const Operator& op, const InteriorBlock& block) {
  const Operator product = op.adjoint() * op;
  return block_residual(product, Operator::identity(op.layout()), block);
}

// ---------------------------------------------------------------------------
// Ladder operators

Operator embed(const ModeLayout& layout, std::size_t mode, const Matrix& local) {
  layout.check_mode(mode);
  const Index d = idx(layout.dim(mode));
  if (local.rows() != d || local.cols() != d) {
    throw std::invalid_argument("embed: local matrix does not match mode dim");
  }
  std::size_t before = 1;
  for (std::size_t m = 0; m < mode; ++m) before *= layout.dim(m);
  const std::size_t after = layout.stride(mode);
  const Matrix left = Matrix::Identity(idx(before), idx(before));
  const Matrix right = Matrix::Identity(idx(after), idx(after));
  Matrix full = Eigen::kroneckerProduct(left, Matrix(Eigen::kroneckerProduct(local, right)));
  return Operator(layout, std::move(full));
}

Operator annihilation(const ModeLayout& layout, std::size_t mode) {
  const Index d = idx(layout.dim(mode));
  Matrix local = Matrix::Zero(d, d);
  for (Index n = 1; n < d; ++n) local(n - 1, n) = std::sqrt(static_cast<double>(n));
  return embed(layout, mode, local);
}

Operator creation(const ModeLayout& layout, std::size_t mode) {
  return annihilation(layout, mode).adjoint();
}

Operator number_op(const ModeLayout& layout, std::size_t mode) {
  layout.check_mode(mode);
  Vector diag(idx(layout.total_dim()));
  for (std::size_t i = 0; i < layout.total_dim(); ++i) {
    diag(idx(i)) = static_cast<double>(layout.level(i, mode));
  }
  return Operator::diagonal(layout, diag, {true, false, true});
}

Operator parity_z(const ModeLayout& layout, std::size_t mode) {
  layout.check_mode(mode);
  Vector diag(idx(layout.total_dim()));
  for (std::size_t i = 0; i < layout.total_dim(); ++i) {
    diag(idx(i)) = 2.0 * static_cast<double>(layout.level(i, mode)) - 1.0;
  }
  return Operator::diagonal(layout, diag, {true, false, true});
}

// ---------------------------------------------------------------------------
// Exponential

Operator expm(const Operator& generator) {
  const Matrix& a = generator.matrix();
  const double scale = std::max(1.0, max_abs(a));
  if (max_abs(a + a.adjoint()) > 1e-10 * scale) {
    throw std::invalid_argument("expm: generator is not anti-Hermitian");
  }
  const std::size_t n = static_cast<std::size_t>(a.rows());

  DisjointSets sets(n);
  for (Index c = 0; c < a.cols(); ++c) {
    for (Index r = 0; r < a.rows(); ++r) {
      if (r != c && a(r, c) != Complex(0.0, 0.0)) {
        sets.unite(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
      }
    }
  }
  std::vector<std::vector<std::size_t>> blocks(n);
  for (std::size_t i = 0; i < n; ++i) blocks[sets.find(i)].push_back(i);

  Matrix result = Matrix::Zero(a.rows(), a.cols());
  bool diagonal = true;
  for (const auto& members : blocks) {
    if (members.empty()) continue;
    if (members.size() == 1) {
      const Index i = idx(members.front());
      result(i, i) = std::exp(Complex(0.0, a(i, i).imag()));
      continue;
    }
    diagonal = false;
    const Index m = idx(members.size());
    Matrix h(m, m);
    for (Index r = 0; r < m; ++r) {
      for (Index c = 0; c < m; ++c) {
        h(r, c) = Complex(0.0, -1.0) * a(idx(members[static_cast<std::size_t>(r)]),
                                         idx(members[static_cast<std::size_t>(c)]));
      }
    }
    const auto solver = hermitian_eigen(h);
    const Matrix& v = solver.eigenvectors();
    Vector phases(m);
    for (Index k = 0; k < m; ++k) {
      phases(k) = std::exp(Complex(0.0, solver.eigenvalues()(k)));
    }
    const Matrix u = v * phases.asDiagonal() * v.adjoint();
    for (Index r = 0; r < m; ++r) {
      for (Index c = 0; c < m; ++c) {
        result(idx(members[static_cast<std::size_t>(r)]),
               idx(members[static_cast<std::size_t>(c)])) = u(r, c);
      }
    }
  }
  return Operator(generator.layout(), std::move(result), {false, true, diagonal});
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(ModeLayout layout, Matrix matrix, Tolerance tol)
    : layout_(std::move(layout)), matrix_(std::move(matrix)) {
  const Index n = idx(layout_.total_dim());
  if (matrix_.rows() != n || matrix_.cols() != n) {
    throw std::invalid_argument("DensityMatrix: shape does not match layout");
  }
  const double herm = max_abs(matrix_ - matrix_.adjoint());
  if (herm > tol.hermiticity) {
    throw std::invalid_argument("DensityMatrix: not Hermitian (deviation " +
                                std::to_string(herm) + ")");
  }
  if (std::abs(trace() - 1.0) > tol.trace) {
    throw std::invalid_argument("DensityMatrix: trace " +
                                std::to_string(trace()) + " != 1");
  }
  if (min_eigenvalue() < tol.min_eigenvalue) {
    throw std::invalid_argument("DensityMatrix: negative eigenvalue " +
                                std::to_string(min_eigenvalue()));
  }
}

DensityMatrix DensityMatrix::pure(const ModeLayout& layout,
                                  const Vector& amplitudes) {
  if (amplitudes.size() != idx(layout.total_dim())) {
    throw std::invalid_argument("DensityMatrix::pure: wrong vector length");
  }
  const double norm = amplitudes.norm();
  if (norm == 0.0) throw std::invalid_argument("DensityMatrix::pure: zero vector");
  const Vector psi = amplitudes / norm;
  return DensityMatrix(layout, psi * psi.adjoint());
}

DensityMatrix DensityMatrix::basis(const ModeLayout& layout,
                                   std::span<const std::size_t> levels) {
  Vector psi = Vector::Zero(idx(layout.total_dim()));
  psi(idx(layout.flat_index(levels))) = 1.0;
  return pure(layout, psi);
}

double DensityMatrix::trace() const { return matrix_.trace().real(); }

double DensityMatrix::purity() const {
  return (matrix_ * matrix_).trace().real();
}

double DensityMatrix::min_eigenvalue() const {
  const Matrix sym = 0.5 * (matrix_ + matrix_.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            std::span<const std::size_t> keep) {
  const ModeLayout& layout = rho.layout();
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep is empty");
  std::vector<bool> kept(layout.num_modes(), false);
  std::vector<std::size_t> out_dims;
  for (std::size_t m : keep) {
    if (m >= layout.num_modes() || kept[m]) {
      throw std::invalid_argument("partial_trace: invalid mode set");
    }
    kept[m] = true;
    out_dims.push_back(layout.dim(m));
  }
  std::vector<std::size_t> traced;
  for (std::size_t m = 0; m < layout.num_modes(); ++m) {
    if (!kept[m]) traced.push_back(m);
  }
  const ModeLayout out_layout(out_dims);

  // Offsets into the full flat index contributed by kept and traced digits.
  std::vector<std::size_t> keep_offset(out_layout.total_dim());
  for (std::size_t i = 0; i < out_layout.total_dim(); ++i) {
    std::size_t off = 0;
    for (std::size_t k = 0; k < keep.size(); ++k) {
      off += out_layout.level(i, k) * layout.stride(keep[k]);
    }
    keep_offset[i] = off;
  }
  std::size_t traced_dim = 1;
  for (std::size_t m : traced) traced_dim *= layout.dim(m);
  std::vector<std::size_t> traced_offset(traced_dim, 0);
  for (std::size_t t = 0; t < traced_dim; ++t) {
    std::size_t rest = t;
    std::size_t off = 0;
    for (std::size_t k = traced.size(); k-- > 0;) {
      const std::size_t d = layout.dim(traced[k]);
      off += (rest % d) * layout.stride(traced[k]);
      rest /= d;
    }
    traced_offset[t] = off;
  }

  const Index n = idx(out_layout.total_dim());
  Matrix out = Matrix::Zero(n, n);
  const Matrix& full = rho.matrix();
  for (Index c = 0; c < n; ++c) {
    for (Index r = 0; r < n; ++r) {
      Complex acc = 0.0;
      for (std::size_t t : traced_offset) {
        acc += full(idx(keep_offset[static_cast<std::size_t>(r)] + t),
                    idx(keep_offset[static_cast<std::size_t>(c)] + t));
      }
      out(r, c) = acc;
    }
  }
  return DensityMatrix(out_layout, 0.5 * (out + out.adjoint()),
                       {1e-10, 1e-8, -1e-8});
}

DensityMatrix evolve(const DensityMatrix& rho, const Operator& unitary) {
  require_same_layout(rho.layout(), unitary.layout(), "evolve");
  Matrix out;
  if (unitary.flags().diagonal) {
    const Vector u = unitary.matrix().diagonal();
    out = u.asDiagonal() * rho.matrix() * u.conjugate().asDiagonal();
  } else {
    out = unitary.matrix() * rho.matrix() * unitary.matrix().adjoint();
  }
  out = 0.5 * (out + out.adjoint());
  return DensityMatrix(rho.layout(), std::move(out), {1e-10, 1e-8, -1e-8});
}

DensityMatrix tensor(const DensityMatrix& rho, const DensityMatrix& sigma) {
  std::vector<std::size_t> dims(rho.layout().dims().begin(),
                                rho.layout().dims().end());
  dims.insert(dims.end(), sigma.layout().dims().begin(),
              sigma.layout().dims().end());
  Matrix m = Eigen::kroneckerProduct(rho.matrix(), sigma.matrix());
  return DensityMatrix(ModeLayout(dims), std::move(m), {1e-10, 1e-8, -1e-8});
}

DensityMatrix embed_state(const DensityMatrix& rho, const ModeLayout& target) {
  const ModeLayout& src = rho.layout();
  if (src.num_modes() != target.num_modes()) {
    throw std::invalid_argument("embed_state: mode count differs");
  }
  std::vector<long> map(src.total_dim(), -1);
  for (std::size_t i = 0; i < src.total_dim(); ++i) {
    auto levels = src.multi_index(i);
    bool fits = true;
    for (std::size_t m = 0; m < levels.size(); ++m) {
      fits = fits && levels[m] < target.dim(m);
    }
    if (fits) {
      map[i] = static_cast<long>(target.flat_index(levels));
    } else if (rho.matrix().row(idx(i)).cwiseAbs().maxCoeff() > 1e-14) {
      throw std::invalid_argument("embed_state: state has weight beyond target");
    }
  }
  const Index n = idx(target.total_dim());
  Matrix out = Matrix::Zero(n, n);
  for (std::size_t r = 0; r < src.total_dim(); ++r) {
    if (map[r] < 0) continue;
    for (std::size_t c = 0; c < src.total_dim(); ++c) {
      if (map[c] < 0) continue;
      out(map[r], map[c]) = rho.element(r, c);
    }
  }
  return DensityMatrix(target, std::move(out), {1e-10, 1e-8, -1e-8});
}

// ---------------------------------------------------------------------------
// Square root and fidelity

Operator sqrtm_psd(const Operator& hermitian) {
  const auto solver = hermitian_eigen(hermitian.matrix());
  Eigen::VectorXd lambda = solver.eigenvalues();
  for (Index k = 0; k < lambda.size(); ++k) {
    if (lambda(k) < -1e-8) {
      throw std::invalid_argument("sqrtm_psd: matrix is not positive semidefinite");
    }
    lambda(k) = std::sqrt(std::max(lambda(k), 0.0));
  }
  const Matrix& v = solver.eigenvectors();
  Matrix root = v * lambda.cast<Complex>().asDiagonal() * v.adjoint();
  root = 0.5 * (root + root.adjoint());
  return Operator(hermitian.layout(), std::move(root), {true, false, false});
}

Operator sqrtm_psd(const DensityMatrix& rho) {
  return sqrtm_psd(Operator(rho.layout(), rho.matrix()));
}

namespace {

// Eigenvectors and square-rooted eigenvalues spanning the support of rho.
struct Support {
  Matrix vectors;
  Eigen::VectorXd roots;
};

Support support_of(const Matrix& rho) {
  constexpr double kSupport = 1e-12;
  const auto solver = hermitian_eigen(rho);
  const Eigen::VectorXd& lambda = solver.eigenvalues();
  std::vector<Index> keep;
  for (Index k = 0; k < lambda.size(); ++k) {
    if (lambda(k) > kSupport) keep.push_back(k);
  }
  Support s{Matrix(rho.rows(), idx(keep.size())), Eigen::VectorXd(idx(keep.size()))};
  for (Index k = 0; k < s.roots.size(); ++k) {
    const Index from = keep[static_cast<std::size_t>(k)];
    s.vectors.col(k) = solver.eigenvectors().col(from);
    s.roots(k) = std::sqrt(lambda(from));
  }
  return s;
}

}  // namespace

double fidelity(const DensityMatrix& rho_ideal, const DensityMatrix& rho_out) {
  require_same_layout(rho_ideal.layout(), rho_out.layout(), "fidelity");
  // F is symmetric. Working on the smaller support keeps sqrt(r1) r2 sqrt(r1)
  // full rank there, so no round-off eigenvalue near zero gets square-rooted.
  Support s = support_of(rho_ideal.matrix());
  const Matrix* other = &rho_out.matrix();
  if (s.roots.size() > 1) {
    Support t = support_of(rho_out.matrix());
    if (t.roots.size() < s.roots.size()) {
      s = std::move(t);
      other = &rho_ideal.matrix();
    }
  }
  double f = 0.0;
  if (s.roots.size() == 1) {
    const Vector psi = s.vectors.col(0);
    f = (psi.adjoint() * *other * psi)(0, 0).real();
  } else {
    const auto d = s.roots.cast<Complex>().asDiagonal();
    const Matrix inner = d * (s.vectors.adjoint() * *other * s.vectors) * d;
    const auto inner_solver = hermitian_eigen(inner);
    double root_sum = 0.0;
    for (Index k = 0; k < inner.rows(); ++k) {
      root_sum += std::sqrt(std::max(inner_solver.eigenvalues()(k), 0.0));
    }
    f = root_sum * root_sum;
  }
  return std::clamp(f, 0.0, 1.0);
}

}  // namespace kerramp

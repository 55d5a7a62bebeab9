// Copyright 2026 The qeclie Authors
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

#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qeclie {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kDefaultRankTol = 1e-10;

/// Spin quantum number stored as the integer 2J.
class Spin {
 public:
  explicit Spin(int twice_j);
  /// Accepts J as a real number; throws InvalidInput unless 2J is a
  /// positive integer.
  static Spin from_value(double j);

  int twice() const { return twice_; }
  double value() const { return 0.5 * twice_; }
  int dim() const { return twice_ + 1; }
  bool is_integer() const { return twice_ % 2 == 0; }

  friend bool operator==(Spin, Spin) = default;

 private:
  int twice_;
};

/// Dense square complex matrix. The Hermitian flag is only ever set after
/// the matrix has been checked.
class Operator {
 public:
  Operator() = default;
  explicit Operator(Matrix m);

  /// Validates max|A - A†| <= 1e-12 * max(1, max|A|) and symmetrizes.
  static Operator hermitian(Matrix m);
  static Operator identity(int dim);

  const Matrix& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  bool is_hermitian() const { return hermitian_; }

 private:
  Matrix m_;
  bool hermitian_ = false;
};

/// Tensor layout d_1 x ... x d_n with site 0 slowest-varying.
class SubsystemLayout {
 public:
  explicit SubsystemLayout(std::vector<int> dims);
  static SubsystemLayout single(int d) { return SubsystemLayout({d}); }
  static SubsystemLayout uniform(int d, int n);

  const std::vector<int>& dims() const { return dims_; }
  std::size_t sites() const { return dims_.size(); }
  int dim(std::size_t site) const { return dims_.at(site); }
  int total() const { return total_; }

  /// Flat index of a per-site index tuple.
  int flatten(const std::vector<int>& k) const;
  std::vector<int> unflatten(int index) const;

  friend bool operator==(const SubsystemLayout& a, const SubsystemLayout& b) {
    return a.dims_ == b.dims_;
  }

 private:
  std::vector<int> dims_;
  int total_ = 1;
};

struct SpinOps {
  Operator x, y, z;
};

/// Angular-momentum matrices in the Jz eigenbasis, index k = m + J.
SpinOps spin_ops(Spin j);

/// 1 ⊗ ... ⊗ op ⊗ ... ⊗ 1 with op at `site`.
Operator embed_local(const Operator& op, const SubsystemLayout& layout,
                     std::size_t site);
Matrix embed_local(const Matrix& op, const SubsystemLayout& layout,
                   std::size_t site);

/// Hilbert-Schmidt inner product tr(A†B).
cplx hs_inner(const Operator& a, const Operator& b);
cplx hs_inner(const Matrix& a, const Matrix& b);
double hs_norm(const Matrix& a);

/// exp(-i t H) through the Hermitian eigendecomposition of H.
Operator expm_hermitian(const Operator& h, double t);

bool is_hermitian(const Matrix& m, double rel_tol = 1e-12);
double unitarity_residual(const Matrix& u);

/// Real coordinates of a Hermitian matrix in an orthonormal basis of the
/// Hermitian space: diagonal entries, then sqrt(2)·Re and sqrt(2)·Im of the
/// strict upper triangle. The Euclidean product of two coordinate vectors
/// equals tr(AB).
RealVector hermitian_coordinates(const Matrix& h);
Matrix hermitian_from_coordinates(const RealVector& x, int dim);

/// Orthonormal (Hilbert-Schmidt) basis of a real-linear span of Hermitian
/// operators. Immutable; grow one with SpanBuilder or extend_span.
class OperatorSpan {
 public:
  explicit OperatorSpan(int dim, double tol = kDefaultRankTol);

  int dim() const { return dim_; }
  std::size_t size() const { return basis_.size(); }
  bool empty() const { return basis_.empty(); }
  double tol() const { return tol_; }
  const std::vector<Operator>& basis() const { return basis_; }
  const Operator& operator[](std::size_t i) const { return basis_[i]; }

  /// Coordinate frame: column i holds hermitian_coordinates(basis[i]).
  auto frame() const { return frame_.leftCols(static_cast<Eigen::Index>(size())); }

  /// HS norm of the component of `h` orthogonal to the span.
  double residual(const Matrix& h) const;
  bool contains(const Matrix& h) const;

  /// Builds a span from orthonormal coordinate columns (no re-check).
  static OperatorSpan from_orthonormal_frame(RealMatrix frame, int dim,
                                             double tol = kDefaultRankTol);

 private:
  friend class SpanBuilder;
  int dim_;
  double tol_;
  std::vector<Operator> basis_;
  RealMatrix frame_;
};

/// Incremental Gram-Schmidt (two projection passes) over Hermitian
/// operators. A candidate is appended when its residual exceeds
/// tol·max(1, ‖op‖_HS).
class SpanBuilder {
 public:
  explicit SpanBuilder(int dim, double tol = kDefaultRankTol);
  explicit SpanBuilder(OperatorSpan seed);

  /// Returns the residual norm; appends when above threshold.
  double extend(const Matrix& h);
  double extend(const Operator& op);

  /// Batch version: candidates are projected against the current frame with
  /// one GEMM, then accepted sequentially in column order. Stops early once
  /// the span fills the whole Hermitian space. Returns number appended.
  std::size_t extend_batch(const std::vector<Matrix>& candidates);

  std::size_t size() const { return span_.size(); }
  bool full() const;
  const OperatorSpan& view() const { return span_; }
  OperatorSpan build() && { return std::move(span_); }

 private:
  void append(const RealVector& unit);
  OperatorSpan span_;
};

/// Functional form: returns the grown span and the residual magnitude.
std::pair<OperatorSpan, double> extend_span(const OperatorSpan& span,
                                            const Operator& op);

OperatorSpan span_of(const std::vector<Matrix>& hermitian_ops, int dim,
                     double tol = kDefaultRankTol);

}  // namespace qeclie

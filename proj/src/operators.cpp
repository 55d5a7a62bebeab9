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

#include "qeclie/operators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qeclie/error.hpp"

namespace qeclie {

namespace {

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void require_square(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DimensionMismatch("operator must be a non-empty square matrix");
  }
}

}  // namespace

Spin::Spin(int twice_j) : twice_(twice_j) {
  if (twice_j < 1) throw InvalidInput("spin J must be at least 1/2");
}

Spin Spin::from_value(double j) {
  const double twice = 2.0 * j;
  const double rounded = std::round(twice);
  if (!std::isfinite(j) || std::abs(twice - rounded) > 1e-9 || rounded < 1) {
    throw InvalidInput("spin J must be a positive half-integer, got " +
                       std::to_string(j));
  }
  return Spin(static_cast<int>(rounded));
}

Operator::Operator(Matrix m) : m_(std::move(m)) { require_square(m_); }

Operator Operator::hermitian(Matrix m) {
  require_square(m);
  if (!qeclie::is_hermitian(m)) {
    throw InvalidInput("operator is not Hermitian");
  }
  Operator op;
  op.m_ = 0.5 * (m + m.adjoint());
  op.hermitian_ = true;
  return op;
}

Operator Operator::identity(int dim) {
  return hermitian(Matrix::Identity(dim, dim));
}

bool is_hermitian(const Matrix& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, max_abs(m));
  return max_abs(m - m.adjoint()) <= rel_tol * scale;
}

double unitarity_residual(const Matrix& u) {
  return max_abs(u.adjoint() * u - Matrix::Identity(u.cols(), u.cols()));
}

SubsystemLayout::SubsystemLayout(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw InvalidInput("layout needs at least one subsystem");
  for (int d : dims_) {
    if (d < 1) throw InvalidInput("subsystem dimensions must be positive");
    total_ *= d;
  }
}

SubsystemLayout SubsystemLayout::uniform(int d, int n) {
  if (n < 1) throw InvalidInput("layout needs at least one subsystem");
  return SubsystemLayout(std::vector<int>(static_cast<std::size_t>(n), d));
}

int SubsystemLayout::flatten(const std::vector<int>& k) const {
  if (k.size() != dims_.size()) {
    throw DimensionMismatch("index tuple length does not match layout");
  }
  int index = 0;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (k[i] < 0 || k[i] >= dims_[i]) {
      throw InvalidInput("index " + std::to_string(k[i]) +
                         " out of range for site " + std::to_string(i));
    }
    index = index * dims_[i] + k[i];
  }
  return index;
}

std::vector<int> SubsystemLayout::unflatten(int index) const {
  std::vector<int> k(dims_.size());
  for (std::size_t i = dims_.size(); i-- > 0;) {
    k[i] = index % dims_[i];
    index /= dims_[i];
  }
  return k;
}

SpinOps spin_ops(Spin j) {
  const int d = j.dim();
  const double jj = j.value();
  Matrix raise = Matrix::Zero(d, d);
  Matrix jz = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    const double m = k - jj;
    jz(k, k) = m;
    if (k + 1 < d) raise(k + 1, k) = std::sqrt(jj * (jj + 1) - m * (m + 1));
  }
  const Matrix lower = raise.adjoint();
  return {Operator::hermitian(0.5 * (raise + lower)),
          Operator::hermitian(cplx(0, -0.5) * (raise - lower)),
          Operator::hermitian(jz)};
}

Matrix embed_local(const Matrix& op, const SubsystemLayout& layout,
                   std::size_t site) {
  if (site >= layout.sites()) {
    throw InvalidInput("site " + std::to_string(site) + " out of range");
  }
  if (op.rows() != layout.dim(site) || op.cols() != layout.dim(site)) {
    throw DimensionMismatch("operator dimension does not match site " +
                            std::to_string(site));
  }
  int left = 1;
  int right = 1;
  for (std::size_t i = 0; i < site; ++i) left *= layout.dim(i);
  for (std::size_t i = site + 1; i < layout.sites(); ++i) right *= layout.dim(i);
  const int d = layout.dim(site);
  const int n = layout.total();
  Matrix out = Matrix::Zero(n, n);
  for (int l = 0; l < left; ++l) {
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        const cplx v = op(a, b);
        if (v == cplx(0)) continue;
        const int row0 = (l * d + a) * right;
        const int col0 = (l * d + b) * right;
        for (int r = 0; r < right; ++r) out(row0 + r, col0 + r) = v;
      }
    }
  }
  return out;
}

Operator embed_local(const Operator& op, const SubsystemLayout& layout,
                     std::size_t site) {
  Matrix m = embed_local(op.matrix(), layout, site);
  return op.is_hermitian() ? Operator::hermitian(std::move(m))
                           : Operator(std::move(m));
}

cplx hs_inner(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("hs_inner: dimension mismatch");
  }
  return (a.conjugate().cwiseProduct(b)).sum();
}

cplx hs_inner(const Operator& a, const Operator& b) {
  return hs_inner(a.matrix(), b.matrix());
}

double hs_norm(const Matrix& a) { return a.norm(); }

Operator expm_hermitian(const Operator& h, double t) {
  if (!h.is_hermitian() && !is_hermitian(h.matrix())) {
    throw InvalidInput("expm_hermitian: generator is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(h.matrix());
  const RealVector& w = eig.eigenvalues();
  Vector phases(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    phases(i) = std::exp(cplx(0, -t * w(i)));
  }
  const Matrix& v = eig.eigenvectors();
  return Operator(v * phases.asDiagonal() * v.adjoint());
}

RealVector hermitian_coordinates(const Matrix& h) {
  const Eigen::Index n = h.rows();
  RealVector x(n * n);
  Eigen::Index p = 0;
  for (Eigen::Index i = 0; i < n; ++i) x(p++) = h(i, i).real();
  const double s = std::sqrt(2.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      x(p++) = s * h(i, j).real();
      x(p++) = s * h(i, j).imag();
    }
  }
  return x;
}

Matrix hermitian_from_coordinates(const RealVector& x, int dim) {
  if (x.size() != static_cast<Eigen::Index>(dim) * dim) {
    throw DimensionMismatch("coordinate vector has wrong length");
  }
  Matrix h(dim, dim);
  Eigen::Index p = 0;
  for (int i = 0; i < dim; ++i) h(i, i) = x(p++);
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      const cplx v(s * x(p), s * x(p + 1));
      p += 2;
      h(i, j) = v;
      h(j, i) = std::conj(v);
    }
  }
  return h;
}

OperatorSpan::OperatorSpan(int dim, double tol) : dim_(dim), tol_(tol) {
  if (dim < 1) throw InvalidInput("span ambient dimension must be positive");
  if (!(tol > 0)) throw InvalidInput("span tolerance must be positive");
  frame_.resize(static_cast<Eigen::Index>(dim) * dim, 0);
}

double OperatorSpan::residual(const Matrix& h) const {
  if (h.rows() != dim_) throw DimensionMismatch("span: dimension mismatch");
  RealVector x = hermitian_coordinates(0.5 * (h + h.adjoint()));
  const auto q = frame();
  x -= q * (q.transpose() * x);
  x -= q * (q.transpose() * x);
  return x.norm();
}

bool OperatorSpan::contains(const Matrix& h) const {
  return residual(h) <= tol_ * std::max(1.0, h.norm());
}

OperatorSpan OperatorSpan::from_orthonormal_frame(RealMatrix frame, int dim,
                                                  double tol) {
  OperatorSpan span(dim, tol);
  if (frame.rows() != static_cast<Eigen::Index>(dim) * dim) {
    throw DimensionMismatch("frame rows must equal dim^2");
  }
  span.basis_.reserve(static_cast<std::size_t>(frame.cols()));
  for (Eigen::Index c = 0; c < frame.cols(); ++c) {
    span.basis_.push_back(
        Operator::hermitian(hermitian_from_coordinates(frame.col(c), dim)));
  }
  span.frame_ = std::move(frame);
  return span;
}

SpanBuilder::SpanBuilder(int dim, double tol) : span_(dim, tol) {}

SpanBuilder::SpanBuilder(OperatorSpan seed) : span_(std::move(seed)) {}

bool SpanBuilder::full() const {
  return span_.size() >=
         static_cast<std::size_t>(span_.dim()) * static_cast<std::size_t>(span_.dim());
}

void SpanBuilder::append(const RealVector& unit) {
  RealMatrix& f = span_.frame_;
  const Eigen::Index used = static_cast<Eigen::Index>(span_.size());
  if (f.cols() == used) {
    const Eigen::Index rows = unit.size();
    const Eigen::Index grown = std::min<Eigen::Index>(
        std::max<Eigen::Index>(16, 2 * used), rows);
    RealMatrix bigger(rows, std::max(grown, used + 1));
    if (used > 0) bigger.leftCols(used) = f.leftCols(used);
    f = std::move(bigger);
  }
  f.col(used) = unit;
  span_.basis_.push_back(
      Operator::hermitian(hermitian_from_coordinates(unit, span_.dim())));
}

double SpanBuilder::extend(const Matrix& h) {
  if (h.rows() != span_.dim() || h.cols() != span_.dim()) {
    throw DimensionMismatch("extend_span: dimension mismatch");
  }
  if (!is_hermitian(h, 1e-10)) {
    throw InvalidInput("extend_span: operator is not Hermitian");
  }
  RealVector x = hermitian_coordinates(h);
  const double scale = std::max(1.0, x.norm());
  const auto q = span_.frame();
  x -= q * (q.transpose() * x);
  x -= q * (q.transpose() * x);
  const double r = x.norm();
  if (r > span_.tol() * scale && !full()) append(x / r);
  return r;
}

double SpanBuilder::extend(const Operator& op) { return extend(op.matrix()); }

std::size_t SpanBuilder::extend_batch(const std::vector<Matrix>& candidates) {
  if (candidates.empty() || full()) return 0;
  const int dim = span_.dim();
  const Eigen::Index rows = static_cast<Eigen::Index>(dim) * dim;
  const Eigen::Index count = static_cast<Eigen::Index>(candidates.size());
  RealMatrix x(rows, count);
  RealVector scale(count);
  for (Eigen::Index c = 0; c < count; ++c) {
    const Matrix& h = candidates[static_cast<std::size_t>(c)];
    if (h.rows() != dim || h.cols() != dim) {
      throw DimensionMismatch("extend_span: dimension mismatch");
    }
    x.col(c) = hermitian_coordinates(0.5 * (h + h.adjoint()));
    scale(c) = std::max(1.0, x.col(c).norm());
  }
  const Eigen::Index start = static_cast<Eigen::Index>(span_.size());
  if (start > 0) {
    const auto q = span_.frame();
    x.noalias() -= q * (q.transpose() * x);
    x.noalias() -= q * (q.transpose() * x);
  }
  std::size_t added = 0;
  for (Eigen::Index c = 0; c < count && !full(); ++c) {
    RealVector v = x.col(c);
    const Eigen::Index now = static_cast<Eigen::Index>(span_.size());
    if (now > start) {
      const auto fresh = span_.frame_.middleCols(start, now - start);
      v -= fresh * (fresh.transpose() * v);
      v -= fresh * (fresh.transpose() * v);
    }
    const double r = v.norm();
    if (r > span_.tol() * scale(c)) {
      // Reorthogonalize against the full frame once more before accepting.
      const auto q = span_.frame();
      v -= q * (q.transpose() * v);
      const double r2 = v.norm();
      if (r2 > span_.tol() * scale(c)) {
        append(v / r2);
        ++added;
      }
    }
  }
  return added;
}

std::pair<OperatorSpan, double> extend_span(const OperatorSpan& span,
                                            const Operator& op) {
  SpanBuilder builder(span);
  const double r = builder.extend(op);
  return {std::move(builder).build(), r};
}

OperatorSpan span_of(const std::vector<Matrix>& hermitian_ops, int dim,
                     double tol) {
  SpanBuilder builder(dim, tol);
  for (const auto& h : hermitian_ops) builder.extend(h);
  return std::move(builder).build();
}

}  // namespace qeclie

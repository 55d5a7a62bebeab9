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

// Reference implementations used to cross-check the library. They favour
// directness over speed and share no code with src/.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline Mat spin_z(int twice_j) {
  const int d = twice_j + 1;
  Mat m = Mat::Zero(d, d);
  for (int k = 0; k < d; ++k) m(k, k) = k - 0.5 * twice_j;
  return m;
}

// <m+1|J+|m> = sqrt(J(J+1) - m(m+1)).
inline Mat spin_plus(int twice_j) {
  const int d = twice_j + 1;
  const double j = 0.5 * twice_j;
  Mat m = Mat::Zero(d, d);
  for (int k = 0; k + 1 < d; ++k) {
    const double mm = k - j;
    m(k + 1, k) = std::sqrt(j * (j + 1) - mm * (mm + 1));
  }
  return m;
}

inline Mat spin_x(int twice_j) {
  const Mat p = spin_plus(twice_j);
  return 0.5 * (p + p.adjoint());
}

inline Mat spin_y(int twice_j) {
  const Mat p = spin_plus(twice_j);
  return cplx(0, -0.5) * (p - p.adjoint());
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

// Real-linear rank of a list of matrices: SVD of [Re vec; Im vec] columns.
inline int real_rank(const std::vector<Mat>& ops, double tol = 1e-8) {
  if (ops.empty()) return 0;
  const Eigen::Index n = ops.front().size();
  Eigen::MatrixXd m(2 * n, static_cast<Eigen::Index>(ops.size()));
  for (std::size_t c = 0; c < ops.size(); ++c) {
    for (Eigen::Index i = 0; i < n; ++i) {
      m(i, static_cast<Eigen::Index>(c)) = ops[c].data()[i].real();
      m(n + i, static_cast<Eigen::Index>(c)) = ops[c].data()[i].imag();
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) r += s(i) > tol * std::max(1.0, s(0)) ? 1 : 0;
  return r;
}

// Real-linear basis (column-pivoted QR) of the Hermitian parts of `ops`.
inline std::vector<Mat> real_basis(const std::vector<Mat>& ops, double tol = 1e-8) {
  std::vector<Mat> out;
  for (const auto& op : ops) {
    std::vector<Mat> trial = out;
    trial.push_back(op);
    if (real_rank(trial, tol) > static_cast<int>(out.size())) out.push_back(op);
  }
  return out;
}

// Closure by brute force: add i[A,B] for all pairs until the rank stops.
inline int naive_closure_dim(std::vector<Mat> ops) {
  ops = real_basis(ops);
  for (;;) {
    std::vector<Mat> all = ops;
    for (std::size_t a = 0; a < ops.size(); ++a)
      for (std::size_t b = a + 1; b < ops.size(); ++b)
        all.push_back(cplx(0, 1) * (ops[a] * ops[b] - ops[b] * ops[a]));
    std::vector<Mat> next = real_basis(all);
    if (next.size() == ops.size()) return static_cast<int>(ops.size());
    ops = std::move(next);
  }
}

// <Phi| (id ⊗ E)(|Phi><Phi|) |Phi> with |Phi> = sum_i |i>|V i>/sqrt(K),
// built explicitly in the K*N dimensional space.
inline double entanglement_fidelity(const Mat& v, const std::function<Mat(const Mat&)>& channel) {
  const Eigen::Index k = v.cols(), n = v.rows();
  Eigen::VectorXcd phi = Eigen::VectorXcd::Zero(k * n);
  for (Eigen::Index i = 0; i < k; ++i) phi.segment(i * n, n) = v.col(i) / std::sqrt(double(k));
  const Mat rho = phi * phi.adjoint();
  Mat out = Mat::Zero(k * n, k * n);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j)
      out.block(i * n, j * n, n, n) = channel(rho.block(i * n, j * n, n, n));
  return (phi.adjoint() * out * phi)(0, 0).real();
}

// Column-stacked Lindblad generator for Hermitian jumps, exponentiated with
// Eigen's Pade-based matrix exponential.
inline Mat lindblad_superop(const std::vector<Mat>& jumps, const std::vector<double>& rates,
                            double t) {
  const Eigen::Index n = jumps.front().rows();
  const Mat id = Mat::Identity(n, n);
  Mat gen = Mat::Zero(n * n, n * n);
  for (std::size_t j = 0; j < jumps.size(); ++j) {
    const Mat& l = jumps[j];
    const Mat l2 = l.adjoint() * l;
    gen += rates[j] * (kron(l.conjugate(), l) - 0.5 * kron(id, l2) - 0.5 * kron(l2.transpose(), id));
  }
  return Mat(gen * t).exp();
}

inline Mat apply_superop(const Mat& s, const Mat& rho) {
  const Eigen::Index n = rho.rows();
  Eigen::VectorXcd v(n * n);
  for (Eigen::Index c = 0; c < n; ++c) v.segment(c * n, n) = rho.col(c);
  const Eigen::VectorXcd w = s * v;
  Mat out(n, n);
  for (Eigen::Index c = 0; c < n; ++c) out.col(c) = w.segment(c * n, n);
  return out;
}

inline Mat random_density(int n, unsigned seed) {
  std::srand(seed);
  const Mat a = Mat::Random(n, n);
  Mat rho = a * a.adjoint();
  return rho / rho.trace();
}

inline Mat random_hermitian(int n, unsigned seed) {
  std::srand(seed);
  const Mat a = Mat::Random(n, n);
  return 0.5 * (a + a.adjoint());
}

inline Mat random_unitary(int n, unsigned seed) {
  std::srand(seed);
  Eigen::HouseholderQR<Mat> qr(Mat::Random(n, n));
  return qr.householderQ() * Mat::Identity(n, n);
}

}  // namespace oracle

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

#include "qeclie/gates.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include <unsupported/Eigen/KroneckerProduct>

#include "qeclie/error.hpp"

namespace qeclie {

namespace {

Spin single_site_spin(const Code& code, const char* who) {
  if (code.layout().sites() != 1) {
    throw InvalidInput(std::string(who) + ": needs a single-subsystem code");
  }
  return Spin(code.physical_dim() - 1);
}

void require_qubit_code(const Code& code, const char* who) {
  if (code.logical_dim() != 2) {
    throw InvalidInput(std::string(who) + ": needs a K = 2 code");
  }
}

double leakage_of(const Matrix& gate, const Matrix& v) {
  const Matrix gv = gate * v;
  return (gv - v * (v.adjoint() * gv)).norm();
}

// Coordinate update for |X + e^{i t} Y|.
double best_angle(cplx x, cplx y) {
  if (std::abs(y) < 1e-300) return 0.0;
  if (std::abs(x) < 1e-300) return -std::arg(y);
  return std::arg(x) - std::arg(y);
}

int bit(int index, int q, int qubits) { return (index >> (qubits - 1 - q)) & 1; }

// max over pre/post per-qubit phase corrections of |sum_rc w_rc e^{i(a.r + b.c)}|.
double max_phase_corrected(const Matrix& w, int qubits) {
  const int k = static_cast<int>(w.rows());
  const int params = 2 * qubits;
  const std::array<double, 4> grid{0.0, std::numbers::pi / 2, std::numbers::pi,
                                   3 * std::numbers::pi / 2};
  auto evaluate = [&](const std::vector<double>& th, int skip, cplx* x, cplx* y) {
    cplx sx = 0, sy = 0;
    for (int r = 0; r < k; ++r) {
      for (int c = 0; c < k; ++c) {
        double angle = 0.0;
        bool in_y = false;
        for (int q = 0; q < qubits; ++q) {
          if (bit(r, q, qubits)) {
            if (q == skip) in_y = true; else angle += th[static_cast<std::size_t>(q)];
          }
          if (bit(c, q, qubits)) {
            if (qubits + q == skip) in_y = true; else angle += th[static_cast<std::size_t>(qubits + q)];
          }
        }
        const cplx term = w(r, c) * std::exp(cplx(0, angle));
        if (in_y) sy += term; else sx += term;
      }
    }
    if (x) *x = sx;
    if (y) *y = sy;
  };
  double best = 0.0;
  const int starts = 1 << (2 * params);
  for (int s = 0; s < starts; ++s) {
    std::vector<double> th(static_cast<std::size_t>(params));
    for (int p = 0; p < params; ++p) th[static_cast<std::size_t>(p)] = grid[static_cast<std::size_t>((s >> (2 * p)) & 3)];
    double value = 0.0;
    for (int sweep = 0; sweep < 200; ++sweep) {
      for (int p = 0; p < params; ++p) {
        cplx x, y;
        evaluate(th, p, &x, &y);
        th[static_cast<std::size_t>(p)] = best_angle(x, y);
      }
      cplx x, y;
      evaluate(th, -1, &x, &y);
      const double next = std::abs(x + y);
      if (next - value < 1e-15) {
        value = std::max(value, next);
        break;
      }
      value = next;
    }
    best = std::max(best, value);
  }
  return best;
}

}  // namespace

SupportSets m_support_sets(const Code& code, const OperatorSpan& errors) {
  if (code.layout().sites() != 1) {
    throw InvalidInput("m_support_sets: needs a single-subsystem code");
  }
  require_qubit_code(code, "m_support_sets");
  if (errors.dim() != code.physical_dim()) {
    throw DimensionMismatch("m_support_sets: error span dimension mismatch");
  }
  SupportSets out;
  const Matrix& v = code.isometry();
  for (const auto& e : errors.basis()) {
    const Matrix ev = e.matrix() * v;
    for (Eigen::Index k = 0; k < ev.rows(); ++k) {
      if (std::abs(ev(k, 0)) > kSupportThreshold) out.m0.insert(static_cast<int>(k));
      if (std::abs(ev(k, 1)) > kSupportThreshold) out.m1.insert(static_cast<int>(k));
    }
  }
  for (int k : out.m1) {
    if (out.m0.count(k)) {
      throw PreconditionError("m_support_sets: error images of |0>_L and |1>_L overlap at k = " +
                              std::to_string(k));
    }
  }
  return out;
}

LogicalCheck verify_logical(const Matrix& gate, const Code& code, const Matrix& target,
                            bool allow_phase_correction) {
  const Matrix& v = code.isometry();
  const int k = code.logical_dim();
  if (gate.rows() != code.physical_dim() || gate.cols() != code.physical_dim()) {
    throw DimensionMismatch("verify_logical: gate dimension does not match code");
  }
  if (target.rows() != k || target.cols() != k) {
    throw DimensionMismatch("verify_logical: target must be K x K");
  }
  const double leak = leakage_of(gate, v);
  if (leak > kLeakageTol) {
    throw PreconditionError("verify_logical: gate leaks out of the codespace (‖(1-P)GP‖ = " +
                            std::to_string(leak) + ")");
  }
  LogicalCheck out;
  out.logical_action = v.adjoint() * (gate * v);
  const double raw = std::abs((target.adjoint() * out.logical_action).trace()) / k;
  out.fidelity = raw;
  if (allow_phase_correction && (k & (k - 1)) == 0 && k > 1) {
    const int qubits = static_cast<int>(std::lround(std::log2(k)));
    const Matrix w = target.conjugate().cwiseProduct(out.logical_action);
    const double corrected = max_phase_corrected(w, qubits) / k;
    if (corrected > raw + 1e-12) {
      out.fidelity = corrected;
      out.phase_corrected = true;
    }
  }
  out.fidelity = std::min(out.fidelity, 1.0 + 1e-12);
  return out;
}

std::vector<double> transparency_check(const Matrix& gate, const Code& code,
                                       const OperatorSpan& errors) {
  if (errors.dim() != code.physical_dim() || gate.rows() != code.physical_dim()) {
    throw DimensionMismatch("transparency_check: dimension mismatch");
  }
  const Matrix& v = code.isometry();
  const Matrix gv = gate * v;
  const Eigen::Index rows = v.rows() * v.cols();
  const Eigen::Index m = static_cast<Eigen::Index>(errors.size());
  Matrix images(rows, m);
  for (Eigen::Index b = 0; b < m; ++b) {
    const Matrix egv = errors[static_cast<std::size_t>(b)].matrix() * gv;
    images.col(b) = Eigen::Map<const Vector>(egv.data(), rows);
  }
  const Eigen::CompleteOrthogonalDecomposition<Matrix> lsq(images);
  std::vector<double> residuals;
  residuals.reserve(static_cast<std::size_t>(m));
  for (Eigen::Index a = 0; a < m; ++a) {
    const Matrix gev = gate * (errors[static_cast<std::size_t>(a)].matrix() * v);
    const Vector y = Eigen::Map<const Vector>(gev.data(), rows);
    const double norm = y.norm();
    if (norm < 1e-14) {
      residuals.push_back(0.0);
      continue;
    }
    const Vector coeffs = lsq.solve(y);
    residuals.push_back((y - images * coeffs).norm() / norm);
  }
  return residuals;
}

namespace {

GateCert certify(Matrix gate, const Code& code, const OperatorSpan& errors, const Matrix& target,
                 bool allow_correction) {
  GateCert cert;
  cert.leakage = leakage_of(gate, code.isometry());
  const LogicalCheck check = verify_logical(gate, code, target, allow_correction);
  cert.logical_action = check.logical_action;
  cert.logical_fidelity = check.fidelity;
  cert.phase_corrected = check.phase_corrected;
  cert.transparency_residuals = transparency_check(gate, code, errors);
  cert.gate = Operator(std::move(gate));
  return cert;
}

}  // namespace

GateCert phase_gate(const Code& code, const OperatorSpan& errors, double phi) {
  const SupportSets supports = m_support_sets(code, errors);
  const int n = code.physical_dim();
  Matrix g = Matrix::Identity(n, n);
  const cplx ph = std::exp(cplx(0, phi));
  for (int k : supports.m1) g(k, k) = ph;
  return certify(std::move(g), code, errors, phase_target(phi), false);
}

SxAction sx_action(Spin j, bool flip_jx_sign) {
  const SpinOps ops = spin_ops(j);
  const Matrix jx = flip_jx_sign ? Matrix(-ops.x.matrix()) : ops.x.matrix();
  const Operator h = Operator::hermitian(jx + ops.x.matrix() * ops.x.matrix());
  const Matrix u = expm_hermitian(h, std::numbers::pi / 2).matrix();
  const int d = j.dim();
  SxAction fit;
  const double r2 = std::sqrt(2.0);
  fit.global_phase = u(0, 0) * r2;
  fit.global_phase /= std::abs(fit.global_phase);
  fit.mirror_phase = u(d - 1, 0) / u(0, 0);
  fit.mirror_phase /= std::abs(fit.mirror_phase);
  for (int k = 0; k < d; ++k) {
    Vector expected = Vector::Zero(d);
    expected(k) += fit.global_phase / r2;
    expected(d - 1 - k) += fit.global_phase * fit.mirror_phase / r2;
    fit.residual = std::max(fit.residual, (u.col(k) - expected).norm());
  }
  return fit;
}

GateCert sx_gate(const Code& code, const OperatorSpan& errors) {
  require_qubit_code(code, "sx_gate");
  const Spin j = single_site_spin(code, "sx_gate");
  const SpinOps ops = spin_ops(j);
  const Operator h = Operator::hermitian(ops.x.matrix() + ops.x.matrix() * ops.x.matrix());
  Matrix u = expm_hermitian(h, std::numbers::pi / 2).matrix();
  return certify(std::move(u), code, errors, sx_target(), true);
}

GateCert cz_gate(const Code& code, const OperatorSpan& errors) {
  const SupportSets supports = m_support_sets(code, errors);
  const Spin j = single_site_spin(code, "cz_gate");
  const int n = code.physical_dim();
  const long long big = static_cast<long long>(n) * n;
  if (big > 1024) {
    throw CapabilityError("cz_gate: N^2 = " + std::to_string(big) + " exceeds the dense cap 1024");
  }
  const Code pair = tensor_code(code, code);
  Matrix g = Matrix::Identity(n * n, n * n);
  for (int k : supports.m1) {
    for (int kp = 0; kp < n; ++kp) {
      g(k * n + kp, k * n + kp) = std::exp(cplx(0, -std::numbers::pi * (kp - j.value())));
    }
  }
  const Matrix id = Matrix::Identity(n, n);
  std::vector<Matrix> two_site;
  for (const auto& e : errors.basis()) {
    two_site.push_back(Eigen::kroneckerProduct(e.matrix(), id));
    two_site.push_back(Eigen::kroneckerProduct(id, e.matrix()));
  }
  const OperatorSpan pair_errors = span_of(two_site, n * n);
  return certify(std::move(g), pair, pair_errors, cz_target(), true);
}

Operator logical_pauli(Spin j, PauliAxis axis) {
  const SpinOps ops = spin_ops(j);
  const Operator& h = axis == PauliAxis::x ? ops.x : axis == PauliAxis::y ? ops.y : ops.z;
  return expm_hermitian(h, std::numbers::pi);
}

Matrix phase_target(double phi) {
  Matrix t = Matrix::Identity(2, 2);
  t(1, 1) = std::exp(cplx(0, phi));
  return t;
}

Matrix sx_target() {
  Matrix t(2, 2);
  t << cplx(1, 1), cplx(1, -1), cplx(1, -1), cplx(1, 1);
  return 0.5 * t;
}

Matrix cz_target() {
  Matrix t = Matrix::Identity(4, 4);
  t(3, 3) = -1.0;
  return t;
}

Matrix pauli_target(PauliAxis axis) {
  Matrix t(2, 2);
  switch (axis) {
    case PauliAxis::x:
      t << 0, 1, 1, 0;
      break;
    case PauliAxis::y:
      t << 0, cplx(0, -1), cplx(0, 1), 0;
      break;
    case PauliAxis::z:
      t << 1, 0, 0, -1;
      break;
  }
  return t;
}

Matrix haar_unitary(int k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix z(k, k);
  for (int c = 0; c < k; ++c) {
    for (int r = 0; r < k; ++r) z(r, c) = cplx(normal(rng), normal(rng));
  }
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ() * Matrix::Identity(k, k);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < k; ++c) {
    const cplx d = r(c, c);
    if (std::abs(d) > 0) q.col(c) *= d / std::abs(d);
  }
  return q;
}

DensityWitness density_witness(const Matrix& phase0, const Matrix& phase1,
                               const Matrix& sx_action_matrix, const std::vector<Matrix>& targets) {
  const std::array<double, 4> grid{0.0, std::numbers::pi / 2, std::numbers::pi,
                                   3 * std::numbers::pi / 2};
  auto ph = [&](double t) -> Matrix { return phase0 + std::exp(cplx(0, t)) * phase1; };
  const Matrix& s = sx_action_matrix;
  DensityWitness out;
  out.min_fidelity = 1.0;
  for (const Matrix& target : targets) {
    const Matrix td = target.adjoint();
    double best = 0.0;
    for (int start = 0; start < 64; ++start) {
      std::array<double, 3> th{grid[start & 3], grid[(start >> 2) & 3], grid[(start >> 4) & 3]};
      double value = 0.0;
      for (int sweep = 0; sweep < 200; ++sweep) {
        {
          const Matrix rest = s * ph(th[1]) * s * ph(th[2]);
          th[0] = best_angle((td * phase0 * rest).trace(), (td * phase1 * rest).trace());
        }
        {
          const Matrix left = td * ph(th[0]) * s;
          const Matrix right = s * ph(th[2]);
          th[1] = best_angle((left * phase0 * right).trace(), (left * phase1 * right).trace());
        }
        {
          const Matrix left = td * ph(th[0]) * s * ph(th[1]) * s;
          th[2] = best_angle((left * phase0).trace(), (left * phase1).trace());
        }
        const double next =
            std::abs((td * ph(th[0]) * s * ph(th[1]) * s * ph(th[2])).trace()) / target.rows();
        if (next - value < 1e-15) {
          value = std::max(value, next);
          break;
        }
        value = next;
      }
      best = std::max(best, value);
    }
    out.fidelities.push_back(best);
    out.min_fidelity = std::min(out.min_fidelity, best);
  }
  return out;
}

}  // namespace qeclie

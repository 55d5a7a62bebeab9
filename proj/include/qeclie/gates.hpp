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

#include <cstdint>
#include <set>
#include <vector>

#include "qeclie/codes.hpp"
#include "qeclie/operators.hpp"

namespace qeclie {

inline constexpr double kSupportThreshold = 1e-12;
inline constexpr double kLeakageTol = 1e-8;

/// Basis indices k reached from |0>_L (m0) and |1>_L (m1) by the error
/// basis. Single-subsystem K = 2 codes only; overlapping sets throw
/// PreconditionError.
struct SupportSets {
  std::set<int> m0;
  std::set<int> m1;
};
SupportSets m_support_sets(const Code& code, const OperatorSpan& errors);

struct GateCert {
  Operator gate;
  Matrix logical_action;
  double logical_fidelity = 0.0;
  bool phase_corrected = false;
  std::vector<double> transparency_residuals;
  /// ‖(1 - P) G P‖_HS
  double leakage = 0.0;
};

struct LogicalCheck {
  double fidelity = 0.0;
  bool phase_corrected = false;
  Matrix logical_action;
};

/// |tr(target† V† G V)| / K, optionally maximized over products of logical
/// phase gates applied before and after (K must be a power of two for the
/// per-qubit correction family). Throws PreconditionError on leakage.
LogicalCheck verify_logical(const Matrix& gate, const Code& code, const Matrix& target,
                            bool allow_phase_correction);

/// Relative least-squares residual of G E_a P against span{E_b G P}, one per
/// error-basis element.
std::vector<double> transparency_check(const Matrix& gate, const Code& code,
                                       const OperatorSpan& errors);

/// 1 off m1, e^{i phi} on m1.
GateCert phase_gate(const Code& code, const OperatorSpan& errors, double phi);

/// Fit of exp(-i pi/2 (Jx + Jx^2))|m> = g (|m> + s |-m>)/sqrt(2), with g and
/// s common to all m.
struct SxAction {
  cplx global_phase;
  cplx mirror_phase;
  double residual = 0.0;
};
SxAction sx_action(Spin j, bool flip_jx_sign = false);

/// exp(-i pi/2 (Jx + Jx^2)) on a single spin code; target logical SX.
GateCert sx_gate(const Code& code, const OperatorSpan& errors);

/// Two copies of `code`; sum_{k not in m1}|k><k| x 1 + sum_{k in m1}|k><k| x
/// exp(-i pi Jz). Transparency is measured against {E x 1, 1 x E}.
GateCert cz_gate(const Code& code, const OperatorSpan& errors);

enum class PauliAxis { x, y, z };
/// exp(-i pi J_axis).
Operator logical_pauli(Spin j, PauliAxis axis);

Matrix phase_target(double phi);
Matrix sx_target();
Matrix cz_target();
Matrix pauli_target(PauliAxis axis);

/// Haar-distributed k x k unitary (QR of a complex Ginibre matrix).
Matrix haar_unitary(int k, std::uint64_t seed);

/// Approximates single-qubit targets with Ph(a) SX Ph(b) SX Ph(c) built from
/// certified logical actions: Ph(t) = phase0 + e^{i t} phase1.
struct DensityWitness {
  std::vector<double> fidelities;
  double min_fidelity = 0.0;
  int depth = 5;
};
DensityWitness density_witness(const Matrix& phase0, const Matrix& phase1,
                               const Matrix& sx_action_matrix,
                               const std::vector<Matrix>& targets);

}  // namespace qeclie

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

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "qeclie/error.hpp"
#include "qeclie/gates.hpp"

using namespace qeclie;

namespace {

const double kPi = std::numbers::pi;

double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

const OperatorSpan& e2() {
  static const OperatorSpan s = graded_span(spin_error_set(Spin(25), 2));
  return s;
}

// Distance to a*M for the best global phase a.
double phase_distance(const Matrix& a, const Matrix& b) {
  const cplx overlap = (b.adjoint() * a).trace();
  const cplx phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : cplx(1, 0);
  return max_abs(a - phase * b);
}

// Shift rule: codeword support k +- 2, clipped.
std::set<int> shifted_support(const std::vector<int>& ks, int d) {
  std::set<int> out;
  for (int k : ks)
    for (int s = -2; s <= 2; ++s)
      if (k + s >= 0 && k + s < d) out.insert(k + s);
  return out;
}

}  // namespace

TEST_CASE("m_support_sets") {
  SUBCASE("J=25/2 with E_2") {
    const SupportSets s = m_support_sets(code_spin25(), e2());
    CHECK(s.m1 == shifted_support({25, 15, 5}, 26));
    CHECK(s.m0 == shifted_support({0, 10, 20}, 26));
    CHECK(s.m1.size() == 13);
    for (int k : s.m1) CHECK(s.m0.count(k) == 0);
  }
  SUBCASE("span{1} gives the codeword supports") {
    const SupportSets s = m_support_sets(code_spin25(), span_of({Matrix(Matrix::Identity(26, 26))}, 26));
    CHECK(s.m0 == std::set<int>{0, 10, 20});
    CHECK(s.m1 == std::set<int>{5, 15, 25});
  }
  SUBCASE("spin-cat with {1, Jx}") {
    const SupportSets s = m_support_sets(code_spin_cat(Spin(5)),
                                         graded_span(spin_error_set(Spin(5), 1, SpinAxes::x)));
    CHECK(s.m0 == std::set<int>{0, 1});
    CHECK(s.m1 == std::set<int>{4, 5});
  }
  SUBCASE("overlap is rejected") {
    CHECK_THROWS_AS(m_support_sets(code_spin25(), graded_span(spin_error_set(Spin(25), 3))),
                    PreconditionError);
  }
}

TEST_CASE("phase gate") {
  const Code c = code_spin25();
  CHECK(max_abs(phase_gate(c, e2(), 0.0).gate.matrix() - Matrix::Identity(26, 26)) == 0.0);
  const GateCert g = phase_gate(c, e2(), kPi / 2);
  CHECK(g.logical_fidelity >= 1 - 1e-10);
  CHECK(std::abs(g.logical_action(1, 1) - cplx(0, 1)) < 1e-12);
  CHECK(std::abs(g.logical_action(0, 0) - 1.0) < 1e-12);
  CHECK_FALSE(g.phase_corrected);
  CHECK(g.leakage <= 1e-8);
  for (double r : g.transparency_residuals) CHECK(r <= 1e-8);
  const Matrix a = phase_gate(c, e2(), 0.7).gate.matrix();
  const Matrix b = phase_gate(c, e2(), -0.7).gate.matrix();
  CHECK(max_abs(a * b - Matrix::Identity(26, 26)) < 1e-15);
  const Matrix ab = phase_gate(c, e2(), 0.3).gate.matrix() * phase_gate(c, e2(), 1.1).gate.matrix();
  CHECK(max_abs(ab - phase_gate(c, e2(), 1.4).gate.matrix()) < 1e-15);
}

TEST_CASE("SX per-level action") {
  for (int tw : {5, 25}) {
    const SxAction a = sx_action(Spin(tw));
    CHECK(a.residual <= 1e-8);
    CHECK(std::abs(a.mirror_phase - cplx(0, -1)) < 1e-8);
    const SxAction f = sx_action(Spin(tw), true);
    CHECK(f.residual <= 1e-8);
    CHECK(std::abs(f.mirror_phase - cplx(0, 1)) < 1e-8);
  }
  // The sign depends on 2J mod 4.
  CHECK(std::abs(sx_action(Spin(3)).mirror_phase - cplx(0, 1)) < 1e-8);
}

TEST_CASE("SX gate on the J=25/2 code") {
  const Code c = code_spin25();
  const GateCert g = sx_gate(c, e2());
  CHECK(g.logical_fidelity >= 1 - 1e-8);
  CHECK(g.logical_fidelity <= 1 + 1e-12);
  CHECK(unitarity_residual(g.gate.matrix()) <= 1e-10);
  CHECK(g.leakage <= 1e-8);
  // The logical action equals SX up to a global phase.
  CHECK(phase_distance(g.logical_action, sx_target()) < 1e-8);
  const Matrix u2 = g.gate.matrix() * g.gate.matrix();
  CHECK(verify_logical(u2, c, pauli_target(PauliAxis::x), false).fidelity >= 1 - 1e-8);
  const Matrix u4 = u2 * u2;
  CHECK(verify_logical(u4, c, Matrix::Identity(2, 2), false).fidelity >= 1 - 1e-8);
}

TEST_CASE("CZ gate on two J=25/2 blocks") {
  const Code c = code_spin25();
  const GateCert g = cz_gate(c, e2());
  CHECK(g.logical_fidelity >= 1 - 1e-8);
  CHECK(g.phase_corrected);
  CHECK(g.gate.dim() == 676);
  CHECK(unitarity_residual(g.gate.matrix()) <= 1e-10);
  const Matrix jz1 = oracle::kron(oracle::spin_z(25), Matrix::Identity(26, 26));
  CHECK(max_abs(g.gate.matrix() * jz1 - jz1 * g.gate.matrix()) < 1e-12);
  // Oracle: logical action diag(1, 1, i, -i) = CZ after a phase fix on the first block.
  const Matrix act = g.logical_action;
  CHECK(std::abs(act(0, 0) - 1.0) < 1e-12);
  CHECK(std::abs(act(1, 1) - 1.0) < 1e-12);
  CHECK(std::abs(act(2, 2) - cplx(0, 1)) < 1e-12);
  CHECK(std::abs(act(3, 3) - cplx(0, -1)) < 1e-12);
  CHECK_THROWS_AS(cz_gate(code_spin_cat(Spin(63)), graded_span(spin_error_set(Spin(63), 1, SpinAxes::x))),
                  CapabilityError);
}

TEST_CASE("e^{-i pi Jz} is diagonal with phases e^{-i pi (k - J)}") {
  const Matrix u = expm_hermitian(spin_ops(Spin(25)).z, kPi).matrix();
  for (int k = 0; k < 26; ++k)
    CHECK(std::abs(u(k, k) - std::exp(cplx(0, -kPi * (k - 12.5)))) < 1e-12);
}

TEST_CASE("logical Paulis") {
  const Code c = code_spin25();
  const Matrix x = logical_pauli(Spin(25), PauliAxis::x).matrix();
  CHECK(verify_logical(x, c, pauli_target(PauliAxis::x), true).fidelity >= 1 - 1e-8);
  for (int tw : {3, 4, 25}) {
    const Matrix xl = logical_pauli(Spin(tw), PauliAxis::x).matrix();
    const double sign = tw % 2 == 0 ? 1.0 : -1.0;
    CHECK(max_abs(xl * xl - sign * Matrix::Identity(tw + 1, tw + 1)) < 1e-10);
  }
  const Matrix z = logical_pauli(Spin(4), PauliAxis::z).matrix();
  CHECK(max_abs(z - Matrix(z.diagonal().asDiagonal())) < 1e-12);
}

TEST_CASE("verify_logical") {
  const Code c = code_spin25();
  CHECK(verify_logical(Matrix::Identity(26, 26), c, Matrix::Identity(2, 2), false).fidelity ==
        doctest::Approx(1.0));
  const Matrix p = phase_gate(c, e2(), kPi).gate.matrix();
  CHECK(verify_logical(p, c, pauli_target(PauliAxis::z), false).fidelity >= 1 - 1e-10);
  // Negative control: a random logical unitary (no leakage) is far from Z.
  const Matrix& v = c.isometry();
  int far = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Matrix u = haar_unitary(2, seed);
    const Matrix g = v * u * v.adjoint() + (Matrix::Identity(26, 26) - v * v.adjoint());
    far += verify_logical(g, c, pauli_target(PauliAxis::z), false).fidelity < 0.99 ? 1 : 0;
  }
  CHECK(far == 10);
  const Matrix shift = expm_hermitian(spin_ops(Spin(25)).x, 0.3).matrix();
  CHECK_THROWS_AS(verify_logical(shift, c, Matrix::Identity(2, 2), false), PreconditionError);
}

TEST_CASE("transparency") {
  const Code c = code_spin25();
  for (double r : transparency_check(Matrix::Identity(26, 26), c, e2())) CHECK(r < 1e-14);
  const Matrix rnd = haar_unitary(26, 5);
  double worst = 0;
  for (double r : transparency_check(rnd, c, e2())) worst = std::max(worst, r);
  CHECK(worst > 1e-3);
}

TEST_CASE("haar_unitary is unitary and seeded") {
  const Matrix a = haar_unitary(3, 42), b = haar_unitary(3, 42), d = haar_unitary(3, 43);
  CHECK(unitarity_residual(a) < 1e-12);
  CHECK(max_abs(a - b) == 0.0);
  CHECK(max_abs(a - d) > 1e-3);
}

TEST_CASE("density witness") {
  const Code c = code_spin25();
  const Matrix a0 = phase_gate(c, e2(), 0.0).logical_action;
  const Matrix api = phase_gate(c, e2(), kPi).logical_action;
  const Matrix sx = sx_gate(c, e2()).logical_action;
  std::vector<Matrix> targets;
  for (int i = 0; i < 20; ++i) targets.push_back(haar_unitary(2, 1000 + i));
  const DensityWitness w = density_witness(0.5 * (a0 + api), 0.5 * (a0 - api), sx, targets);
  CHECK(w.depth <= 6);
  CHECK(w.fidelities.size() == 20);
  CHECK(w.min_fidelity >= 0.99);
  // Phases alone cannot reach a generic target.
  const DensityWitness weak = density_witness(0.5 * (a0 + api), 0.5 * (a0 - api),
                                              Matrix::Identity(2, 2), targets);
  CHECK(weak.min_fidelity < 0.99);
}

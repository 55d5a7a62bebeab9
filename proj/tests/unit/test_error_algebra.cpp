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

#include "doctest.h"
#include "oracles.hpp"
#include "qeclie/error.hpp"
#include "qeclie/error_algebra.hpp"

using namespace qeclie;

namespace {

std::vector<Matrix> spin_generators(int tw) {
  return {Matrix::Identity(tw + 1, tw + 1), oracle::spin_x(tw), oracle::spin_y(tw),
          oracle::spin_z(tw)};
}

// All products of <= t generators, split into Hermitian parts.
std::vector<Matrix> product_parts(const std::vector<Matrix>& gens, int t) {
  std::vector<Matrix> level{Matrix::Identity(gens[0].rows(), gens[0].cols())};
  std::vector<Matrix> all = level;
  for (int g = 0; g < t; ++g) {
    std::vector<Matrix> next;
    for (const auto& a : level)
      for (const auto& b : gens) next.push_back(a * b);
    for (const auto& p : next) {
      all.push_back(0.5 * (p + p.adjoint()));
      all.push_back(cplx(0, -0.5) * (p - p.adjoint()));
    }
    level = std::move(next);
  }
  return all;
}

std::vector<Matrix> conjugated(const std::vector<Matrix>& ops, const Matrix& u) {
  std::vector<Matrix> out;
  for (const auto& m : ops) {
    const Matrix c = u * m * u.adjoint();
    out.push_back(0.5 * (c + c.adjoint()));
  }
  return out;
}

}  // namespace

TEST_CASE("graded_span dimensions") {
  CHECK(graded_span(spin_error_set(Spin(7), 1)).size() == 4);
  for (int tw = 4; tw <= 12; ++tw) CHECK(graded_span(spin_error_set(Spin(tw), 2)).size() == 9);
  const SubsystemLayout q({2});
  CHECK(graded_span(pauli_weight1_error_set(q).with_grade(2)).size() == 4);
  CHECK(graded_span(spin_error_set(Spin(25), 3)).size() == 16);
  CHECK(graded_span(spin_error_set(Spin(5), 0)).size() == 1);
}

TEST_CASE("graded_span agrees with a brute-force rank over products") {
  for (int tw : {2, 3, 5}) {
    for (int t = 1; t <= 3; ++t) {
      const auto expect = oracle::real_rank(product_parts(spin_generators(tw), t));
      CHECK(static_cast<int>(graded_span(spin_error_set(Spin(tw), t)).size()) == expect);
    }
  }
}

TEST_CASE("grade monotonicity and saturation") {
  for (int tw = 1; tw <= 6; ++tw) {
    std::size_t prev = 0;
    const std::size_t full = static_cast<std::size_t>((tw + 1) * (tw + 1));
    for (int t = 0; t <= tw + 2; ++t) {
      const std::size_t d = graded_span(spin_error_set(Spin(tw), t)).size();
      CHECK(d >= prev);
      if (t >= tw) CHECK(d == full);
      prev = d;
    }
  }
}

TEST_CASE("GradedErrorSet validation") {
  const SubsystemLayout lay({3});
  CHECK_THROWS_AS(GradedErrorSet({}, 1, lay), InvalidInput);
  CHECK_THROWS_AS(GradedErrorSet({spin_ops(Spin(2)).x}, 1, lay), InvalidInput);
  CHECK_THROWS_AS(GradedErrorSet({Operator::identity(2)}, 1, lay), DimensionMismatch);
  CHECK_THROWS_AS(GradedErrorSet({Operator::identity(3)}, -1, lay), InvalidInput);
}

TEST_CASE("lie_closure examples") {
  for (int tw = 1; tw <= 7; ++tw) {
    const ClosureReport r = lie_closure(graded_span(spin_error_set(Spin(tw), 1)));
    CHECK(r.closure_dim == 4);
    CHECK(r.closed == true);
    CHECK(r.universal == (tw == 1));
  }
  for (int tw : {4, 5, 6}) {
    const ClosureReport r = lie_closure(graded_span(spin_error_set(Spin(tw), 2)));
    CHECK(r.closure_dim == (tw + 1) * (tw + 1));
    CHECK(r.universal);
    CHECK(universality_check(r));
  }
  const SpinOps s = spin_ops(Spin(5));
  const Matrix x = s.x.matrix();
  const OperatorSpan cat = span_of({Matrix::Identity(6, 6), s.z.matrix(), x, x * x}, 6);
  const ClosureReport r = lie_closure(cat);
  CHECK(r.input_dim == 4);
  CHECK(r.closure_dim == 36);
  CHECK(r.universal);
  CHECK(r.ambient == 6);
}

TEST_CASE("continuity_check") {
  for (int tw = 1; tw <= 6; ++tw) {
    CHECK_FALSE(continuity_check(graded_span(spin_error_set(Spin(tw), 1))));
    const Matrix x = oracle::spin_x(tw);
    CHECK_FALSE(continuity_check(span_of({Matrix::Identity(tw + 1, tw + 1), x, x * x}, tw + 1)));
  }
  const Matrix x = oracle::spin_x(5);
  CHECK(continuity_check(span_of({Matrix::Identity(6, 6), oracle::spin_z(5), x, x * x}, 6)));
}

TEST_CASE("universality_check on the qubit Pauli span") {
  const ClosureReport r = lie_closure(graded_span(pauli_weight1_error_set(SubsystemLayout({2}))));
  CHECK(universality_check(r));
}

TEST_CASE("universality needs the identity") {
  // su(2) on a qubit without the identity: dim 3 = N^2 - 1, but 1 is absent.
  const SpinOps s = spin_ops(Spin(1));
  const OperatorSpan su2 = span_of({s.x.matrix(), s.y.matrix(), s.z.matrix()}, 2);
  const ClosureReport r = lie_closure(su2);
  CHECK(r.closure_dim == 3);
  CHECK_FALSE(universality_check(r));
}

TEST_CASE("lie_closure matches a brute-force closure on random spans") {
  for (unsigned seed = 0; seed < 6; ++seed) {
    const int d = 2 + static_cast<int>(seed % 3);
    std::vector<Matrix> gens{Matrix::Identity(d, d)};
    const Matrix h = oracle::random_hermitian(d, 50 + seed);
    // Diagonal generators plus one random Hermitian: closures vary in size.
    Matrix diag = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i) diag(i, i) = i * i;
    gens.push_back(diag);
    if (seed % 2 == 0) gens.push_back(h);
    const ClosureReport r = lie_closure(span_of(gens, d));
    CHECK(r.closure_dim == oracle::naive_closure_dim(gens));
  }
}

TEST_CASE("closure properties") {
  const Matrix x = oracle::spin_x(4), z = oracle::spin_z(4), id = Matrix::Identity(5, 5);
  const OperatorSpan a = span_of({id, x}, 5);
  const OperatorSpan b = span_of({id, x, z}, 5);
  const OperatorSpan c = span_of({id, x, z * z}, 5);
  const ClosureReport ra = lie_closure(a), rb = lie_closure(b), rc = lie_closure(c);
  SUBCASE("monotone") {
    CHECK(ra.closure_dim <= rb.closure_dim);
    CHECK(ra.closure_dim <= rc.closure_dim);
  }
  SUBCASE("fixed point") {
    CHECK(lie_closure(rc.closure_basis).closure_dim == rc.closure_dim);
    CHECK(lie_closure(rc.closure_basis).closed);
  }
  SUBCASE("unitary invariance") {
    const Matrix u = oracle::random_unitary(5, 9);
    const OperatorSpan cu = span_of(conjugated({id, x, z * z}, u), 5);
    CHECK(lie_closure(cu).closure_dim == rc.closure_dim);
    const OperatorSpan e2 = graded_span(spin_error_set(Spin(4), 2));
    std::vector<Matrix> mats;
    for (const auto& m : e2.basis()) mats.push_back(m.matrix());
    CHECK(lie_closure(span_of(conjugated(mats, u), 5)).closure_dim == 25);
  }
  SUBCASE("thread count does not change the basis") {
    const OperatorSpan e2 = graded_span(spin_error_set(Spin(5), 2));
    const ClosureReport r1 = lie_closure(e2, {1, 64});
    const ClosureReport r4 = lie_closure(e2, {4, 64});
    CHECK(r1.closure_dim == r4.closure_dim);
    CHECK((RealMatrix(r1.closure_basis.frame()) - RealMatrix(r4.closure_basis.frame()))
              .cwiseAbs()
              .maxCoeff() == 0.0);
    CHECK(lie_closure(e2, {1, 7}).closure_dim == r1.closure_dim);
  }
}

TEST_CASE("closure report invariants") {
  const ClosureReport r = lie_closure(graded_span(spin_error_set(Spin(3), 2)));
  CHECK(r.input_dim <= r.closure_dim);
  CHECK(r.closure_dim <= r.ambient * r.ambient);
  CHECK(r.closed == (r.input_dim == r.closure_dim));
}

TEST_CASE("ambient cap") {
  const OperatorSpan big = span_of({Matrix(Matrix::Identity(41, 41))}, 41);
  CHECK_THROWS_AS(lie_closure(big), CapabilityError);
}

TEST_CASE("per-site error sets") {
  const SubsystemLayout lay({3, 4});
  const GradedErrorSet s = site_spin_error_set(lay, 1, 1, SpinAxes::x);
  CHECK(s.ambient() == 4);
  CHECK(s.locality() == Locality::per_site);
  CHECK(graded_span(s).size() == 2);
  CHECK(graded_span(site_full_error_set(lay, 0)).size() == 9);
  const GradedErrorSet g = local_spin_error_set(lay, 1);
  CHECK(g.ambient() == 12);
  CHECK(graded_span(g).size() == 7);
}

TEST_CASE("hermitian_unit_basis is orthonormal") {
  const auto basis = hermitian_unit_basis(4);
  CHECK(basis.size() == 16);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j)
      CHECK(std::abs(hs_inner(basis[i], basis[j]) - (i == j ? 1.0 : 0.0)) < 1e-14);
}

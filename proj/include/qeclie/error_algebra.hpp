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

#include <optional>
#include <string>
#include <vector>

#include "qeclie/operators.hpp"

namespace qeclie {

/// Largest ambient dimension accepted by lie_closure (basis <= 1600).
inline constexpr int kClosureMaxDim = 40;

enum class Locality { global, per_site };

/// Generator list E_1 with grade t; E_t is spanned by products of at most t
/// generators. Global sets act on the whole layout, per-site sets on one
/// subsystem (generators then have that site's dimension).
class GradedErrorSet {
 public:
  GradedErrorSet(std::vector<Operator> generators, int grade,
                 SubsystemLayout layout, Locality locality = Locality::global,
                 std::size_t site = 0);

  const std::vector<Operator>& generators() const { return generators_; }
  int grade() const { return grade_; }
  const SubsystemLayout& layout() const { return layout_; }
  Locality locality() const { return locality_; }
  std::size_t site() const { return site_; }
  /// Dimension the generators act on.
  int ambient() const { return generators_.front().dim(); }

  GradedErrorSet with_grade(int t) const;

 private:
  std::vector<Operator> generators_;
  int grade_;
  SubsystemLayout layout_;
  Locality locality_;
  std::size_t site_;
};

enum class SpinAxes { xyz, x, z };

/// {1, Jx, Jy, Jz} (or the subset picked by `axes`) for one spin-J system.
GradedErrorSet spin_error_set(Spin j, int grade, SpinAxes axes = SpinAxes::xyz);

/// Per-site spin generators {1, J_a^(i)} over every site of the layout,
/// embedded in the full space; J_i = (d_i - 1)/2.
GradedErrorSet local_spin_error_set(const SubsystemLayout& layout, int grade,
                                    SpinAxes axes = SpinAxes::xyz);

/// Same generators as local_spin_error_set but restricted to one site and
/// acting on that site's space only.
GradedErrorSet site_spin_error_set(const SubsystemLayout& layout,
                                   std::size_t site, int grade,
                                   SpinAxes axes = SpinAxes::xyz);

/// All of u(d) on one site (the "detect every local error" set).
GradedErrorSet site_full_error_set(const SubsystemLayout& layout,
                                   std::size_t site);

/// Weight-one Paulis {1, X_i, Y_i, Z_i} on an all-qubit layout.
GradedErrorSet pauli_weight1_error_set(const SubsystemLayout& layout);

/// Orthonormal Hermitian basis of u(d) (diagonal units, symmetric and
/// antisymmetric off-diagonal pairs).
std::vector<Matrix> hermitian_unit_basis(int d);

OperatorSpan graded_span(const GradedErrorSet& gens,
                         double tol = kDefaultRankTol);

struct ClosureReport {
  int input_dim = 0;
  int closure_dim = 0;
  int ambient = 0;
  bool closed = false;
  bool universal = false;
  OperatorSpan closure_basis{1};
};

struct ClosureOptions {
  unsigned threads = 1;
  /// Commutators evaluated per batch. The thread count never changes the
  /// result; the batch size can perturb the basis at rounding level only.
  std::size_t batch = 2048;
};

/// Closes a span under i[A, B]. Rounds visit pairs with at least one element
/// added in the previous round, in basis insertion order.
ClosureReport lie_closure(const OperatorSpan& span,
                          const ClosureOptions& options = {});

bool continuity_check(const OperatorSpan& span,
                      const ClosureOptions& options = {});

/// closure_dim >= N^2 - 1 with the identity inside the closure.
bool universality_check(const ClosureReport& report);

}  // namespace qeclie

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

#include "qeclie/codes.hpp"
#include "qeclie/error_algebra.hpp"

namespace qeclie {

/// Cap for the dense commutant / intersection path (N^4 scaling).
inline constexpr int kTransversalMaxDim = 40;

enum class TransversalVerdict {
  no_continuous_gates,
  continuous_but_not_universal,
  universal,
  undecided_large_n,
};

std::string to_string(TransversalVerdict v);

struct SiteReport {
  std::size_t site = 0;
  int closure_dim = 0;
  bool closed = false;
  bool universal = false;
  bool kl_correctable = false;
};

struct TransversalReport {
  std::vector<SiteReport> per_site;
  /// dim of the induced logical algebra of F_T ∩ l (small-N path only).
  std::optional<int> logical_component_dim;
  /// dim of F_T ∩ l itself, before projection to the logical space.
  std::optional<int> intersection_dim;
  TransversalVerdict verdict = TransversalVerdict::undecided_large_n;
};

/// Span of every local closure basis element embedded at its site.
OperatorSpan transversal_algebra(const SubsystemLayout& layout,
                                 const std::vector<OperatorSpan>& local_closures);

/// Hermitian g with [g, P] = 0, from the null space of g -> i[g, P].
OperatorSpan logical_algebra(const Code& code, double tol = 1e-8);

/// Orthonormal span of V† g V over the basis (ambient K).
OperatorSpan induced_logical_action(const Code& code, const OperatorSpan& span,
                                    double commute_tol = 1e-8);

/// Intersection of two spans with the same ambient dimension.
OperatorSpan span_intersection(const OperatorSpan& a, const OperatorSpan& b,
                               double tol = 1e-8);

struct TransversalOptions {
  unsigned threads = 1;
  double kl_tol = kDefaultKLTol;
  /// Site-local codes (K < d_i) used by the per-site path when N > cap.
  std::vector<Code> site_codes;
};

/// Per-site closures, then either the dense intersection F_T ∩ l (N <= 40)
/// or the per-site universality + site-code criterion.
TransversalReport certify_transversal(const Code& code,
                                      const std::vector<GradedErrorSet>& site_errors,
                                      const TransversalOptions& options = {});

}  // namespace qeclie

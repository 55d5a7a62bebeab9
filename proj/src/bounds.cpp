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

#include "qeclie/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "qeclie/error.hpp"

namespace qeclie {

BoundReport singleton_check(long long n, long long k, long long e_t_dim, int t) {
  if (n < 1 || k < 1 || e_t_dim < 1 || t < 0) {
    throw InvalidInput("singleton_check: N, K, |E_t| must be positive and t >= 0");
  }
  BoundReport r{n, k, t, e_t_dim, false, 0.0};
  const long double lhs = static_cast<long double>(n) * n;
  const long double rhs = static_cast<long double>(e_t_dim) * e_t_dim * k * k;
  r.satisfied = lhs >= rhs;
  r.slack = static_cast<double>(lhs - rhs);
  return r;
}

double logical_error_estimate(int n, double p, int t, ErrorMode mode) {
  if (n < 1) throw InvalidInput("logical_error_estimate: n must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("logical_error_estimate: p must lie in [0, 1]");
  if (t < 0) throw InvalidInput("logical_error_estimate: t must be >= 0");
  if (mode == ErrorMode::correlated) return std::pow(p, t + 1);
  return n * std::pow(p / n, t + 1);
}

int min_grade_from_dims(const std::vector<int>& dims, int k, int e1) {
  if (dims.empty()) throw InvalidInput("min_grade_from_dims: no subsystem dimensions");
  if (k < 1) throw InvalidInput("min_grade_from_dims: K must be >= 1");
  if (e1 < 2) throw InvalidInput("min_grade_from_dims: |E_1| must be >= 2");
  for (int d : dims) {
    if (d < 1) throw InvalidInput("min_grade_from_dims: dimensions must be positive");
  }
  if (std::none_of(dims.begin(), dims.end(), [k](int d) { return d > k; })) {
    throw InvalidInput("min_grade_from_dims: no subsystem dimension exceeds K");
  }
  const long long dmin = *std::min_element(dims.begin(), dims.end());
  int s = 1;
  for (long long reach = static_cast<long long>(k) * e1; reach < dmin; reach *= e1) ++s;
  return s;
}

}  // namespace qeclie

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

#include <vector>

namespace qeclie {

struct BoundReport {
  long long n = 0;
  long long k = 0;
  int t = 0;
  long long e_t_dim = 0;
  bool satisfied = false;
  double slack = 0.0;  // N^2 - |E_t|^2 K^2
};

/// Algebraic singleton bound N^2 >= |E_t|^2 K^2, |.| read as span dimension.
BoundReport singleton_check(long long n, long long k, long long e_t_dim, int t = 0);

enum class ErrorMode { local, correlated };

/// Upper bound on the logical error rate: n (p/n)^(t+1) for local noise,
/// p^(t+1) for correlated noise.
double logical_error_estimate(int n, double p, int t, ErrorMode mode);

/// Smallest s >= 1 with K * e1^s >= min_i d_i, i.e. the grade t + 1 the
/// error set must reach before the bound forces a logical error.
int min_grade_from_dims(const std::vector<int>& dims, int k, int e1 = 4);

}  // namespace qeclie

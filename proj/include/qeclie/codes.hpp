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

#include <filesystem>
#include <string>
#include <vector>

#include "qeclie/error_algebra.hpp"
#include "qeclie/operators.hpp"

namespace qeclie {

inline constexpr double kDefaultKLTol = 1e-9;

/// Encoding isometry V: C^K -> C^N; column j is the codeword |j>_L.
class Code {
 public:
  /// Throws ValidationError unless max|V†V - 1| <= 1e-10.
  Code(std::string name, SubsystemLayout layout, Matrix isometry);

  const std::string& name() const { return name_; }
  const SubsystemLayout& layout() const { return layout_; }
  const Matrix& isometry() const { return isometry_; }
  int physical_dim() const { return layout_.total(); }
  int logical_dim() const { return static_cast<int>(isometry_.cols()); }
  Vector codeword(int j) const { return isometry_.col(j); }

 private:
  std::string name_;
  SubsystemLayout layout_;
  Matrix isometry_;
};

/// J = 25/2, K = 2 code with supports {-25/2, -5/2, +15/2} and mirror.
Code code_spin25();
/// |0>_L = |m=-J>, |1>_L = |m=+J>.
Code code_spin_cat(Spin j);
/// n spin-J sites, single +-1 excitation over a |m=0> background.
Code code_w_state(int n, Spin j);
/// n spin-J sites, single +-J excitation over a |m=0> background.
Code code_multi_spin_cat(int n, Spin j);
/// [[4,2,2]] with stabilizers XXXX, ZZZZ.
Code code_422();
/// K = N code on a single subsystem of dimension d.
Code code_trivial(int d);
/// Tensor product of two codes (layouts concatenated, K = K_a K_b).
Code tensor_code(const Code& a, const Code& b);

/// P = V V†.
Operator codespace_projector(const Code& code);

struct KLReport {
  /// c_ab = tr(P E_a E_b P)/K over the span's orthonormal basis.
  Matrix c;
  double max_residual = 0.0;
  bool correctable = false;
  double tol = kDefaultKLTol;
};

struct KLOptions {
  double tol = kDefaultKLTol;
  unsigned threads = 1;
};

KLReport kl_check(const Code& code, const OperatorSpan& errors,
                  const KLOptions& options = {});

/// tr(P A† B P)/K for arbitrary operators.
cplx kl_coefficient(const Code& code, const Matrix& a, const Matrix& b);

/// Detection condition P E P ∝ P; returns max_E ‖V†EV - (tr/K)·1‖_F.
double detection_residual(const Code& code, const std::vector<Matrix>& errors);

/// D = 2t* + 1 for the largest t* <= t_max whose E_t passes kl_check.
int distance(const Code& code, const GradedErrorSet& e1, int t_max,
             const KLOptions& options = {});

/// JSON code file (see README for the schema).
Code load_code(const std::filesystem::path& path);
Code parse_code(const std::string& json_text);
void save_code(const Code& code, const std::filesystem::path& path);
std::string serialize_code(const Code& code);

}  // namespace qeclie

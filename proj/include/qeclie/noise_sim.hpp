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

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "qeclie/codes.hpp"
#include "qeclie/operators.hpp"

namespace qeclie {

/// Largest physical dimension accepted by the Lindblad channel builders.
inline constexpr int kLindbladMaxDim = 60;

struct Jump {
  std::size_t site = 0;
  Operator op;  // Hermitian, acts on the site's space
  double rate = 0.0;
};

struct NoiseModel {
  SubsystemLayout layout{std::vector<int>{1}};
  std::vector<Jump> jumps;
  double time = 0.0;
};

/// Jx dephasing at rate gamma on every site.
NoiseModel jx_noise(const SubsystemLayout& layout, double gamma, double time);

/// CPTP map on N x N density matrices. Stored as a pipeline of stages, each
/// kept in its cheapest exact form; superoperator() materializes the
/// N^2 x N^2 matrix (column-stacking vec convention).
class Channel {
 public:
  struct Superop {
    Matrix s;
  };
  struct Kraus {
    std::vector<Matrix> ops;
  };
  /// rho -> W (M ∘ (W† rho W)) W† for a unitary W and real symmetric M.
  struct Schur {
    Matrix basis;
    RealMatrix multiplier;
  };
  using Stage = std::variant<Superop, Kraus, Schur>;

  static Channel identity(int dim);
  static Channel from_superoperator(Matrix s);
  static Channel from_kraus(std::vector<Matrix> ops);
  static Channel schur(Matrix basis, RealMatrix multiplier);

  int dim() const { return dim_; }
  const std::vector<Stage>& stages() const { return stages_; }

  Matrix apply(const Matrix& rho) const;
  /// `next` ∘ this.
  Channel then(const Channel& next) const;
  Matrix superoperator() const;
  /// sum_ij |i><j| ⊗ E(|i><j|).
  Matrix choi() const;

 private:
  int dim_ = 0;
  std::vector<Stage> stages_;
};

struct ChannelCheck {
  double tp_residual = 0.0;
  double min_choi_eigenvalue = 0.0;
  bool ok(double tol = 1e-8) const {
    return tp_residual <= tol && min_choi_eigenvalue >= -tol;
  }
};

/// Stage-wise CP/TP check (composition of CPTP stages is CPTP).
ChannelCheck check_channel(const Channel& channel);

/// Lindblad generator sum_j rate_j (L rho L - {L^2, rho}/2) as a dense
/// N^2 x N^2 matrix. Hermitian when every jump is Hermitian.
Matrix lindblad_generator(const NoiseModel& noise);

/// exp(L T). Jumps that commute on each site are diagonalized jointly, which
/// gives the channel as an exact Schur multiplier; otherwise falls back to
/// the dense route.
Channel lindblad_channel(const NoiseModel& noise);
/// exp(L T) via the Hermitian eigendecomposition of the dense generator.
Channel lindblad_channel_dense(const NoiseModel& noise);

struct RecoveryOptions {
  double eigen_cutoff = 1e-8;
  double guard = 0.1;
};

/// Recovery from diagonalizing c_ab: error subspaces F_k V (strongest first),
/// orthogonalized against earlier ones and mapped back by their polar
/// isometries; the leftover space is sent to |0>_L.
Channel kl_recovery(const Code& code, const OperatorSpan& errors,
                    const RecoveryOptions& options = {});

/// Project onto the codespace, leftover to |0>_L.
Channel codespace_projection(const Code& code);

/// (1/K^2) sum_ij <i|V† E(V|i><j|V†) V|j>.
double entanglement_fidelity(const Code& code, const Channel& channel);

enum class Family { w_state, multi_spin_cat, spin25, spin_cat };
std::string to_string(Family f);
Family family_from_string(const std::string& s);

struct SimRow {
  Family family;
  int n = 1;
  double j = 0.0;
  double gamma = 0.0;
  double time = 0.0;
  double fidelity = 0.0;
  double infidelity = 0.0;
};

struct SimResult {
  std::vector<SimRow> rows;
};

struct SweepRequest {
  Family family = Family::w_state;
  int n = 2;
  std::vector<double> j_values;
  std::vector<double> gamma_values;
  double time = 1.0;
  unsigned threads = 1;
};

/// Code for a family point (spin25 ignores n and J).
Code family_code(Family family, int n, double j);
/// The span the family's recovery is built for.
OperatorSpan family_correctable_span(Family family, const Code& code);

/// Entanglement fidelity after Jx dephasing then KL recovery, one row per
/// (J, gamma) in input order.
SimResult sweep(const SweepRequest& request);

/// Header: family,n,J,gamma,T,gamma_T,fidelity,infidelity
void write_csv(const SimResult& result, std::ostream& out);

}  // namespace qeclie

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

#include "qeclie/noise_sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <ostream>

#include <unsupported/Eigen/KroneckerProduct>

#include "qeclie/error.hpp"
#include "qeclie/error_algebra.hpp"
#include "qeclie/parallel.hpp"

namespace qeclie {

NoiseModel jx_noise(const SubsystemLayout& layout, double gamma, double time) {
  if (!(gamma >= 0)) throw InvalidInput("noise rate must be non-negative");
  if (!(time >= 0)) throw InvalidInput("evolution time must be non-negative");
  NoiseModel noise{layout, {}, time};
  for (std::size_t site = 0; site < layout.sites(); ++site) {
    const int d = layout.dim(site);
    if (d < 2) throw InvalidInput("Jx noise needs subsystem dimension >= 2");
    noise.jumps.push_back({site, spin_ops(Spin(d - 1)).x, gamma});
  }
  return noise;
}

// ---------------------------------------------------------------- Channel

namespace {

Matrix vec_apply(const Matrix& s, const Matrix& rho) {
  const Eigen::Index n = rho.rows();
  const Vector v = Eigen::Map<const Vector>(rho.data(), n * n);
  const Vector out = s * v;
  return Eigen::Map<const Matrix>(out.data(), n, n);
}

Matrix apply_stage(const Channel::Stage& stage, const Matrix& rho) {
  return std::visit(
      [&](const auto& st) -> Matrix {
        using T = std::decay_t<decltype(st)>;
        if constexpr (std::is_same_v<T, Channel::Superop>) {
          return vec_apply(st.s, rho);
        } else if constexpr (std::is_same_v<T, Channel::Kraus>) {
          Matrix out = Matrix::Zero(rho.rows(), rho.cols());
          for (const auto& k : st.ops) out.noalias() += k * rho * k.adjoint();
          return out;
        } else {
          const Matrix inner = st.basis.adjoint() * rho * st.basis;
          const Matrix damped = inner.cwiseProduct(st.multiplier.template cast<cplx>());
          return st.basis * damped * st.basis.adjoint();
        }
      },
      stage);
}

Matrix stage_superoperator(const Channel::Stage& stage, int n) {
  return std::visit(
      [&](const auto& st) -> Matrix {
        using T = std::decay_t<decltype(st)>;
        if constexpr (std::is_same_v<T, Channel::Superop>) {
          return st.s;
        } else if constexpr (std::is_same_v<T, Channel::Kraus>) {
          Matrix s = Matrix::Zero(n * n, n * n);
          for (const auto& k : st.ops) s += Eigen::kroneckerProduct(k.conjugate(), k);
          return s;
        } else {
          const Matrix w = Eigen::kroneckerProduct(st.basis.conjugate(), st.basis);
          const Vector m = Eigen::Map<const RealVector>(st.multiplier.data(), n * n).cast<cplx>();
          return w * m.asDiagonal() * w.adjoint();
        }
      },
      stage);
}

}  // namespace

Channel Channel::identity(int dim) {
  Channel c;
  c.dim_ = dim;
  return c;
}

Channel Channel::from_superoperator(Matrix s) {
  const auto n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(s.rows()))));
  if (s.rows() != s.cols() || static_cast<Eigen::Index>(n) * n != s.rows()) {
    throw DimensionMismatch("superoperator must be N^2 x N^2");
  }
  Channel c;
  c.dim_ = n;
  c.stages_.emplace_back(Superop{std::move(s)});
  return c;
}

Channel Channel::from_kraus(std::vector<Matrix> ops) {
  if (ops.empty()) throw InvalidInput("Kraus list is empty");
  Channel c;
  c.dim_ = static_cast<int>(ops.front().cols());
  for (const auto& k : ops) {
    if (k.rows() != c.dim_ || k.cols() != c.dim_) {
      throw DimensionMismatch("Kraus operators must be square and equal-sized");
    }
  }
  c.stages_.emplace_back(Kraus{std::move(ops)});
  return c;
}

Channel Channel::schur(Matrix basis, RealMatrix multiplier) {
  if (basis.rows() != basis.cols() || multiplier.rows() != basis.rows() ||
      multiplier.cols() != basis.cols()) {
    throw DimensionMismatch("Schur channel: basis and multiplier must be N x N");
  }
  Channel c;
  c.dim_ = static_cast<int>(basis.rows());
  c.stages_.emplace_back(Schur{std::move(basis), std::move(multiplier)});
  return c;
}

Matrix Channel::apply(const Matrix& rho) const {
  if (rho.rows() != dim_ || rho.cols() != dim_) {
    throw DimensionMismatch("channel input has wrong dimension");
  }
  Matrix out = rho;
  for (const auto& st : stages_) out = apply_stage(st, out);
  return out;
}

Channel Channel::then(const Channel& next) const {
  if (next.dim_ != dim_) throw DimensionMismatch("cannot compose channels of different size");
  Channel c = *this;
  c.stages_.insert(c.stages_.end(), next.stages_.begin(), next.stages_.end());
  return c;
}

Matrix Channel::superoperator() const {
  Matrix s = Matrix::Identity(dim_ * dim_, dim_ * dim_);
  for (const auto& st : stages_) s = stage_superoperator(st, dim_) * s;
  return s;
}

Matrix Channel::choi() const {
  const int n = dim_;
  Matrix out(n * n, n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Matrix unit = Matrix::Zero(n, n);
      unit(i, j) = 1.0;
      out.block(i * n, j * n, n, n) = apply(unit);
    }
  }
  return out;
}

ChannelCheck check_channel(const Channel& channel) {
  ChannelCheck check;
  const int n = channel.dim();
  for (const auto& stage : channel.stages()) {
    if (const auto* k = std::get_if<Channel::Kraus>(&stage)) {
      Matrix sum = Matrix::Zero(n, n);
      for (const auto& op : k->ops) sum += op.adjoint() * op;
      check.tp_residual = std::max(check.tp_residual,
                                   (sum - Matrix::Identity(n, n)).cwiseAbs().maxCoeff());
    } else if (const auto* s = std::get_if<Channel::Schur>(&stage)) {
      const RealMatrix& m = s->multiplier;
      check.tp_residual = std::max(
          check.tp_residual, (m.diagonal().array() - 1.0).abs().maxCoeff());
      const double lo = Eigen::SelfAdjointEigenSolver<RealMatrix>(m).eigenvalues().minCoeff();
      check.min_choi_eigenvalue = std::min(check.min_choi_eigenvalue, lo);
      check.tp_residual = std::max(check.tp_residual, unitarity_residual(s->basis));
    } else {
      const Channel single = Channel::from_superoperator(std::get<Channel::Superop>(stage).s);
      const Matrix id = Matrix::Identity(n, n);
      const Vector one = Eigen::Map<const Vector>(id.data(), n * n);
      const Matrix& sm = std::get<Channel::Superop>(stage).s;
      check.tp_residual = std::max(
          check.tp_residual, (sm.adjoint() * one - one).cwiseAbs().maxCoeff());
      const Matrix choi = single.choi();
      const double lo = Eigen::SelfAdjointEigenSolver<Matrix>(0.5 * (choi + choi.adjoint()))
                            .eigenvalues()
                            .minCoeff();
      check.min_choi_eigenvalue = std::min(check.min_choi_eigenvalue, lo);
    }
  }
  return check;
}

// --------------------------------------------------------------- Lindblad

namespace {

void check_noise(const NoiseModel& noise) {
  const int n = noise.layout.total();
  if (n > kLindbladMaxDim) {
    throw CapabilityError("Lindblad channel: N = " + std::to_string(n) + " exceeds cap " +
                          std::to_string(kLindbladMaxDim));
  }
  if (!(noise.time >= 0)) throw InvalidInput("evolution time must be non-negative");
  for (const auto& j : noise.jumps) {
    if (!(j.rate >= 0)) throw InvalidInput("jump rates must be non-negative");
    if (j.site >= noise.layout.sites()) throw InvalidInput("jump site out of range");
    if (j.op.dim() != noise.layout.dim(j.site)) {
      throw DimensionMismatch("jump operator does not match its site dimension");
    }
    if (!j.op.is_hermitian()) throw InvalidInput("jump operators must be Hermitian");
  }
}

}  // namespace

Matrix lindblad_generator(const NoiseModel& noise) {
  check_noise(noise);
  const int n = noise.layout.total();
  const Matrix id = Matrix::Identity(n, n);
  Matrix gen = Matrix::Zero(n * n, n * n);
  for (const auto& j : noise.jumps) {
    const Matrix l = embed_local(j.op.matrix(), noise.layout, j.site);
    const Matrix l2 = l * l;
    gen += j.rate * (Matrix(Eigen::kroneckerProduct(l.conjugate(), l)) -
                     0.5 * Matrix(Eigen::kroneckerProduct(id, l2)) -
                     0.5 * Matrix(Eigen::kroneckerProduct(l2.transpose(), id)));
  }
  return gen;
}

Channel lindblad_channel_dense(const NoiseModel& noise) {
  const Matrix gen = lindblad_generator(noise);
  if (noise.time == 0.0 || noise.jumps.empty()) return Channel::identity(noise.layout.total());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (gen + gen.adjoint()));
  const RealVector& w = eig.eigenvalues();
  Vector decay(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) decay(i) = std::exp(w(i) * noise.time);
  const Matrix& v = eig.eigenvectors();
  return Channel::from_superoperator(v * decay.asDiagonal() * v.adjoint());
}

Channel lindblad_channel(const NoiseModel& noise) {
  check_noise(noise);
  const SubsystemLayout& layout = noise.layout;
  const int n = layout.total();
  if (noise.time == 0.0 || noise.jumps.empty()) return Channel::identity(n);

  // Joint eigenbasis per site; eigenvalues[j][k] is jump j's value on local
  // basis state k of its site.
  std::vector<Matrix> site_basis(layout.sites());
  std::vector<RealVector> eigenvalues(noise.jumps.size());
  for (std::size_t site = 0; site < layout.sites(); ++site) {
    const int d = layout.dim(site);
    Matrix combo = Matrix::Zero(d, d);
    double weight = 1.0;
    for (const auto& j : noise.jumps) {
      if (j.site != site) continue;
      combo += weight * j.op.matrix();
      weight += 0.6180339887498949;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (combo + combo.adjoint()));
    site_basis[site] = eig.eigenvectors();
    for (std::size_t idx = 0; idx < noise.jumps.size(); ++idx) {
      const auto& j = noise.jumps[idx];
      if (j.site != site) continue;
      const Matrix diag = site_basis[site].adjoint() * j.op.matrix() * site_basis[site];
      const Matrix off = diag - Matrix(diag.diagonal().asDiagonal());
      if (off.cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, j.op.matrix().norm())) {
        return lindblad_channel_dense(noise);
      }
      eigenvalues[idx] = diag.diagonal().real();
    }
  }
  Matrix basis = site_basis[0];
  for (std::size_t site = 1; site < layout.sites(); ++site) {
    basis = Matrix(Eigen::kroneckerProduct(basis, site_basis[site]));
  }
  std::vector<std::vector<int>> index(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) index[static_cast<std::size_t>(a)] = layout.unflatten(a);
  RealMatrix mult(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      double exponent = 0.0;
      for (std::size_t idx = 0; idx < noise.jumps.size(); ++idx) {
        const auto& j = noise.jumps[idx];
        const double diff = eigenvalues[idx](index[static_cast<std::size_t>(a)][j.site]) -
                            eigenvalues[idx](index[static_cast<std::size_t>(b)][j.site]);
        exponent += j.rate * diff * diff;
      }
      mult(a, b) = std::exp(-0.5 * noise.time * exponent);
    }
  }
  return Channel::schur(std::move(basis), std::move(mult));
}

// --------------------------------------------------------------- Recovery

namespace {

// Rank-one Kraus operators |0_L><r| over an orthonormal basis of the
// complement of `used` (orthonormal columns).
void add_leftover(const Matrix& v, const Matrix& used, std::vector<Matrix>& kraus) {
  const Eigen::Index n = v.rows();
  Matrix pi = Matrix::Identity(n, n);
  if (used.cols() > 0) pi -= used * used.adjoint();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (pi + pi.adjoint()));
  for (Eigen::Index i = 0; i < n; ++i) {
    if (eig.eigenvalues()(i) > 0.5) {
      kraus.push_back(v.col(0) * eig.eigenvectors().col(i).adjoint());
    }
  }
}

}  // namespace

Channel kl_recovery(const Code& code, const OperatorSpan& errors,
                    const RecoveryOptions& options) {
  const KLReport kl = kl_check(code, errors, {options.guard, 1});
  if (!kl.correctable) {
    std::cerr << "warning: kl_recovery: KL residual " << kl.max_residual << " exceeds guard "
              << options.guard << "; proceeding with eigenvalue cutoff " << options.eigen_cutoff
              << "\n";
  }
  const Matrix& v = code.isometry();
  const Eigen::Index n = v.rows();
  const Eigen::Index k = v.cols();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (kl.c + kl.c.adjoint()));
  const RealVector& d = eig.eigenvalues();
  const double dmax = d.size() ? d.maxCoeff() : 0.0;
  std::vector<Matrix> images;
  for (std::size_t a = 0; a < errors.size(); ++a) images.push_back(errors[a].matrix() * v);

  std::vector<Matrix> kraus;
  Matrix used(n, 0);
  for (Eigen::Index idx = d.size(); idx-- > 0;) {
    if (!(d(idx) > options.eigen_cutoff * dmax)) continue;
    Matrix w = Matrix::Zero(n, k);
    for (std::size_t a = 0; a < images.size(); ++a) {
      w += eig.eigenvectors()(static_cast<Eigen::Index>(a), idx) * images[a];
    }
    if (used.cols() > 0) {
      w -= used * (used.adjoint() * w);
      w -= used * (used.adjoint() * w);
    }
    Eigen::JacobiSVD<Matrix> svd(w, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RealVector& s = svd.singularValues();
    Eigen::Index rank = 0;
    while (rank < s.size() && s(rank) * s(rank) > options.eigen_cutoff * dmax) ++rank;
    if (rank == 0) continue;
    const Matrix u = svd.matrixU().leftCols(rank);
    const Matrix q = u * svd.matrixV().leftCols(rank).adjoint();
    kraus.push_back(v * q.adjoint());
    Matrix grown(n, used.cols() + rank);
    grown << used, u;
    used = std::move(grown);
  }
  add_leftover(v, used, kraus);
  return Channel::from_kraus(std::move(kraus));
}

Channel codespace_projection(const Code& code) {
  const Matrix& v = code.isometry();
  std::vector<Matrix> kraus{v * v.adjoint()};
  add_leftover(v, v, kraus);
  return Channel::from_kraus(std::move(kraus));
}

double entanglement_fidelity(const Code& code, const Channel& channel) {
  if (channel.dim() != code.physical_dim()) {
    throw DimensionMismatch("entanglement_fidelity: channel dimension does not match code");
  }
  const Matrix& v = code.isometry();
  const int k = code.logical_dim();
  cplx sum = 0;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      const Matrix out = channel.apply(v.col(i) * v.col(j).adjoint());
      sum += v.col(i).dot(out * v.col(j));
    }
  }
  return sum.real() / (static_cast<double>(k) * k);
}

// ------------------------------------------------------------------ Sweep

std::string to_string(Family f) {
  switch (f) {
    case Family::w_state:
      return "w_state";
    case Family::multi_spin_cat:
      return "multi_spin_cat";
    case Family::spin25:
      return "spin25";
    case Family::spin_cat:
      return "spin_cat";
  }
  return "unknown";
}

Family family_from_string(const std::string& s) {
  for (Family f : {Family::w_state, Family::multi_spin_cat, Family::spin25, Family::spin_cat}) {
    if (to_string(f) == s) return f;
  }
  throw InvalidInput("unknown code family '" + s + "'");
}

Code family_code(Family family, int n, double j) {
  switch (family) {
    case Family::w_state:
      return code_w_state(n, Spin::from_value(j));
    case Family::multi_spin_cat:
      return code_multi_spin_cat(n, Spin::from_value(j));
    case Family::spin25:
      return code_spin25();
    case Family::spin_cat:
      return code_spin_cat(Spin::from_value(j));
  }
  throw InvalidInput("unknown code family");
}

OperatorSpan family_correctable_span(Family family, const Code& code) {
  switch (family) {
    case Family::spin25:
      return graded_span(spin_error_set(Spin(25), 2));
    case Family::spin_cat: {
      const Spin j(code.physical_dim() - 1);
      if (j.is_integer()) throw InvalidInput("spin_cat family needs half-integer J");
      return graded_span(spin_error_set(j, (j.twice() - 1) / 2, SpinAxes::x));
    }
    case Family::w_state:
    case Family::multi_spin_cat:
      return graded_span(local_spin_error_set(code.layout(), 1, SpinAxes::x));
  }
  throw InvalidInput("unknown code family");
}

namespace {

struct SweepPoint {
  int n = 1;
  double j = 0.0;
  Code code;
  Channel recovery;
};

int family_dim(Family family, int n, double j) {
  if (family == Family::spin25) return 26;
  const int d = Spin::from_value(j).dim();
  if (family == Family::spin_cat) return d;
  int total = 1;
  for (int i = 0; i < n; ++i) total *= d;
  return total;
}

}  // namespace

SimResult sweep(const SweepRequest& request) {
  SimResult result;
  if (request.j_values.empty() && request.family != Family::spin25) return result;
  std::vector<double> js = request.j_values;
  if (request.family == Family::spin25) js = {12.5};
  if (!(request.time >= 0)) throw InvalidInput("sweep: T must be non-negative");
  for (double g : request.gamma_values) {
    if (!(g >= 0)) throw InvalidInput("sweep: gamma values must be non-negative");
  }
  const int n = (request.family == Family::spin25 || request.family == Family::spin_cat)
                    ? 1
                    : request.n;
  std::string over;
  for (double j : js) {
    const int dim = family_dim(request.family, n, j);
    if (dim > kLindbladMaxDim) {
      over += " (" + to_string(request.family) + ", n=" + std::to_string(n) +
              ", J=" + std::to_string(j) + ", N=" + std::to_string(dim) + ")";
    }
  }
  if (!over.empty()) {
    throw CapabilityError("sweep: physical dimension exceeds cap " +
                          std::to_string(kLindbladMaxDim) + " for" + over);
  }

  std::vector<std::optional<SweepPoint>> points(js.size());
  parallel_for(js.size(), request.threads, [&](std::size_t i) {
    Code code = family_code(request.family, n, js[i]);
    const OperatorSpan span = family_correctable_span(request.family, code);
    Channel recovery = kl_recovery(code, span);
    points[i] = SweepPoint{n, js[i], std::move(code), std::move(recovery)};
  });

  const std::size_t ng = request.gamma_values.size();
  result.rows.resize(js.size() * ng);
  parallel_for(js.size() * ng, request.threads, [&](std::size_t t) {
    const SweepPoint& p = *points[t / ng];
    const double gamma = request.gamma_values[t % ng];
    const Channel noise = lindblad_channel(jx_noise(p.code.layout(), gamma, request.time));
    const double f = entanglement_fidelity(p.code, noise.then(p.recovery));
    result.rows[t] = SimRow{request.family, p.n, p.j, gamma, request.time, f, 1.0 - f};
  });
  return result;
}

void write_csv(const SimResult& result, std::ostream& out) {
  out << "family,n,J,gamma,T,gamma_T,fidelity,infidelity\n";
  char buf[512];
  for (const auto& r : result.rows) {
    std::snprintf(buf, sizeof buf, "%s,%d,%.17e,%.17e,%.17e,%.17e,%.17e,%.17e\n",
                  to_string(r.family).c_str(), r.n, r.j, r.gamma, r.time, r.gamma * r.time,
                  r.fidelity, r.infidelity);
    out << buf;
  }
}

}  // namespace qeclie

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

#include "qeclie/error_algebra.hpp"

#include <cmath>
#include <string>

#include "qeclie/error.hpp"
#include "qeclie/parallel.hpp"

namespace qeclie {

GradedErrorSet::GradedErrorSet(std::vector<Operator> generators, int grade,
                               SubsystemLayout layout, Locality locality,
                               std::size_t site)
    : generators_(std::move(generators)),
      grade_(grade),
      layout_(std::move(layout)),
      locality_(locality),
      site_(site) {
  if (generators_.empty()) throw InvalidInput("empty generator list");
  if (grade_ < 0) throw InvalidInput("grade must be non-negative");
  const int expected = locality_ == Locality::global
                           ? layout_.total()
                           : layout_.dim(site_);
  if (locality_ == Locality::per_site && site_ >= layout_.sites()) {
    throw InvalidInput("per-site error set: site out of range");
  }
  std::vector<Matrix> mats;
  for (const auto& g : generators_) {
    if (g.dim() != expected) {
      throw DimensionMismatch("generator dimension " + std::to_string(g.dim()) +
                              " does not match " + std::to_string(expected));
    }
    if (!g.is_hermitian()) throw InvalidInput("generators must be Hermitian");
    mats.push_back(g.matrix());
  }
  const OperatorSpan span = span_of(mats, expected);
  if (!span.contains(Matrix::Identity(expected, expected))) {
    throw InvalidInput("generator span must contain the identity");
  }
}

GradedErrorSet GradedErrorSet::with_grade(int t) const {
  return GradedErrorSet(generators_, t, layout_, locality_, site_);
}

namespace {

std::vector<Operator> spin_generators(Spin j, SpinAxes axes) {
  const SpinOps ops = spin_ops(j);
  std::vector<Operator> gens{Operator::identity(j.dim())};
  switch (axes) {
    case SpinAxes::xyz:
      gens.insert(gens.end(), {ops.x, ops.y, ops.z});
      break;
    case SpinAxes::x:
      gens.push_back(ops.x);
      break;
    case SpinAxes::z:
      gens.push_back(ops.z);
      break;
  }
  return gens;
}

Spin site_spin(const SubsystemLayout& layout, std::size_t site) {
  const int d = layout.dim(site);
  if (d < 2) throw InvalidInput("spin generators need subsystem dimension >= 2");
  return Spin(d - 1);
}

}  // namespace

GradedErrorSet spin_error_set(Spin j, int grade, SpinAxes axes) {
  return GradedErrorSet(spin_generators(j, axes), grade,
                        SubsystemLayout::single(j.dim()));
}

GradedErrorSet local_spin_error_set(const SubsystemLayout& layout, int grade,
                                    SpinAxes axes) {
  std::vector<Operator> gens{Operator::identity(layout.total())};
  for (std::size_t i = 0; i < layout.sites(); ++i) {
    const auto local = spin_generators(site_spin(layout, i), axes);
    for (std::size_t g = 1; g < local.size(); ++g) {
      gens.push_back(embed_local(local[g], layout, i));
    }
  }
  return GradedErrorSet(std::move(gens), grade, layout);
}

GradedErrorSet site_spin_error_set(const SubsystemLayout& layout,
                                   std::size_t site, int grade, SpinAxes axes) {
  return GradedErrorSet(spin_generators(site_spin(layout, site), axes), grade,
                        layout, Locality::per_site, site);
}

std::vector<Matrix> hermitian_unit_basis(int d) {
  std::vector<Matrix> out;
  out.reserve(static_cast<std::size_t>(d) * d);
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < d; ++i) {
    Matrix m = Matrix::Zero(d, d);
    m(i, i) = 1.0;
    out.push_back(std::move(m));
  }
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      Matrix re = Matrix::Zero(d, d);
      re(i, j) = re(j, i) = s;
      out.push_back(std::move(re));
      Matrix im = Matrix::Zero(d, d);
      im(i, j) = cplx(0, s);
      im(j, i) = cplx(0, -s);
      out.push_back(std::move(im));
    }
  }
  return out;
}

GradedErrorSet site_full_error_set(const SubsystemLayout& layout,
                                   std::size_t site) {
  const int d = layout.dim(site);
  std::vector<Operator> gens{Operator::identity(d)};
  for (auto& m : hermitian_unit_basis(d)) gens.push_back(Operator::hermitian(m));
  return GradedErrorSet(std::move(gens), 1, layout, Locality::per_site, site);
}

GradedErrorSet pauli_weight1_error_set(const SubsystemLayout& layout) {
  for (int d : layout.dims()) {
    if (d != 2) throw InvalidInput("Pauli error sets need an all-qubit layout");
  }
  Matrix x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, cplx(0, -1), cplx(0, 1), 0;
  z << 1, 0, 0, -1;
  std::vector<Operator> gens{Operator::identity(layout.total())};
  for (std::size_t i = 0; i < layout.sites(); ++i) {
    for (const Matrix* p : {&x, &y, &z}) {
      gens.push_back(Operator::hermitian(embed_local(*p, layout, i)));
    }
  }
  return GradedErrorSet(std::move(gens), 1, layout);
}

OperatorSpan graded_span(const GradedErrorSet& gens, double tol) {
  const int n = gens.ambient();
  SpanBuilder builder(n, tol);
  builder.extend(Matrix::Identity(n, n));
  // Hermitian basis of the complex span of products of <= k generators,
  // grown one factor at a time: H_{k+1} = H_k + Herm(H_k · E_1).
  for (int k = 0; k < gens.grade() && !builder.full(); ++k) {
    const std::vector<Operator> current = builder.view().basis();
    std::vector<Matrix> candidates;
    candidates.reserve(current.size() * gens.generators().size() * 2);
    for (const auto& h : current) {
      for (const auto& g : gens.generators()) {
        const Matrix p = h.matrix() * g.matrix();
        const Matrix pa = p.adjoint();
        candidates.push_back(0.5 * (p + pa));
        candidates.push_back(cplx(0, -0.5) * (p - pa));
      }
    }
    builder.extend_batch(candidates);
  }
  return std::move(builder).build();
}

ClosureReport lie_closure(const OperatorSpan& span,
                          const ClosureOptions& options) {
  if (span.empty()) throw InvalidInput("lie_closure: empty span");
  if (span.dim() > kClosureMaxDim) {
    throw CapabilityError("lie_closure: ambient dimension " +
                          std::to_string(span.dim()) + " exceeds cap " +
                          std::to_string(kClosureMaxDim));
  }
  const std::size_t batch = std::max<std::size_t>(1, options.batch);
  SpanBuilder builder(span);
  std::size_t lo = 0;
  while (!builder.full()) {
    const std::size_t hi = builder.size();
    if (lo >= hi) break;
    // Pair list for this round: (i, j) with i < j and j in [lo, hi).
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t j = lo; j < hi; ++j) {
      for (std::size_t i = 0; i < j; ++i) pairs.emplace_back(i, j);
    }
    const std::vector<Operator> basis(builder.view().basis().begin(),
                                      builder.view().basis().begin() +
                                          static_cast<std::ptrdiff_t>(hi));
    for (std::size_t start = 0; start < pairs.size() && !builder.full();
         start += batch) {
      const std::size_t count = std::min(batch, pairs.size() - start);
      std::vector<Matrix> brackets(count);
      parallel_for(count, options.threads, [&](std::size_t c) {
        const auto [i, j] = pairs[start + c];
        const Matrix& a = basis[i].matrix();
        const Matrix& b = basis[j].matrix();
        brackets[c] = cplx(0, 1) * (a * b - b * a);
      });
      builder.extend_batch(brackets);
    }
    lo = hi;
  }
  ClosureReport report;
  report.input_dim = static_cast<int>(span.size());
  report.closure_dim = static_cast<int>(builder.size());
  report.ambient = span.dim();
  report.closed = report.closure_dim == report.input_dim;
  report.closure_basis = std::move(builder).build();
  report.universal = universality_check(report);
  return report;
}

bool continuity_check(const OperatorSpan& span, const ClosureOptions& options) {
  const ClosureReport r = lie_closure(span, options);
  return r.closure_dim > r.input_dim;
}

bool universality_check(const ClosureReport& report) {
  const int n = report.ambient;
  if (report.closure_dim < n * n - 1) return false;
  return report.closure_basis.contains(Matrix::Identity(n, n));
}

}  // namespace qeclie

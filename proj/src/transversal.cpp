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

#include "qeclie/transversal.hpp"

#include <algorithm>

#include "qeclie/error.hpp"

namespace qeclie {

std::string to_string(TransversalVerdict v) {
  switch (v) {
    case TransversalVerdict::no_continuous_gates:
      return "no-continuous-gates";
    case TransversalVerdict::continuous_but_not_universal:
      return "continuous-but-not-universal";
    case TransversalVerdict::universal:
      return "universal";
    case TransversalVerdict::undecided_large_n:
      return "undecided-large-N";
  }
  return "unknown";
}

OperatorSpan transversal_algebra(const SubsystemLayout& layout,
                                 const std::vector<OperatorSpan>& local_closures) {
  if (local_closures.size() != layout.sites()) {
    throw DimensionMismatch("transversal_algebra: need one closure per site");
  }
  if (layout.total() > kTransversalMaxDim) {
    throw CapabilityError("transversal_algebra: N = " + std::to_string(layout.total()) +
                          " exceeds the dense cap " + std::to_string(kTransversalMaxDim));
  }
  SpanBuilder builder(layout.total());
  for (std::size_t site = 0; site < layout.sites(); ++site) {
    const OperatorSpan& local = local_closures[site];
    if (local.dim() != layout.dim(site)) {
      throw DimensionMismatch("transversal_algebra: closure " + std::to_string(site) +
                              " has ambient " + std::to_string(local.dim()));
    }
    std::vector<Matrix> embedded;
    for (const auto& b : local.basis()) embedded.push_back(embed_local(b.matrix(), layout, site));
    builder.extend_batch(embedded);
  }
  return std::move(builder).build();
}

OperatorSpan logical_algebra(const Code& code, double tol) {
  const int n = code.physical_dim();
  if (n > kTransversalMaxDim) {
    throw CapabilityError("logical_algebra: N = " + std::to_string(n) +
                          " exceeds the dense cap " + std::to_string(kTransversalMaxDim) +
                          "; use the per-site certification path");
  }
  const Matrix p = codespace_projector(code).matrix();
  const std::vector<Matrix> units = hermitian_unit_basis(n);
  const Eigen::Index dim = static_cast<Eigen::Index>(units.size());
  // Column j: coordinates of i[h_j, P]; units are ordered like the coordinates.
  RealMatrix m(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Matrix& h = units[static_cast<std::size_t>(j)];
    m.col(j) = hermitian_coordinates(cplx(0, 1) * (h * p - p * h));
  }
  Eigen::SelfAdjointEigenSolver<RealMatrix> eig(m.transpose() * m);
  const RealVector& w = eig.eigenvalues();
  const double scale = std::max(1.0, w.maxCoeff());
  std::vector<Eigen::Index> null;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w(i) <= tol * scale) null.push_back(i);
  }
  RealMatrix frame(dim, static_cast<Eigen::Index>(null.size()));
  for (std::size_t c = 0; c < null.size(); ++c) {
    frame.col(static_cast<Eigen::Index>(c)) = eig.eigenvectors().col(null[c]);
  }
  return OperatorSpan::from_orthonormal_frame(std::move(frame), n);
}

OperatorSpan span_intersection(const OperatorSpan& a, const OperatorSpan& b, double tol) {
  if (a.dim() != b.dim()) throw DimensionMismatch("span_intersection: dimension mismatch");
  const int n = a.dim();
  if (a.empty() || b.empty()) return OperatorSpan(n);
  const RealMatrix qa = a.frame();
  const RealMatrix cross = qa.transpose() * b.frame();
  Eigen::JacobiSVD<RealMatrix> svd(cross, Eigen::ComputeThinU);
  const RealVector& s = svd.singularValues();
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) >= 1.0 - tol) keep.push_back(i);
  }
  RealMatrix frame(qa.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    frame.col(static_cast<Eigen::Index>(c)) = qa * svd.matrixU().col(keep[c]);
  }
  // Re-orthonormalize (QR) to absorb the small angle error.
  if (frame.cols() > 0) {
    Eigen::HouseholderQR<RealMatrix> qr(frame);
    frame = qr.householderQ() * RealMatrix::Identity(frame.rows(), frame.cols());
  }
  return OperatorSpan::from_orthonormal_frame(std::move(frame), n);
}

OperatorSpan induced_logical_action(const Code& code, const OperatorSpan& span,
                                    double commute_tol) {
  if (span.dim() != code.physical_dim()) {
    throw DimensionMismatch("induced_logical_action: span ambient does not match code");
  }
  const Matrix& v = code.isometry();
  const Matrix p = v * v.adjoint();
  SpanBuilder builder(code.logical_dim());
  for (std::size_t i = 0; i < span.size(); ++i) {
    const Matrix& g = span[i].matrix();
    const double leak = (g * p - p * g).norm();
    if (leak > commute_tol * std::max(1.0, g.norm())) {
      throw PreconditionError("induced_logical_action: basis element " + std::to_string(i) +
                              " does not commute with the codespace projector (‖[g,P]‖ = " +
                              std::to_string(leak) + ")");
    }
    builder.extend(Matrix(0.5 * (v.adjoint() * g * v + (v.adjoint() * g * v).adjoint())));
  }
  return std::move(builder).build();
}

TransversalReport certify_transversal(const Code& code,
                                      const std::vector<GradedErrorSet>& site_errors,
                                      const TransversalOptions& options) {
  const SubsystemLayout& layout = code.layout();
  if (site_errors.size() != layout.sites()) {
    throw InvalidInput("certify_transversal: expected " + std::to_string(layout.sites()) +
                       " site error sets, got " + std::to_string(site_errors.size()));
  }
  TransversalReport report;
  std::vector<OperatorSpan> closures;
  std::vector<OperatorSpan> local_spans;
  bool all_closed = true;
  bool all_universal = true;
  const ClosureOptions closure_options{options.threads};
  const KLOptions kl_options{options.kl_tol, options.threads};
  for (std::size_t site = 0; site < layout.sites(); ++site) {
    const GradedErrorSet& errs = site_errors[site];
    if (errs.ambient() != layout.dim(site)) {
      throw DimensionMismatch("certify_transversal: error set for site " + std::to_string(site) +
                              " acts on dimension " + std::to_string(errs.ambient()));
    }
    OperatorSpan local = graded_span(errs);
    ClosureReport closure = lie_closure(local, closure_options);
    SiteReport sr;
    sr.site = site;
    sr.closure_dim = closure.closure_dim;
    sr.closed = closure.closed;
    sr.universal = closure.universal;
    std::vector<Matrix> embedded;
    for (const auto& b : local.basis()) embedded.push_back(embed_local(b.matrix(), layout, site));
    sr.kl_correctable =
        kl_check(code, span_of(embedded, layout.total()), kl_options).correctable;
    all_closed = all_closed && sr.closed;
    all_universal = all_universal && sr.universal;
    report.per_site.push_back(sr);
    closures.push_back(std::move(closure.closure_basis));
    local_spans.push_back(std::move(local));
  }

  if (layout.total() <= kTransversalMaxDim) {
    const OperatorSpan f_t = transversal_algebra(layout, closures);
    const OperatorSpan logical = logical_algebra(code);
    const OperatorSpan common = span_intersection(f_t, logical);
    const OperatorSpan induced = induced_logical_action(code, common);
    report.intersection_dim = static_cast<int>(common.size());
    report.logical_component_dim = static_cast<int>(induced.size());
    const int k = code.logical_dim();
    if (all_closed) {
      report.verdict = TransversalVerdict::no_continuous_gates;
    } else if (*report.logical_component_dim >= k * k - 1) {
      report.verdict = TransversalVerdict::universal;
    } else {
      report.verdict = TransversalVerdict::continuous_but_not_universal;
    }
    return report;
  }

  if (all_closed) {
    report.verdict = TransversalVerdict::no_continuous_gates;
    return report;
  }
  bool site_codes_ok = options.site_codes.size() == layout.sites();
  for (std::size_t site = 0; site_codes_ok && site < layout.sites(); ++site) {
    const Code& sc = options.site_codes[site];
    site_codes_ok = sc.physical_dim() == layout.dim(site) &&
                    sc.logical_dim() < layout.dim(site) &&
                    kl_check(sc, local_spans[site], kl_options).correctable;
  }
  report.verdict = all_universal && site_codes_ok ? TransversalVerdict::universal
                                                  : TransversalVerdict::undecided_large_n;
  return report;
}

}  // namespace qeclie

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

#include "qeclie/codes.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "qeclie/error.hpp"
#include "qeclie/parallel.hpp"

namespace qeclie {

Code::Code(std::string name, SubsystemLayout layout, Matrix isometry)
    : name_(std::move(name)), layout_(std::move(layout)), isometry_(std::move(isometry)) {
  if (isometry_.rows() != layout_.total()) {
    throw ValidationError("code '" + name_ + "': isometry has " +
                          std::to_string(isometry_.rows()) + " rows, layout needs " +
                          std::to_string(layout_.total()));
  }
  if (isometry_.cols() < 1 || isometry_.cols() > isometry_.rows()) {
    throw ValidationError("code '" + name_ + "': logical dimension out of range");
  }
  const double r = unitarity_residual(isometry_);
  if (!(r <= 1e-10)) {
    throw ValidationError("code '" + name_ + "': codewords are not orthonormal (max |V†V - 1| = " +
                          std::to_string(r) + ")");
  }
}

namespace {

int k_of(Spin j, double m) { return static_cast<int>(std::lround(m + j.value())); }

Code excitation_code(const std::string& name, int n, Spin j, int excitation) {
  if (n < 2) throw InvalidInput(name + ": needs n >= 2 subsystems");
  if (!j.is_integer()) {
    throw InvalidInput(name + ": the |m=0> filler needs integer J, got J = " +
                       std::to_string(j.value()));
  }
  const SubsystemLayout layout = SubsystemLayout::uniform(j.dim(), n);
  Matrix v = Matrix::Zero(layout.total(), 2);
  const double amp = 1.0 / std::sqrt(static_cast<double>(n));
  const int zero = k_of(j, 0.0);
  for (int c = 0; c < 2; ++c) {
    const double m = c == 0 ? excitation : -excitation;
    for (int i = 0; i < n; ++i) {
      std::vector<int> k(static_cast<std::size_t>(n), zero);
      k[static_cast<std::size_t>(i)] = k_of(j, m);
      v(layout.flatten(k), c) += amp;
    }
  }
  return Code(name, layout, std::move(v));
}

}  // namespace

Code code_spin25() {
  const Spin j(25);
  Matrix v = Matrix::Zero(j.dim(), 2);
  const double amps[3] = {std::sqrt(1.0 / 16), std::sqrt(10.0 / 16), std::sqrt(5.0 / 16)};
  const double ms[3] = {-12.5, -2.5, 7.5};
  for (int a = 0; a < 3; ++a) {
    v(k_of(j, ms[a]), 0) = amps[a];
    v(k_of(j, -ms[a]), 1) = amps[a];
  }
  return Code("spin25", SubsystemLayout::single(j.dim()), std::move(v));
}

Code code_spin_cat(Spin j) {
  Matrix v = Matrix::Zero(j.dim(), 2);
  v(0, 0) = 1.0;
  v(j.dim() - 1, 1) = 1.0;
  return Code("spin_cat", SubsystemLayout::single(j.dim()), std::move(v));
}

Code code_w_state(int n, Spin j) {
  return excitation_code("w_state", n, j, 1);
}

Code code_multi_spin_cat(int n, Spin j) {
  return excitation_code("multi_spin_cat", n, j, j.twice() / 2);
}

Code code_422() {
  const SubsystemLayout layout = SubsystemLayout::uniform(2, 4);
  Matrix v = Matrix::Zero(16, 4);
  const double s = 1.0 / std::sqrt(2.0);
  const int words[4][2] = {{0b0000, 0b1111}, {0b0011, 0b1100}, {0b0101, 0b1010}, {0b0110, 0b1001}};
  for (int c = 0; c < 4; ++c) {
    v(words[c][0], c) = s;
    v(words[c][1], c) = s;
  }
  return Code("code422", layout, std::move(v));
}

Code code_trivial(int d) {
  return Code("trivial", SubsystemLayout::single(d), Matrix::Identity(d, d));
}

Code tensor_code(const Code& a, const Code& b) {
  std::vector<int> dims = a.layout().dims();
  dims.insert(dims.end(), b.layout().dims().begin(), b.layout().dims().end());
  const Matrix& va = a.isometry();
  const Matrix& vb = b.isometry();
  Matrix v(va.rows() * vb.rows(), va.cols() * vb.cols());
  for (Eigen::Index i = 0; i < va.rows(); ++i) {
    for (Eigen::Index j = 0; j < va.cols(); ++j) {
      v.block(i * vb.rows(), j * vb.cols(), vb.rows(), vb.cols()) = va(i, j) * vb;
    }
  }
  return Code(a.name() + "*" + b.name(), SubsystemLayout(std::move(dims)), std::move(v));
}

Operator codespace_projector(const Code& code) {
  return Operator::hermitian(code.isometry() * code.isometry().adjoint());
}

KLReport kl_check(const Code& code, const OperatorSpan& errors,
                  const KLOptions& options) {
  if (errors.dim() != code.physical_dim()) {
    throw DimensionMismatch("kl_check: error span acts on dimension " +
                            std::to_string(errors.dim()) + ", code on " +
                            std::to_string(code.physical_dim()));
  }
  const Matrix& v = code.isometry();
  const int k = code.logical_dim();
  const std::size_t m = errors.size();
  // P E_a E_b P = V (W_a† W_b) V† with W = E V, and V is an isometry.
  std::vector<Matrix> w(m);
  for (std::size_t a = 0; a < m; ++a) w[a] = errors[a].matrix() * v;
  KLReport report;
  report.tol = options.tol;
  report.c = Matrix::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  std::vector<double> row_max(m, 0.0);
  parallel_for(m, options.threads, [&](std::size_t a) {
    for (std::size_t b = 0; b < m; ++b) {
      const Matrix x = w[a].adjoint() * w[b];
      const cplx c = x.trace() / static_cast<double>(k);
      report.c(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = c;
      const double r = (x - c * Matrix::Identity(k, k)).norm();
      row_max[a] = std::max(row_max[a], r);
    }
  });
  for (double r : row_max) report.max_residual = std::max(report.max_residual, r);
  report.correctable = report.max_residual <= options.tol;
  return report;
}

cplx kl_coefficient(const Code& code, const Matrix& a, const Matrix& b) {
  const Matrix& v = code.isometry();
  return (v.adjoint() * a.adjoint() * b * v).trace() /
         static_cast<double>(code.logical_dim());
}

double detection_residual(const Code& code, const std::vector<Matrix>& errors) {
  const Matrix& v = code.isometry();
  const int k = code.logical_dim();
  double worst = 0.0;
  for (const auto& e : errors) {
    if (e.rows() != code.physical_dim()) {
      throw DimensionMismatch("detection_residual: dimension mismatch");
    }
    const Matrix x = v.adjoint() * e * v;
    const cplx c = x.trace() / static_cast<double>(k);
    worst = std::max(worst, (x - c * Matrix::Identity(k, k)).norm());
  }
  return worst;
}

int distance(const Code& code, const GradedErrorSet& e1, int t_max,
             const KLOptions& options) {
  if (t_max < 0) throw InvalidInput("distance: t_max must be non-negative");
  int best = 0;
  for (int t = 1; t <= t_max; ++t) {
    const OperatorSpan span = graded_span(e1.with_grade(t));
    if (!kl_check(code, span, options).correctable) break;
    best = t;
  }
  return 2 * best + 1;
}

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& what) {
  throw ValidationError("code file: " + what);
}

}  // namespace

Code parse_code(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    schema_error(std::string("not valid JSON (") + e.what() + ")");
  }
  if (!doc.is_object()) schema_error("top level must be an object");
  for (const char* key : {"name", "subsystems", "logical_dim", "codewords"}) {
    if (!doc.contains(key)) schema_error(std::string("missing field '") + key + "'");
  }
  if (!doc["name"].is_string()) schema_error("'name' must be a string");
  const auto& subs = doc["subsystems"];
  if (!subs.is_array() || subs.empty()) schema_error("'subsystems' must be a non-empty array");
  std::vector<int> dims;
  for (const auto& d : subs) {
    if (!d.is_number_integer() || d.get<long long>() < 1) {
      schema_error("'subsystems' entries must be positive integers");
    }
    dims.push_back(d.get<int>());
  }
  const SubsystemLayout layout(dims);
  if (!doc["logical_dim"].is_number_integer() || doc["logical_dim"].get<long long>() < 1) {
    schema_error("'logical_dim' must be a positive integer");
  }
  const int k = doc["logical_dim"].get<int>();
  const auto& words = doc["codewords"];
  if (!words.is_array() || static_cast<int>(words.size()) != k) {
    schema_error("'codewords' must list exactly logical_dim = " + std::to_string(k) +
                 " codewords");
  }
  Matrix v = Matrix::Zero(layout.total(), k);
  for (int c = 0; c < k; ++c) {
    const auto& entries = words[static_cast<std::size_t>(c)];
    const std::string where = "codeword " + std::to_string(c);
    if (!entries.is_array()) schema_error(where + " must be an array of amplitudes");
    std::set<int> seen;
    for (std::size_t e = 0; e < entries.size(); ++e) {
      const auto& entry = entries[e];
      const std::string at = where + ", entry " + std::to_string(e);
      if (!entry.is_object() || !entry.contains("k") || !entry.contains("re") ||
          !entry.contains("im")) {
        schema_error(at + ": expected {\"k\": [...], \"re\": x, \"im\": y}");
      }
      if (!entry["re"].is_number() || !entry["im"].is_number()) {
        schema_error(at + ": 're' and 'im' must be numbers");
      }
      const auto& kk = entry["k"];
      if (!kk.is_array() || kk.size() != layout.sites()) {
        schema_error(at + ": 'k' must have one index per subsystem");
      }
      std::vector<int> idx;
      for (std::size_t s = 0; s < kk.size(); ++s) {
        if (!kk[s].is_number_integer()) schema_error(at + ": 'k' entries must be integers");
        const long long ks = kk[s].get<long long>();
        if (ks < 0 || ks >= layout.dim(s)) {
          schema_error(at + ": index " + std::to_string(ks) + " out of range for subsystem " +
                       std::to_string(s));
        }
        idx.push_back(static_cast<int>(ks));
      }
      const int flat = layout.flatten(idx);
      if (!seen.insert(flat).second) schema_error(at + ": duplicate basis index");
      const double re = entry["re"].get<double>();
      const double im = entry["im"].get<double>();
      if (!std::isfinite(re) || !std::isfinite(im)) schema_error(at + ": non-finite amplitude");
      v(flat, c) = cplx(re, im);
    }
  }
  return Code(doc["name"].get<std::string>(), layout, std::move(v));
}

Code load_code(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open code file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_code(buf.str());
}

std::string serialize_code(const Code& code) {
  nlohmann::ordered_json doc;
  doc["name"] = code.name();
  doc["subsystems"] = code.layout().dims();
  doc["logical_dim"] = code.logical_dim();
  auto words = nlohmann::ordered_json::array();
  const Matrix& v = code.isometry();
  for (int c = 0; c < code.logical_dim(); ++c) {
    auto entries = nlohmann::ordered_json::array();
    for (int i = 0; i < code.physical_dim(); ++i) {
      const cplx a = v(i, c);
      if (a == cplx(0)) continue;
      nlohmann::ordered_json e;
      e["k"] = code.layout().unflatten(i);
      e["re"] = a.real();
      e["im"] = a.imag();
      entries.push_back(std::move(e));
    }
    words.push_back(std::move(entries));
  }
  doc["codewords"] = std::move(words);
  return doc.dump(2) + "\n";
}

void save_code(const Code& code, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write code file " + path.string());
  out << serialize_code(code);
}

}  // namespace qeclie

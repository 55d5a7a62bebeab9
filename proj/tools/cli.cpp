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

#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <regex>
#include <sstream>
#include <unistd.h>

#include "CLI11.hpp"
#include "qeclie/bounds.hpp"
#include "qeclie/error.hpp"
#include "qeclie/gates.hpp"
#include "qeclie/noise_sim.hpp"
#include "qeclie/parallel.hpp"
#include "qeclie/transversal.hpp"

#ifndef QECLIE_VERSION
#define QECLIE_VERSION "0.0.0"
#endif

namespace qeclie::cli {

using json = nlohmann::ordered_json;

// ------------------------------------------------------------- utilities

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

long long parse_integer(const std::string& text, const std::string& what) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (text.empty() || pos != text.size()) {
    throw InvalidInput(what + ": expected an integer, got '" + text + "'");
  }
  return v;
}

double parse_real(const std::string& text, const std::string& what) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (text.empty() || pos != text.size() || !std::isfinite(v)) {
    throw InvalidInput(what + ": expected a finite number, got '" + text + "'");
  }
  return v;
}

std::map<std::string, std::string> parse_kv(const std::string& body, const std::string& uri) {
  std::map<std::string, std::string> kv;
  if (body.empty()) return kv;
  for (const auto& part : split(body, ',')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) {
      throw InvalidInput("error URI '" + uri + "': expected key=value, got '" + part + "'");
    }
    kv[trim(part.substr(0, eq))] = trim(part.substr(eq + 1));
  }
  return kv;
}

SpinAxes parse_axes(const std::string& s) {
  if (s == "xyz") return SpinAxes::xyz;
  if (s == "x") return SpinAxes::x;
  if (s == "z") return SpinAxes::z;
  throw InvalidInput("axes must be one of xyz, x, z; got '" + s + "'");
}

void reject_unknown_keys(const std::map<std::string, std::string>& kv,
                         const std::vector<std::string>& allowed, const std::string& uri) {
  for (const auto& [k, v] : kv) {
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
      throw InvalidInput("error URI '" + uri + "': unknown key '" + k + "'");
    }
  }
}

int grade_from(const std::map<std::string, std::string>& kv, const std::string& uri) {
  const auto it = kv.find("grade");
  if (it == kv.end()) throw InvalidInput("error URI '" + uri + "': grade=t is required");
  const long long t = parse_integer(it->second, "grade");
  if (t < 1 || t > 1000) throw InvalidInput("error URI '" + uri + "': grade must be >= 1");
  return static_cast<int>(t);
}

Matrix matrix_from_json(const json& re, const json* im) {
  if (!re.is_array() || re.empty()) throw InvalidInput("operator matrix must be a non-empty array");
  const auto n = static_cast<Eigen::Index>(re.size());
  Matrix m = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& row = re[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      throw InvalidInput("operator matrix must be square");
    }
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = row[static_cast<std::size_t>(j)].get<double>();
  }
  if (im != nullptr) {
    if (!im->is_array() || static_cast<Eigen::Index>(im->size()) != n) {
      throw InvalidInput("operator 'im' part must match 're'");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      const json& row = (*im)[static_cast<std::size_t>(i)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
        throw InvalidInput("operator 'im' part must match 're'");
      }
      for (Eigen::Index j = 0; j < n; ++j) {
        m(i, j) += cplx(0, row[static_cast<std::size_t>(j)].get<double>());
      }
    }
  }
  return m;
}

struct ErrorFile {
  std::vector<Operator> generators;
  int grade = 1;
};

ErrorFile load_error_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open error file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidInput("error file '" + path + "': " + e.what());
  }
  ErrorFile f;
  if (doc.contains("grade")) f.grade = doc.at("grade").get<int>();
  if (f.grade < 1) throw InvalidInput("error file '" + path + "': grade must be >= 1");
  if (!doc.contains("generators") || !doc.at("generators").is_array()) {
    throw InvalidInput("error file '" + path + "': missing 'generators' array");
  }
  std::size_t idx = 0;
  for (const auto& g : doc.at("generators")) {
    try {
      const json* im = g.contains("im") ? &g.at("im") : nullptr;
      f.generators.push_back(Operator::hermitian(matrix_from_json(g.at("re"), im)));
    } catch (const json::exception& e) {
      throw InvalidInput("error file '" + path + "', generator " + std::to_string(idx) + ": " +
                         e.what());
    } catch (const InvalidInput& e) {
      throw InvalidInput("error file '" + path + "', generator " + std::to_string(idx) + ": " +
                         e.what());
    }
    ++idx;
  }
  if (f.generators.empty()) throw InvalidInput("error file '" + path + "': no generators");
  return f;
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<Matrix> basis_matrices(const OperatorSpan& span) {
  std::vector<Matrix> out;
  for (const auto& b : span.basis()) out.push_back(b.matrix());
  return out;
}

bool all_scalars(const json& v) {
  return std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_primitive(); });
}

void emit(const json& v, int indent, std::string& s) {
  const std::string pad(static_cast<std::size_t>(indent) + 2, ' ');
  switch (v.type()) {
    case json::value_t::number_float: {
      const double x = v.get<double>();
      if (!std::isfinite(x)) throw InvalidInput("report contains a non-finite number");
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", x);
      s += buf;
      return;
    }
    case json::value_t::array: {
      if (v.empty()) {
        s += "[]";
        return;
      }
      if (all_scalars(v)) {
        s += '[';
        bool first = true;
        for (const auto& e : v) {
          if (!first) s += ", ";
          first = false;
          emit(e, indent, s);
        }
        s += ']';
        return;
      }
      s += "[\n";
      bool first = true;
      for (const auto& e : v) {
        if (!first) s += ",\n";
        first = false;
        s += pad;
        emit(e, indent + 2, s);
      }
      s += '\n' + std::string(static_cast<std::size_t>(indent), ' ') + ']';
      return;
    }
    case json::value_t::object: {
      if (v.empty()) {
        s += "{}";
        return;
      }
      s += "{\n";
      bool first = true;
      for (const auto& [k, e] : v.items()) {
        if (!first) s += ",\n";
        first = false;
        s += pad + json(k).dump() + ": ";
        emit(e, indent + 2, s);
      }
      s += '\n' + std::string(static_cast<std::size_t>(indent), ' ') + '}';
      return;
    }
    default:
      s += v.dump();
  }
}

}  // namespace

std::string to_json_text(const json& value) {
  std::string s;
  emit(value, 0, s);
  s += '\n';
  return s;
}

void write_atomically(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw InvalidInput("cannot write output file '" + path + "'");
    f << content;
    f.flush();
    if (!f) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw InvalidInput("cannot write output file '" + path + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw InvalidInput("cannot write output file '" + path + "'");
  }
}

double parse_spin_value(const std::string& text) {
  const std::string t = trim(text);
  const auto slash = t.find('/');
  double j = 0;
  if (slash == std::string::npos) {
    j = parse_real(t, "spin");
  } else {
    const long long num = parse_integer(trim(t.substr(0, slash)), "spin numerator");
    const long long den = parse_integer(trim(t.substr(slash + 1)), "spin denominator");
    if (den != 1 && den != 2) throw InvalidInput("spin fraction must have denominator 1 or 2");
    j = static_cast<double>(num) / static_cast<double>(den);
  }
  return Spin::from_value(j).value();
}

Code parse_code_uri(const std::string& uri) {
  const std::string builtin = "builtin:";
  if (uri.rfind(builtin, 0) == 0) {
    const std::string rest = uri.substr(builtin.size());
    const auto colon = rest.find(':');
    const std::string name = rest.substr(0, colon);
    const std::string args = colon == std::string::npos ? "" : rest.substr(colon + 1);
    auto need_args = [&](std::size_t count) {
      const auto parts = args.empty() ? std::vector<std::string>{} : split(args, ',');
      if (parts.size() != count) {
        throw InvalidInput("code URI '" + uri + "': expected " + std::to_string(count) +
                           " argument(s)");
      }
      return parts;
    };
    if (name == "spin25") {
      need_args(0);
      return code_spin25();
    }
    if (name == "code422") {
      need_args(0);
      return code_422();
    }
    if (name == "spin_cat") {
      const auto p = need_args(1);
      return code_spin_cat(Spin::from_value(parse_spin_value(p[0])));
    }
    if (name == "w_state" || name == "multi_spin_cat") {
      const auto p = need_args(2);
      const auto n = parse_integer(p[0], "site count");
      if (n < 1 || n > 64) throw InvalidInput("code URI '" + uri + "': site count out of range");
      const Spin j = Spin::from_value(parse_spin_value(p[1]));
      return name == "w_state" ? code_w_state(static_cast<int>(n), j)
                               : code_multi_spin_cat(static_cast<int>(n), j);
    }
    throw InvalidInput("unknown builtin code '" + name +
                       "' (spin25, spin_cat:J, w_state:n,J, multi_spin_cat:n,J, code422)");
  }
  const std::string file = "file:";
  if (uri.rfind(file, 0) == 0) return load_code(uri.substr(file.size()));
  return load_code(uri);
}

GradedErrorSet parse_error_uri(const std::string& uri, const SubsystemLayout& layout) {
  const auto colon = uri.find(':');
  const std::string scheme = uri.substr(0, colon);
  const std::string body = colon == std::string::npos ? "" : uri.substr(colon + 1);
  if (scheme == "spin") {
    const auto kv = parse_kv(body, uri);
    reject_unknown_keys(kv, {"grade", "axes"}, uri);
    const SpinAxes axes = kv.count("axes") ? parse_axes(kv.at("axes")) : SpinAxes::xyz;
    return local_spin_error_set(layout, grade_from(kv, uri), axes);
  }
  if (scheme == "pauli") {
    const auto kv = parse_kv(body, uri);
    reject_unknown_keys(kv, {"weight"}, uri);
    if (!kv.count("weight") || kv.at("weight") != "1") {
      throw InvalidInput("error URI '" + uri + "': only pauli:weight=1 is supported");
    }
    return pauli_weight1_error_set(layout);
  }
  if (scheme == "file") {
    ErrorFile f = load_error_file(body);
    if (f.generators.front().dim() != layout.total()) {
      throw DimensionMismatch("error file '" + body + "' has dimension " +
                              std::to_string(f.generators.front().dim()) + ", code has " +
                              std::to_string(layout.total()));
    }
    return GradedErrorSet(std::move(f.generators), f.grade, layout);
  }
  throw InvalidInput("unknown error URI '" + uri +
                     "' (spin:grade=t[,axes=..], pauli:weight=1, file:<path>)");
}

GradedErrorSet parse_site_error_uri(const std::string& uri, const SubsystemLayout& layout,
                                    std::size_t site) {
  if (site >= layout.sites()) throw InvalidInput("site index out of range");
  const auto colon = uri.find(':');
  const std::string scheme = uri.substr(0, colon);
  const std::string body = colon == std::string::npos ? "" : uri.substr(colon + 1);
  if (scheme == "full" && body.empty()) return site_full_error_set(layout, site);
  if (scheme == "spin") {
    const auto kv = parse_kv(body, uri);
    reject_unknown_keys(kv, {"grade", "axes"}, uri);
    const SpinAxes axes = kv.count("axes") ? parse_axes(kv.at("axes")) : SpinAxes::xyz;
    return site_spin_error_set(layout, site, grade_from(kv, uri), axes);
  }
  if (scheme == "pauli") {
    const auto kv = parse_kv(body, uri);
    reject_unknown_keys(kv, {"weight"}, uri);
    if (!kv.count("weight") || kv.at("weight") != "1") {
      throw InvalidInput("error URI '" + uri + "': only pauli:weight=1 is supported");
    }
    if (layout.dim(site) != 2) throw InvalidInput("pauli:weight=1 needs qubit sites");
    return site_full_error_set(layout, site);
  }
  if (scheme == "file") {
    ErrorFile f = load_error_file(body);
    if (f.generators.front().dim() != layout.dim(site)) {
      throw DimensionMismatch("error file '" + body + "' does not match site " +
                              std::to_string(site) + " dimension");
    }
    return GradedErrorSet(std::move(f.generators), f.grade, layout, Locality::per_site, site);
  }
  throw InvalidInput("unknown site error URI '" + uri +
                     "' (spin:grade=t[,axes=..], pauli:weight=1, full, file:<path>)");
}

std::vector<Operator> parse_generators(const std::string& list, Spin j) {
  static const std::regex token(R"(J([xyz])(?:\^([0-9]+))?)");
  const SpinOps ops = spin_ops(j);
  std::vector<Operator> gens;
  for (const auto& t : split(list, ',')) {
    if (t == "1" || t == "I") {
      gens.push_back(Operator::identity(j.dim()));
      continue;
    }
    std::smatch m;
    if (!std::regex_match(t, m, token)) {
      throw InvalidInput("generator '" + t + "' not understood (1, Jx, Jy, Jz, Jx^k, ...)");
    }
    const Matrix& base = m[1] == "x" ? ops.x.matrix() : m[1] == "y" ? ops.y.matrix()
                                                                    : ops.z.matrix();
    const long long power = m[2].matched ? parse_integer(m[2], "generator power") : 1;
    if (power < 1 || power > 64) throw InvalidInput("generator power out of range");
    Matrix p = Matrix::Identity(j.dim(), j.dim());
    for (long long i = 0; i < power; ++i) p = p * base;
    gens.push_back(Operator::hermitian(p));
  }
  if (gens.empty()) throw InvalidInput("generator list is empty");
  return gens;
}

// ----------------------------------------------------------- JSON config

namespace {

class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override {
    return collect(app, default_also).dump(2) + "\n";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    json doc;
    try {
      doc = json::parse(input);
    } catch (const json::exception& e) {
      throw CLI::ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw CLI::ConfigError("config must be a JSON object");
    std::vector<CLI::ConfigItem> items;
    walk(doc, {}, items);
    return items;
  }

 private:
  static json collect(const CLI::App* app, bool default_also) {
    json j = json::object();
    for (const CLI::Option* opt : app->get_options()) {
      if (!opt->get_configurable() || opt->get_lnames().empty()) continue;
      const std::string key = opt->get_lnames().front();
      if (opt->count() > 0) {
        const auto& r = opt->results();
        j[key] = r.size() == 1 ? json(r.front()) : json(r);
      } else if (default_also && !opt->get_default_str().empty()) {
        j[key] = opt->get_default_str();
      }
    }
    for (const CLI::App* sub : app->get_subcommands({})) {
      json child = collect(sub, default_also);
      if (!child.empty()) j[sub->get_name()] = std::move(child);
    }
    return j;
  }

  static std::string scalar(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number()) return v.dump();
    throw CLI::ConfigError("config values must be scalars or arrays of scalars");
  }

  static void walk(const json& obj, const std::vector<std::string>& parents,
                   std::vector<CLI::ConfigItem>& items) {
    for (const auto& [key, value] : obj.items()) {
      if (value.is_null()) continue;
      if (value.is_object()) {
        auto next = parents;
        next.push_back(key);
        walk(value, next, items);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = key;
      if (value.is_array()) {
        for (const auto& e : value) item.inputs.push_back(scalar(e));
      } else {
        item.inputs.push_back(scalar(value));
      }
      items.push_back(std::move(item));
    }
  }
};

// -------------------------------------------------------------- commands

struct Global {
  unsigned threads = 0;
  std::string out;
};

struct Result {
  std::string text;
  int code = kOk;
};

Result json_result(const json& report, int code = kOk) { return {to_json_text(report), code}; }

struct ClosureArgs {
  std::string spin, errors, generators, axes = "xyz";
  int grade = 1;
};

Result cmd_closure(const ClosureArgs& a, unsigned threads) {
  std::optional<Spin> spin;
  if (!a.spin.empty()) spin = Spin::from_value(parse_spin_value(a.spin));
  std::optional<GradedErrorSet> set;
  std::string source;
  if (!a.errors.empty()) {
    if (!a.generators.empty()) throw InvalidInput("give either --errors or --generators");
    if (a.errors.rfind("file:", 0) == 0) {
      ErrorFile f = load_error_file(a.errors.substr(5));
      const int d = f.generators.front().dim();
      set.emplace(std::move(f.generators), f.grade, SubsystemLayout::single(d));
    } else {
      if (!spin) throw InvalidInput("--errors " + a.errors + " needs --spin");
      set = parse_error_uri(a.errors, SubsystemLayout::single(spin->dim()));
    }
    source = a.errors;
  } else {
    if (!spin) throw InvalidInput("closure needs --spin (or --errors file:<path>)");
    if (a.grade < 1) throw InvalidInput("--grade must be >= 1");
    std::vector<Operator> gens = a.generators.empty()
                                     ? spin_error_set(*spin, 1, parse_axes(a.axes)).generators()
                                     : parse_generators(a.generators, *spin);
    set.emplace(std::move(gens), a.grade, SubsystemLayout::single(spin->dim()));
    source = a.generators.empty() ? "spin:grade=" + std::to_string(a.grade) + ",axes=" + a.axes
                                  : "generators:" + a.generators + ";grade=" +
                                        std::to_string(a.grade);
  }
  const OperatorSpan span = graded_span(*set);
  const ClosureReport r = lie_closure(span, {threads, 2048});
  json j;
  j["command"] = "closure";
  j["spin"] = spin ? json(spin->value()) : json(nullptr);
  j["errors"] = source;
  j["ambient"] = r.ambient;
  j["input_dim"] = r.input_dim;
  j["closure_dim"] = r.closure_dim;
  j["closed"] = r.closed;
  j["continuous"] = !r.closed;
  j["universal"] = r.universal;
  return json_result(j);
}

struct CodeCheckArgs {
  std::string code, errors, expect;
  int t_max = 0;
  double kl_tol = kDefaultKLTol;
};

Result cmd_code_check(const CodeCheckArgs& a, unsigned threads) {
  const Code code = parse_code_uri(a.code);
  const GradedErrorSet set = parse_error_uri(a.errors, code.layout());
  const OperatorSpan span = graded_span(set);
  const KLReport kl = kl_check(code, span, {a.kl_tol, threads});
  const double det = detection_residual(code, basis_matrices(span));
  const bool detectable = det <= a.kl_tol;
  json j;
  j["command"] = "code check";
  j["code"] = code.name();
  j["N"] = code.physical_dim();
  j["K"] = code.logical_dim();
  j["errors"] = a.errors;
  j["grade"] = set.grade();
  j["span_dim"] = span.size();
  j["kl_tol"] = a.kl_tol;
  j["kl_max_residual"] = kl.max_residual;
  j["correctable"] = kl.correctable;
  j["detection_residual"] = det;
  j["detectable"] = detectable;
  if (a.t_max > 0) {
    j["t_max"] = a.t_max;
    j["distance_lower_bound"] = distance(code, set.with_grade(1), a.t_max, {a.kl_tol, threads});
  }
  int exit_code = kOk;
  if (!a.expect.empty()) {
    const bool met = a.expect == "correctable" ? kl.correctable : detectable;
    j["expect"] = a.expect;
    j["expectation_met"] = met;
    if (!met) exit_code = kCheckFailed;
  }
  return json_result(j, exit_code);
}

struct TransversalArgs {
  std::string code;
  std::vector<std::string> site_errors, site_codes;
  double kl_tol = kDefaultKLTol;
};

Result cmd_transversal(const TransversalArgs& a, unsigned threads) {
  const Code code = parse_code_uri(a.code);
  const std::size_t sites = code.layout().sites();
  if (a.site_errors.size() != 1 && a.site_errors.size() != sites) {
    throw InvalidInput("--site-errors: give one URI for all sites or one per site (" +
                       std::to_string(sites) + ")");
  }
  std::vector<GradedErrorSet> sets;
  for (std::size_t i = 0; i < sites; ++i) {
    sets.push_back(parse_site_error_uri(a.site_errors[a.site_errors.size() == 1 ? 0 : i],
                                        code.layout(), i));
  }
  TransversalOptions opts;
  opts.threads = threads;
  opts.kl_tol = a.kl_tol;
  for (const auto& uri : a.site_codes) opts.site_codes.push_back(parse_code_uri(uri));
  const TransversalReport r = certify_transversal(code, sets, opts);
  json j;
  j["command"] = "transversal";
  j["code"] = code.name();
  j["N"] = code.physical_dim();
  j["K"] = code.logical_dim();
  j["verdict"] = to_string(r.verdict);
  j["logical_component_dim"] =
      r.logical_component_dim ? json(*r.logical_component_dim) : json(nullptr);
  j["intersection_dim"] = r.intersection_dim ? json(*r.intersection_dim) : json(nullptr);
  json per = json::array();
  for (const auto& s : r.per_site) {
    json e;
    e["site"] = s.site;
    e["closure_dim"] = s.closure_dim;
    e["closed"] = s.closed;
    e["universal"] = s.universal;
    e["kl_correctable"] = s.kl_correctable;
    per.push_back(std::move(e));
  }
  j["sites"] = std::move(per);
  return json_result(j);
}

struct GateArgs {
  std::string code = "builtin:spin25", errors = "spin:grade=2", gate, axis = "x";
  double phi = 0.0;
  bool dump = false;
  int targets = 20;
  std::uint64_t seed = 1000;
};

PauliAxis parse_pauli_axis(const std::string& s) {
  if (s == "x") return PauliAxis::x;
  if (s == "y") return PauliAxis::y;
  if (s == "z") return PauliAxis::z;
  throw InvalidInput("--axis must be x, y or z");
}

Result cmd_gates_synth(const GateArgs& a) {
  const Code code = parse_code_uri(a.code);
  const OperatorSpan span = graded_span(parse_error_uri(a.errors, code.layout()));
  GateCert cert;
  if (a.gate == "phase") {
    cert = phase_gate(code, span, a.phi);
  } else if (a.gate == "sx") {
    cert = sx_gate(code, span);
  } else if (a.gate == "cz") {
    cert = cz_gate(code, span);
  } else if (a.gate == "pauli") {
    if (code.layout().sites() != 1) throw InvalidInput("pauli gate needs a single-spin code");
    const PauliAxis axis = parse_pauli_axis(a.axis);
    cert.gate = logical_pauli(Spin(code.physical_dim() - 1), axis);
    const Matrix& v = code.isometry();
    const Matrix gv = cert.gate.matrix() * v;
    cert.leakage = (gv - v * (v.adjoint() * gv)).norm();
    const LogicalCheck lc = verify_logical(cert.gate.matrix(), code, pauli_target(axis), true);
    cert.logical_action = lc.logical_action;
    cert.logical_fidelity = lc.fidelity;
    cert.phase_corrected = lc.phase_corrected;
    cert.transparency_residuals = transparency_check(cert.gate.matrix(), code, span);
  } else {
    throw InvalidInput("--gate must be phase, sx, cz or pauli");
  }
  double worst = 0.0;
  for (double r : cert.transparency_residuals) worst = std::max(worst, r);
  json j;
  j["command"] = "gates synth";
  j["code"] = code.name();
  j["errors"] = a.errors;
  j["gate"] = a.gate;
  if (a.gate == "phase") j["phi"] = a.phi;
  if (a.gate == "pauli") j["axis"] = a.axis;
  j["logical_fidelity"] = cert.logical_fidelity;
  j["infidelity"] = 1.0 - cert.logical_fidelity;
  j["phase_corrected"] = cert.phase_corrected;
  j["leakage"] = cert.leakage;
  j["transparency_max_residual"] = worst;
  j["transparency_residuals"] = cert.transparency_residuals;
  j["logical_action"] = matrix_json(cert.logical_action);
  if (a.dump) j["gate_matrix"] = matrix_json(cert.gate.matrix());
  return json_result(j);
}

Result cmd_gates_witness(const GateArgs& a) {
  if (a.targets < 1) throw InvalidInput("--targets must be >= 1");
  const Code code = parse_code_uri(a.code);
  const OperatorSpan span = graded_span(parse_error_uri(a.errors, code.layout()));
  const Matrix a0 = phase_gate(code, span, 0.0).logical_action;
  const Matrix api = phase_gate(code, span, std::acos(-1.0)).logical_action;
  const Matrix sx = sx_gate(code, span).logical_action;
  std::vector<Matrix> targets;
  for (int i = 0; i < a.targets; ++i) targets.push_back(haar_unitary(2, a.seed + i));
  const DensityWitness w = density_witness(0.5 * (a0 + api), 0.5 * (a0 - api), sx, targets);
  json j;
  j["command"] = "gates witness";
  j["code"] = code.name();
  j["targets"] = a.targets;
  j["seed"] = a.seed;
  j["depth"] = w.depth;
  j["min_fidelity"] = w.min_fidelity;
  j["fidelities"] = w.fidelities;
  return json_result(j);
}

struct SweepArgs {
  std::string family, log_grid, format = "csv";
  int n = 2;
  std::vector<std::string> j_values;
  std::vector<double> gamma_t;
  double time = 1.0;
};

std::vector<double> log_grid(const std::string& spec) {
  const auto p = split(spec, ',');
  if (p.size() != 3) throw InvalidInput("--log-grid expects lo,hi,count");
  const double lo = parse_real(p[0], "log grid lo");
  const double hi = parse_real(p[1], "log grid hi");
  const long long count = parse_integer(p[2], "log grid count");
  if (!(lo > 0) || !(hi >= lo) || count < 1 || count > 100000) {
    throw InvalidInput("--log-grid needs 0 < lo <= hi and count >= 1");
  }
  if (count == 1) return {lo};
  std::vector<double> g;
  const double a = std::log10(lo), b = std::log10(hi);
  for (long long i = 0; i < count; ++i) {
    g.push_back(std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1)));
  }
  return g;
}

Result cmd_sim_sweep(const SweepArgs& a, unsigned threads) {
  SweepRequest rq;
  rq.family = family_from_string(a.family);
  if (a.n < 1) throw InvalidInput("--n must be >= 1");
  rq.n = a.n;
  if (!(a.time > 0)) throw InvalidInput("--T must be positive");
  rq.time = a.time;
  rq.threads = threads;
  for (const auto& s : a.j_values) {
    if (!s.empty()) rq.j_values.push_back(parse_spin_value(s));
  }
  std::vector<double> gt = a.gamma_t;
  if (!a.log_grid.empty()) {
    if (!gt.empty()) throw InvalidInput("give either --gamma-t or --log-grid");
    gt = log_grid(a.log_grid);
  }
  for (double x : gt) {
    if (!(x >= 0) || !std::isfinite(x)) throw InvalidInput("gamma*T values must be >= 0");
    rq.gamma_values.push_back(x / a.time);
  }
  if (rq.family == Family::spin25 && rq.gamma_values.empty()) rq.j_values.clear();
  const SimResult res = (rq.gamma_values.empty()) ? SimResult{} : sweep(rq);
  if (a.format == "csv") {
    for (const auto& r : res.rows) {
      if (!std::isfinite(r.fidelity)) throw InvalidInput("report contains a non-finite number");
    }
    std::ostringstream os;
    write_csv(res, os);
    return {os.str(), kOk};
  }
  if (a.format != "json") throw InvalidInput("--format must be csv or json");
  json rows = json::array();
  for (const auto& r : res.rows) {
    json e;
    e["family"] = to_string(r.family);
    e["n"] = r.n;
    e["J"] = r.j;
    e["gamma"] = r.gamma;
    e["T"] = r.time;
    e["gamma_T"] = r.gamma * r.time;
    e["fidelity"] = r.fidelity;
    e["infidelity"] = r.infidelity;
    rows.push_back(std::move(e));
  }
  json j;
  j["command"] = "sim sweep";
  j["rows"] = std::move(rows);
  return json_result(j);
}

struct BoundsArgs {
  long long n = 0, k = 0, e_dim = 0;
  int t = -1;
  std::string spin, axes = "xyz", mode = "local", dims;
  int sites = 0;
  double p = 0.0;
  int e1 = 4;
};

Result cmd_bounds_singleton(const BoundsArgs& a) {
  long long e_dim = a.e_dim;
  std::string source = "given";
  int t = a.t < 0 ? 0 : a.t;
  if (e_dim == 0) {
    if (a.spin.empty() || a.t < 0) {
      throw InvalidInput("bounds singleton needs --e-dim, or --spin and --t to measure it");
    }
    const Spin j = Spin::from_value(parse_spin_value(a.spin));
    e_dim = t == 0 ? 1
                   : static_cast<long long>(
                         graded_span(spin_error_set(j, t, parse_axes(a.axes))).size());
    source = "measured";
  }
  long long n = a.n;
  if (n == 0 && !a.spin.empty()) n = Spin::from_value(parse_spin_value(a.spin)).dim();
  const BoundReport r = singleton_check(n, a.k, e_dim, t);
  json j;
  j["command"] = "bounds singleton";
  j["N"] = r.n;
  j["K"] = r.k;
  j["t"] = r.t;
  j["e_t_dim"] = r.e_t_dim;
  j["e_t_dim_source"] = source;
  j["satisfied"] = r.satisfied;
  j["slack"] = r.slack;
  return json_result(j);
}

Result cmd_bounds_rate(const BoundsArgs& a) {
  ErrorMode mode;
  if (a.mode == "local") {
    mode = ErrorMode::local;
  } else if (a.mode == "correlated") {
    mode = ErrorMode::correlated;
  } else {
    throw InvalidInput("--mode must be local or correlated");
  }
  if (a.t < 0) throw InvalidInput("--t must be >= 0");
  const double bound = logical_error_estimate(a.sites, a.p, a.t, mode);
  json j;
  j["command"] = "bounds rate";
  j["n"] = a.sites;
  j["p"] = a.p;
  j["t"] = a.t;
  j["mode"] = a.mode;
  j["upper_bound"] = bound;
  return json_result(j);
}

Result cmd_bounds_grade(const BoundsArgs& a) {
  std::vector<int> dims;
  for (const auto& s : split(a.dims, ',')) {
    const long long d = parse_integer(s, "dimension");
    if (d < 1 || d > 1'000'000'000) throw InvalidInput("dimensions must be positive");
    dims.push_back(static_cast<int>(d));
  }
  if (a.k < 1 || a.k > 1'000'000'000) throw InvalidInput("--K must be positive");
  const int s = min_grade_from_dims(dims, static_cast<int>(a.k), a.e1);
  json j;
  j["command"] = "bounds grade";
  j["dims"] = dims;
  j["K"] = a.k;
  j["e1_dim"] = a.e1;
  j["min_grade"] = s;
  return json_result(j);
}

}  // namespace

// ------------------------------------------------------------------- run

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lie-algebraic quantum error correction toolkit", "qeclie"};
  app.set_version_flag("--version", std::string("qeclie ") + QECLIE_VERSION);
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON config file (flags override it)");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  Global g;
  CLI::Option* threads_opt =
      app.add_option("--threads", g.threads, "Worker threads, 0 = all cores (env QECLIE_THREADS)")
          ->check(CLI::Range(0u, 4096u));
  app.add_option("--out", g.out, "Write the report here (atomic) instead of stdout");

  std::function<Result(unsigned)> action;
  auto sub = [&](CLI::App* parent, const std::string& name, const std::string& desc) {
    CLI::App* s = parent->add_subcommand(name, desc);
    s->fallthrough();
    s->configurable();
    return s;
  };

  ClosureArgs ca;
  CLI::App* closure = sub(&app, "closure", "Lie closure of a graded spin error set");
  closure->add_option("--spin", ca.spin, "Spin J (e.g. 3.5 or 7/2)");
  closure->add_option("--grade", ca.grade, "Error grade t")->capture_default_str();
  closure->add_option("--axes", ca.axes, "Spin generator axes: xyz, x or z")->capture_default_str();
  closure->add_option("--generators", ca.generators, "Generator list, e.g. 1,Jz,Jx,Jx^2");
  closure->add_option("--errors", ca.errors, "Error-set URI");
  closure->callback([&] { action = [&](unsigned t) { return cmd_closure(ca, t); }; });

  CodeCheckArgs cc;
  CLI::App* code = sub(&app, "code", "Code checks");
  code->require_subcommand(1);
  CLI::App* check = sub(code, "check", "Knill-Laflamme and detection checks");
  check->add_option("--code", cc.code, "Code URI")->required();
  check->add_option("--errors", cc.errors, "Error-set URI")->required();
  check->add_option("--expect", cc.expect, "Exit 1 unless the code is ...")
      ->check(CLI::IsMember({"correctable", "detectable"}));
  check->add_option("--t-max", cc.t_max, "Also report the distance bound up to this grade")
      ->check(CLI::Range(1, 64));
  check->add_option("--kl-tol", cc.kl_tol, "KL residual tolerance")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  check->callback([&] { action = [&](unsigned t) { return cmd_code_check(cc, t); }; });

  TransversalArgs ta;
  CLI::App* transversal = sub(&app, "transversal", "Transversal-gate certificate");
  transversal->add_option("--code", ta.code, "Code URI")->required();
  transversal->add_option("--site-errors", ta.site_errors, "Per-site error URI (one or per site)")
      ->required();
  transversal->add_option("--site-code", ta.site_codes, "Site-local code URI (large-N path)");
  transversal->add_option("--kl-tol", ta.kl_tol, "KL residual tolerance")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  transversal->callback([&] { action = [&](unsigned t) { return cmd_transversal(ta, t); }; });

  GateArgs ga;
  CLI::App* gates = sub(&app, "gates", "Logical gates");
  gates->require_subcommand(1);
  CLI::App* synth = sub(gates, "synth", "Build and certify a logical gate");
  synth->add_option("--gate", ga.gate, "phase, sx, cz or pauli")
      ->required()
      ->check(CLI::IsMember({"phase", "sx", "cz", "pauli"}));
  synth->add_option("--code", ga.code, "Code URI")->capture_default_str();
  synth->add_option("--errors", ga.errors, "Error-set URI")->capture_default_str();
  synth->add_option("--phi", ga.phi, "Phase angle for --gate phase")->capture_default_str();
  synth->add_option("--axis", ga.axis, "Axis for --gate pauli")->capture_default_str();
  synth->add_flag("--dump-matrices", ga.dump, "Include the physical gate matrix");
  synth->callback([&] { action = [&](unsigned) { return cmd_gates_synth(ga); }; });
  CLI::App* witness = sub(gates, "witness", "Approximate Haar-random logical targets");
  witness->add_option("--code", ga.code, "Code URI")->capture_default_str();
  witness->add_option("--errors", ga.errors, "Error-set URI")->capture_default_str();
  witness->add_option("--targets", ga.targets, "Number of targets")->capture_default_str();
  witness->add_option("--seed", ga.seed, "Seed of the first target")->capture_default_str();
  witness->callback([&] { action = [&](unsigned) { return cmd_gates_witness(ga); }; });

  SweepArgs sa;
  CLI::App* sim = sub(&app, "sim", "Noise simulation");
  sim->require_subcommand(1);
  CLI::App* sweep_cmd = sub(sim, "sweep", "Infidelity after Jx dephasing and recovery");
  sweep_cmd->add_option("--family", sa.family, "w_state, multi_spin_cat, spin25 or spin_cat")
      ->required();
  sweep_cmd->add_option("--n", sa.n, "Sites")->capture_default_str();
  sweep_cmd->add_option("--J", sa.j_values, "Spin values, comma separated")->delimiter(',');
  sweep_cmd->add_option("--gamma-t", sa.gamma_t, "Gamma*T values, comma separated")
      ->delimiter(',');
  sweep_cmd->add_option("--log-grid", sa.log_grid, "lo,hi,count log-spaced Gamma*T grid");
  sweep_cmd->add_option("--T", sa.time, "Evolution time")->capture_default_str();
  sweep_cmd->add_option("--format", sa.format, "csv or json")
      ->capture_default_str()
      ->check(CLI::IsMember({"csv", "json"}));
  sweep_cmd->callback([&] { action = [&](unsigned t) { return cmd_sim_sweep(sa, t); }; });

  BoundsArgs ba;
  CLI::App* bounds = sub(&app, "bounds", "Singleton bound and error-rate upper bounds");
  bounds->require_subcommand(1);
  CLI::App* singleton = sub(bounds, "singleton", "Algebraic singleton bound N^2 >= |E_t|^2 K^2");
  singleton->add_option("--N", ba.n, "Physical dimension")->check(CLI::PositiveNumber);
  singleton->add_option("--K", ba.k, "Logical dimension")->required()->check(CLI::PositiveNumber);
  singleton->add_option("--e-dim", ba.e_dim, "|E_t| as a span dimension")
      ->check(CLI::PositiveNumber);
  singleton->add_option("--spin", ba.spin, "Measure |E_t| from the spin error set");
  singleton->add_option("--t", ba.t, "Grade")->check(CLI::NonNegativeNumber);
  singleton->add_option("--axes", ba.axes, "Spin generator axes")->capture_default_str();
  singleton->callback([&] {
    if (ba.n == 0 && ba.spin.empty()) throw CLI::ValidationError("--N", "--N or --spin required");
    action = [&](unsigned) { return cmd_bounds_singleton(ba); };
  });
  CLI::App* rate = sub(bounds, "rate", "Logical error-rate upper bound");
  rate->add_option("--n", ba.sites, "Subsystems")->required()->check(CLI::PositiveNumber);
  rate->add_option("--p", ba.p, "Physical error probability")
      ->required()
      ->check(CLI::Range(0.0, 1.0));
  rate->add_option("--t", ba.t, "Correctable grade")->required()->check(CLI::NonNegativeNumber);
  rate->add_option("--mode", ba.mode, "local or correlated")
      ->capture_default_str()
      ->check(CLI::IsMember({"local", "correlated"}));
  rate->callback([&] { action = [&](unsigned) { return cmd_bounds_rate(ba); }; });
  CLI::App* grade = sub(bounds, "grade", "Smallest grade forced by the subsystem dimensions");
  grade->add_option("--dims", ba.dims, "Subsystem dimensions, comma separated")->required();
  grade->add_option("--K", ba.k, "Logical dimension")->required()->check(CLI::PositiveNumber);
  grade->add_option("--e1", ba.e1, "|E_1| per site")->capture_default_str()->check(
      CLI::Range(2, 1'000'000));
  grade->callback([&] { action = [&](unsigned) { return cmd_bounds_grade(ba); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }
  if (!action) {
    err << app.help();
    return kInvalidInput;
  }
  try {
    if (threads_opt->count() == 0) {
      if (const char* env = std::getenv("QECLIE_THREADS"); env != nullptr && *env != '\0') {
        const long long t = parse_integer(env, "QECLIE_THREADS");
        if (t < 0 || t > 4096) throw InvalidInput("QECLIE_THREADS must be in [0, 4096]");
        g.threads = static_cast<unsigned>(t);
      }
    }
    const Result r = action(resolve_threads(g.threads));
    if (g.out.empty()) {
      out << r.text;
      out.flush();
    } else {
      write_atomically(g.out, r.text);
    }
    return r.code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kInvalidInput;
}

}  // namespace qeclie::cli

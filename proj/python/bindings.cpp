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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "qeclie/bounds.hpp"
#include "qeclie/codes.hpp"
#include "qeclie/error.hpp"
#include "qeclie/error_algebra.hpp"
#include "qeclie/gates.hpp"
#include "qeclie/noise_sim.hpp"
#include "qeclie/transversal.hpp"

namespace py = pybind11;
using namespace qeclie;

namespace {

SpinAxes axes_from(const std::string& s) {
  if (s == "xyz") return SpinAxes::xyz;
  if (s == "x") return SpinAxes::x;
  if (s == "z") return SpinAxes::z;
  throw InvalidInput("axes must be xyz, x or z");
}

std::vector<Matrix> basis_of(const OperatorSpan& span) {
  std::vector<Matrix> out;
  for (const auto& op : span.basis()) out.push_back(op.matrix());
  return out;
}

OperatorSpan span_from(const std::vector<Matrix>& ops) {
  if (ops.empty()) throw InvalidInput("operator list is empty");
  std::vector<Matrix> herm;
  for (const auto& m : ops) {
    if (m.rows() != m.cols()) throw DimensionMismatch("operators must be square");
    if (is_hermitian(m)) {
      herm.push_back(m);
    } else {
      herm.push_back(0.5 * (m + m.adjoint()));
      herm.push_back(cplx(0.0, -0.5) * (m - m.adjoint()));
    }
  }
  return span_of(herm, static_cast<int>(ops.front().rows()));
}

py::dict closure_dict(const ClosureReport& r) {
  py::dict d;
  d["input_dim"] = r.input_dim;
  d["closure_dim"] = r.closure_dim;
  d["ambient"] = r.ambient;
  d["closed"] = r.closed;
  d["universal"] = r.universal;
  return d;
}

py::dict gate_dict(const GateCert& g) {
  py::dict d;
  d["gate"] = g.gate.matrix();
  d["logical_action"] = g.logical_action;
  d["logical_fidelity"] = g.logical_fidelity;
  d["phase_corrected"] = g.phase_corrected;
  d["transparency_residuals"] = g.transparency_residuals;
  d["leakage"] = g.leakage;
  return d;
}

}  // namespace

PYBIND11_MODULE(_qeclie, m) {
  m.doc() = "Error algebras, codes and transversal gates for spin systems";

  py::register_exception<CapabilityError>(m, "CapabilityError", PyExc_RuntimeError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_RuntimeError);

  m.def(
      "spin_ops",
      [](int twice_j) {
        const SpinOps s = spin_ops(Spin(twice_j));
        return py::make_tuple(s.x.matrix(), s.y.matrix(), s.z.matrix());
      },
      py::arg("twice_j"), "(Jx, Jy, Jz) for spin J = twice_j / 2.");

  m.def(
      "spin_error_basis",
      [](int twice_j, int grade, const std::string& axes) {
        return basis_of(graded_span(spin_error_set(Spin(twice_j), grade, axes_from(axes))));
      },
      py::arg("twice_j"), py::arg("grade"), py::arg("axes") = "xyz",
      "Orthonormal Hermitian basis of the grade-t spin error span.");

  m.def(
      "local_spin_error_basis",
      [](const std::vector<int>& dims, int grade, const std::string& axes) {
        return basis_of(
            graded_span(local_spin_error_set(SubsystemLayout(dims), grade, axes_from(axes))));
      },
      py::arg("dims"), py::arg("grade"), py::arg("axes") = "xyz");

  m.def(
      "closure",
      [](const std::vector<Matrix>& ops, unsigned threads) {
        const OperatorSpan span = span_from(ops);
        ClosureReport r;
        {
          py::gil_scoped_release release;
          r = lie_closure(span, {threads});
        }
        return closure_dict(r);
      },
      py::arg("ops"), py::arg("threads") = 1,
      "Dimension of the real Lie algebra generated by the operators.");

  py::class_<Code>(m, "Code")
      .def(py::init([](const std::string& name, const std::vector<int>& dims, const Matrix& v) {
             return Code(name, SubsystemLayout(dims), v);
           }),
           py::arg("name"), py::arg("dims"), py::arg("isometry"))
      .def_property_readonly("name", &Code::name)
      .def_property_readonly("dims", [](const Code& c) { return c.layout().dims(); })
      .def_property_readonly("isometry", &Code::isometry)
      .def_property_readonly("physical_dim", &Code::physical_dim)
      .def_property_readonly("logical_dim", &Code::logical_dim)
      .def("to_json", &serialize_code)
      .def_static("from_json", &parse_code, py::arg("text"))
      .def("__repr__", [](const Code& c) {
        return "<Code " + c.name() + " N=" + std::to_string(c.physical_dim()) +
               " K=" + std::to_string(c.logical_dim()) + ">";
      });

  m.def("code_spin25", &code_spin25);
  m.def("code_spin_cat", [](int twice_j) { return code_spin_cat(Spin(twice_j)); },
        py::arg("twice_j"));
  m.def("code_w_state", [](int n, int twice_j) { return code_w_state(n, Spin(twice_j)); },
        py::arg("n"), py::arg("twice_j"));
  m.def("code_multi_spin_cat",
        [](int n, int twice_j) { return code_multi_spin_cat(n, Spin(twice_j)); }, py::arg("n"),
        py::arg("twice_j"));
  m.def("code_422", &code_422);

  m.def(
      "kl_check",
      [](const Code& code, const std::vector<Matrix>& errors, double tol) {
        const KLReport r = kl_check(code, span_from(errors), {tol, 1});
        py::dict d;
        d["c"] = r.c;
        d["max_residual"] = r.max_residual;
        d["correctable"] = r.correctable;
        return d;
      },
      py::arg("code"), py::arg("errors"), py::arg("tol") = kDefaultKLTol,
      "Knill-Laflamme check of the real span of `errors`.");

  m.def("detection_residual", &detection_residual, py::arg("code"), py::arg("errors"));

  m.def(
      "phase_gate",
      [](const Code& code, const std::vector<Matrix>& errors, double phi) {
        return gate_dict(phase_gate(code, span_from(errors), phi));
      },
      py::arg("code"), py::arg("errors"), py::arg("phi"));
  m.def(
      "sx_gate",
      [](const Code& code, const std::vector<Matrix>& errors) {
        return gate_dict(sx_gate(code, span_from(errors)));
      },
      py::arg("code"), py::arg("errors"));
  m.def(
      "cz_gate",
      [](const Code& code, const std::vector<Matrix>& errors) {
        return gate_dict(cz_gate(code, span_from(errors)));
      },
      py::arg("code"), py::arg("errors"));
  m.def("haar_unitary", &haar_unitary, py::arg("k"), py::arg("seed"));

  m.def(
      "certify_transversal_full",
      [](const Code& code) {
        std::vector<GradedErrorSet> sites;
        for (std::size_t i = 0; i < code.layout().sites(); ++i) {
          sites.push_back(site_full_error_set(code.layout(), i));
        }
        const TransversalReport r = certify_transversal(code, sites);
        py::dict d;
        d["verdict"] = to_string(r.verdict);
        d["logical_component_dim"] =
            r.logical_component_dim ? py::cast(*r.logical_component_dim) : py::none();
        d["intersection_dim"] = r.intersection_dim ? py::cast(*r.intersection_dim) : py::none();
        return d;
      },
      py::arg("code"), "Transversal certificate with all of u(d) allowed on every site.");

  m.def(
      "lindblad_superoperator",
      [](const std::vector<int>& dims, double gamma, double time) {
        return lindblad_channel(jx_noise(SubsystemLayout(dims), gamma, time)).superoperator();
      },
      py::arg("dims"), py::arg("gamma"), py::arg("time"),
      "Column-stacked superoperator of per-site Jx dephasing.");

  m.def(
      "sweep_csv",
      [](const std::string& family, int n, const std::vector<double>& j_values,
         const std::vector<double>& gamma_t, double time, unsigned threads) {
        if (!(time > 0)) throw InvalidInput("time must be positive");
        SweepRequest rq{family_from_string(family), n, j_values, {}, time, threads};
        for (double g : gamma_t) rq.gamma_values.push_back(g / time);
        std::ostringstream out;
        {
          py::gil_scoped_release release;
          write_csv(sweep(rq), out);
        }
        return out.str();
      },
      py::arg("family"), py::arg("n"), py::arg("j_values"), py::arg("gamma_t"),
      py::arg("time") = 1.0, py::arg("threads") = 1,
      "Entanglement-fidelity sweep in the documented CSV format.");

  m.def(
      "singleton_check",
      [](long long n, long long k, long long e_t_dim, int t) {
        const BoundReport r = singleton_check(n, k, e_t_dim, t);
        py::dict d;
        d["satisfied"] = r.satisfied;
        d["slack"] = r.slack;
        return d;
      },
      py::arg("n"), py::arg("k"), py::arg("e_t_dim"), py::arg("t") = 0);
  m.def(
      "logical_error_estimate",
      [](int n, double p, int t, const std::string& mode) {
        if (mode != "local" && mode != "correlated") {
          throw InvalidInput("mode must be local or correlated");
        }
        return logical_error_estimate(n, p, t,
                                      mode == "local" ? ErrorMode::local : ErrorMode::correlated);
      },
      py::arg("n"), py::arg("p"), py::arg("t"), py::arg("mode") = "local");
  m.def("min_grade_from_dims", &min_grade_from_dims, py::arg("dims"), py::arg("k"),
        py::arg("e1") = 4);
}

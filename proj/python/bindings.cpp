#include "hsim/codes.hpp"
#include "hsim/compiler.hpp"
#include "hsim/errors.hpp"
#include "hsim/gadgets.hpp"
#include "hsim/ham_io.hpp"
#include "hsim/manifest.hpp"
#include "hsim/matrix.hpp"
#include "hsim/verify.hpp"
#include "hsim/wstate.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace hsim;

namespace {

py::dict stats_dict(const Hamiltonian& h) {
  const GraphStats s = graph_stats(h);
  py::dict d;
  d["kappa"] = s.kappa;
  d["delta"] = s.delta;
  d["mu0"] = format_real(s.mu0);
  d["term_count"] = s.term_count;
  return d;
}

std::vector<std::string> term_strings(const Hamiltonian& h) {
  std::vector<std::string> out;
  out.reserve(h.size());
  for (const auto& t : h.terms()) out.push_back(t.to_string());
  return out;
}

struct PyCompileResult {
  Hamiltonian simulator;
  std::string report;
  std::string layout;
  std::string certificates;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sparse Hamiltonian compiler: Pauli Hamiltonians, W chains, gadgets and verification.";

  auto base = py::register_exception<Error>(m, "HsimError");
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<PreconditionViolated>(m, "PreconditionViolated", base.ptr());
  py::register_exception<StageError>(m, "StageError", base.ptr());

  py::class_<Hamiltonian>(m, "Hamiltonian")
      .def_static("from_text", [](const std::string& text) { return parse_ham(text); }, py::arg("text"),
                  "Parse the .ham text format.")
      .def("to_text", &serialize_ham)
      .def_property_readonly("n_qubits", &Hamiltonian::n_qubits)
      .def("__len__", &Hamiltonian::size)
      .def("terms", &term_strings)
      .def("stats", &stats_dict, "kappa, delta, mu0 and the stored term count.")
      .def("norm_bound", [](const Hamiltonian& h) { return format_real(triangle_norm_bound(h)); })
      .def("to_dense", [](const Hamiltonian& h) { return CMatrix(realize_dense(h)); },
           "Dense matrix; qubit q is bit q of the basis index.")
      .def("__repr__", [](const Hamiltonian& h) {
        return "<Hamiltonian n_qubits=" + std::to_string(h.n_qubits()) + " terms=" + std::to_string(h.size()) + ">";
      });

  m.def("code_hamiltonian", [](const std::string& name) { return build_code_hamiltonian(builtin_code(name)); },
        py::arg("name"), "Stabilizer Hamiltonian of a builtin code: repetition(n), steane, surface(d).");
  m.def("random_sparse", &random_sparse, py::arg("n"), py::arg("kappa"), py::arg("delta"), py::arg("seed"));

  py::class_<PyCompileResult>(m, "CompileResult")
      .def_readonly("simulator", &PyCompileResult::simulator)
      .def_readonly("report_json", &PyCompileResult::report)
      .def_readonly("layout_json", &PyCompileResult::layout)
      .def_readonly("certificates_json", &PyCompileResult::certificates);

  m.def(
      "compile",
      [](const Hamiltonian& h, double epsilon, double eta, double c_n) {
        CompilerOptions o;
        o.epsilon = epsilon;
        o.eta = eta;
        o.c_n = c_n;
        CompilationResult r;
        {
          py::gil_scoped_release release;
          r = compile(h, o);
        }
        return PyCompileResult{r.simulator, dump(report_json(r.report, o)), dump(to_json(r.layout)),
                               dump(certificate_chain_json(r.report))};
      },
      py::arg("hamiltonian"), py::arg("epsilon") = 0.1, py::arg("eta") = 0.1, py::arg("c_n") = 16.0,
      "Compile to a 2-local, degree <= 4, nearest-neighbour simulator.");

  m.def("w_state", [](std::size_t n) { return CVector(w_state(n)); }, py::arg("n"));
  m.def("hw0", &build_hw0, py::arg("n"), "Uncoupled W chain, kernel span{|0..0>, |W>}.");
  m.def("hw0_gap", &hw0_gap, py::arg("n"));
  m.def(
      "policy_chain",
      [](std::size_t n) {
        const WChainSpec s = policy_chain(n);
        return py::dict(py::arg("n") = s.n, py::arg("gamma_coupling") = s.gamma_coupling,
                        py::arg("gap_estimate") = s.gap_estimate);
      },
      py::arg("n"));
  m.def(
      "chain_constants",
      [](std::size_t n) {
        const GadgetConstants c = compute_constants(policy_chain(n), 0, n - 1);
        return py::make_tuple(c.C, c.D);
      },
      py::arg("n"), "Long-range constants (C, D) for the policy chain with end sites.");
  m.def(
      "end_to_end_correlation",
      [](std::size_t n) {
        return correlation_through_chain(build_hw(policy_chain(n)), single(1, 0, Pauli::X),
                                         single(1, static_cast<Qubit>(n - 1), Pauli::X));
      },
      py::arg("n"));
  m.def(
      "overlap",
      [](std::size_t mm, double gamma) {
        const OverlapReport r = delta_overlap_exact(mm, gamma);
        return py::dict(py::arg("a") = r.a, py::arg("l") = r.l, py::arg("delta") = r.delta_ab);
      },
      py::arg("m"), py::arg("gamma"));

  m.def("gadget_residuals", [] {
    std::map<std::string, double> out;
    for (const auto& [name, app] : gadget_suite()) out[name] = residual_report(app).max();
    return out;
  });

  m.def(
      "gentle_measurement",
      [](const CMatrix& rho, const CMatrix& meas) {
        const GentleResult g = gentle_measurement_bound(rho, meas);
        return py::dict(py::arg("trace_distance") = g.trace_distance, py::arg("bound") = g.bound,
                        py::arg("pass") = g.pass);
      },
      py::arg("rho"), py::arg("m"));
}

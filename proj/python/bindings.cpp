#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "folner/diagnostics.hpp"
#include "folner/json_io.hpp"
#include "folner/report.hpp"
#include "folner/spectral.hpp"
#include "folner/tensor.hpp"
#include "folner/traces.hpp"

namespace py = pybind11;
using namespace folner;

namespace {

OperatorSpec op_of(const std::string& s) { return operator_from_json(Json::parse(s)); }
ProjectionSpec proj_of(const std::string& s) { return projection_from_json(Json::parse(s)); }

py::array_t<Complex> to_numpy(const DenseMatrix& m) {
  py::array_t<Complex> out({m.rows(), m.cols()});
  auto view = out.mutable_unchecked<2>();
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < m.cols(); ++j) view(i, j) = m(i, j);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Finite sections, Folner ratios and trace approximation for lattice operators.";
  m.attr("__version__") = kVersion;

  py::register_exception<SpecError>(m, "SpecError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr e) {
    try {
      if (e) std::rethrow_exception(e);
    } catch (const Json::exception& ex) {
      PyErr_SetString(PyExc_ValueError, ex.what());
    }
  });
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  m.def(
      "window",
      [](const std::string& lattice, long n) { return projection_to_json(section_window(lattice_from_json(Json::parse(lattice)), n)).dump(); },
      py::arg("lattice"), py::arg("n"), "Projection JSON for the n-th finite-section window.");

  m.def(
      "compress", [](const std::string& op, const std::string& p) { return to_numpy(compress(op_of(op), proj_of(p))); },
      py::arg("op"), py::arg("projection"));

  m.def(
      "folner_ratio",
      [](const std::string& op, const std::string& p, const std::string& norm) {
        return folner_ratio(op_of(op), proj_of(p), schatten_from_string(norm));
      },
      py::arg("op"), py::arg("projection"), py::arg("p") = "2");

  m.def(
      "off_corner_ratio",
      [](const std::string& op, const std::string& p, const std::string& norm) {
        return off_corner_ratio(op_of(op), proj_of(p), schatten_from_string(norm));
      },
      py::arg("op"), py::arg("projection"), py::arg("p") = "2");

  m.def(
      "qd_gap", [](const std::string& op, const std::string& p) { return qd_gap(op_of(op), proj_of(p)); }, py::arg("op"),
      py::arg("projection"));

  m.def(
      "eigenvalues",
      [](const std::string& op, const std::string& p) {
        const auto atoms = empirical_measure(op_of(op), proj_of(p)).atoms();
        return py::array_t<double>(static_cast<py::ssize_t>(atoms.size()), atoms.data());
      },
      py::arg("op"), py::arg("projection"), "Ascending eigenvalues of the compression.");

  m.def(
      "trace_estimate", [](const std::string& op, const std::string& p) { return trace_estimate(op_of(op), proj_of(p)); },
      py::arg("op"), py::arg("projection"));

  m.def(
      "canonical_trace", [](const std::string& nc) { return canonical_trace(nc_from_json(Json::parse(nc))); },
      py::arg("nc"));

  m.def(
      "tensor_bound",
      [](const std::string& a, const std::string& p, const std::string& b, const std::string& q) {
        return to_json(tensor_bound_check(op_of(a), proj_of(p), op_of(b), proj_of(q))).dump();
      },
      py::arg("a"), py::arg("p"), py::arg("b"), py::arg("q"), "Tensor bound record as a JSON string.");
}

#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qwp/cli.hpp"
#include "qwp/clifford.hpp"
#include "qwp/errors.hpp"
#include "qwp/factorsys.hpp"
#include "qwp/group_io.hpp"
#include "qwp/homology.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Projective wallpaper group classification";

  py::register_exception<qwp::DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<qwp::InvariantViolation>(m, "InvariantViolation", PyExc_RuntimeError);

  m.def("group_names", [] { return qwp::shipped_group_names(); });

  m.def(
      "h2_z2_dimension",
      [](const std::string& name) { return qwp::classify(qwp::shipped_group(name), {0, false}).h2_dimension; },
      py::arg("group"));

  m.def(
      "homology",
      [](const std::string& name, int n) { return qwp::group_homology(*qwp::shipped_group(name), n).str(); },
      py::arg("group"), py::arg("degree"));

  m.def(
      "cohomology",
      [](const std::string& name, int n, const std::string& coeff) {
        auto g = qwp::shipped_group(name);
        auto ec = qwp::shipped_complex(name);
        if (!ec) throw qwp::DomainError("no equivariant complex shipped for '" + name + "'");
        return qwp::group_cohomology(*g, *ec, n, qwp::parse_coefficient(coeff)).str();
      },
      py::arg("group"), py::arg("degree"), py::arg("coeff") = "z2");

  m.def(
      "irrep_dim",
      [](int st, int sp, int qx, int qy) {
        qwp::SymmetryCase c{st, sp, qx, qy};
        qwp::check_case(c);
        return qwp::irrep_dim(qwp::signature(c));
      },
      py::arg("st"), py::arg("sp"), py::arg("qx"), py::arg("qy"));

  m.def(
      "run",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = qwp::cli::run(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run a qwp command line; returns (exit_code, stdout, stderr).");
}

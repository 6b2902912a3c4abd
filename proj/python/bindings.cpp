#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bergman/asymptotics.hpp"
#include "bergman/errors.hpp"
#include "bergman/geometry.hpp"
#include "bergman/oracle.hpp"
#include "bergman/zalcman.hpp"

namespace py = pybind11;
using namespace bergman;

namespace {

py::dict eval_dict(const BergmanEval& e) {
  py::dict d;
  d["J0"] = e.j.j0;
  d["J1"] = e.j.j1;
  d["J2"] = e.j.j2;
  d["kernel"] = e.kernel;
  d["metric_sq"] = e.metric_sq;
  d["curvature"] = e.curvature;
  d["defect"] = e.defect;
  d["alpha"] = e.alpha;
  d["L"] = e.L;
  d["log_scale"] = e.log_scale;
  d["terms_used"] = e.terms_used;
  return d;
}

Annulus make_ring(std::complex<double> center, double inner, double outer) {
  return Annulus::from_radii(center, inner, outer);
}

}  // namespace

PYBIND11_MODULE(_bergman, m) {
  m.doc() = "Bergman kernel, metric and curvature on annuli";

  auto base = py::register_exception<Error>(m, "BergmanError", PyExc_RuntimeError);
  auto domain = py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<OutOfDomainError>(m, "OutOfDomainError", domain.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
  py::register_exception<EnvelopeError>(m, "EnvelopeError", base.ptr());
  py::register_exception<FitError>(m, "FitError", base.ptr());
  py::register_exception<ConstructionError>(m, "ConstructionError", base.ptr());

  py::class_<Truncation>(m, "Truncation")
      .def(py::init<>())
      .def_readwrite("rel_tol", &Truncation::rel_tol)
      .def_readwrite("n_min", &Truncation::n_min)
      .def_readwrite("n_max", &Truncation::n_max)
      .def_readwrite("compensated", &Truncation::compensated);

  m.def("alpha_norm", &alpha_norm, py::arg("n"), py::arg("log_r"), py::arg("log_R"));
  m.def("log_alpha_norm", &log_alpha_norm, py::arg("n"), py::arg("log_r"), py::arg("log_R"));

  m.def(
      "bergman_eval",
      [](double inner, double outer, std::complex<double> z, std::complex<double> center,
         const Truncation& t) { return eval_dict(bergman_eval(make_ring(center, inner, outer), z, t)); },
      py::arg("inner"), py::arg("outer"), py::arg("z"), py::arg("center") = std::complex<double>{},
      py::arg("trunc") = Truncation{});
  m.def(
      "power_point",
      [](double L, double alpha, const Truncation& t) {
        return eval_dict(bergman_eval_power_point(L, alpha, t));
      },
      py::arg("L"), py::arg("alpha"), py::arg("trunc") = Truncation{},
      "Evaluate on P(r, 1) at r**alpha with r = exp(-L).");
  m.def(
      "oracle_eval",
      [](double inner, double outer, std::complex<double> z, int N) {
        return eval_dict(oracle_bergman(make_ring({}, inner, outer), z, N));
      },
      py::arg("inner"), py::arg("outer"), py::arg("z"), py::arg("N") = 40);
  m.def(
      "inclusion_check",
      [](double q1, double q2, std::complex<double> z) {
        return inclusion_monotonicity_check(q1, q2, z).ok;
      },
      py::arg("q1"), py::arg("q2"), py::arg("z"));

  m.def(
      "rate_constant",
      [](double alpha, std::vector<double> Ls) {
        const RateStudy s = rate_constant_study(alpha, Ls);
        return py::make_tuple(s.last, s.spread, s.cauchy);
      },
      py::arg("alpha"), py::arg("L_list"));
  m.def(
      "fit_A",
      [](std::vector<double> alphas, std::vector<double> Ls) {
        const AFit f = fit_A(alphas, Ls);
        return py::make_tuple(f.estimate, f.residual);
      },
      py::arg("alpha_list"), py::arg("L_list"));
  m.def(
      "tilde_suite",
      [](double alpha, std::vector<double> Ls, double eps, double A_mag) {
        return tilde_suite(alpha, Ls, eps, A_mag).pass;
      },
      py::arg("alpha"), py::arg("L_list"), py::arg("eps"), py::arg("A_mag"));

  m.def(
      "zalcman_json",
      [](double theta, int levels, double slack) { return to_json(construct(theta, levels, slack)); },
      py::arg("theta"), py::arg("levels"), py::arg("slack") = 0.1);
  m.def(
      "zalcman_validate",
      [](const std::string& text) {
        const GeometryReport g = validate_geometry(from_json(text));
        return py::make_tuple(g.ok(), g.first_violation);
      },
      py::arg("text"));
}

// Python bindings for the multiphoton coherent-state toolkit.  The surface
// mirrors the CLI: uncertainty products, Mandel Q statistics, Wigner grids,
// cyclic geometric phases, the circle decomposition, and the self-check
// battery, for both the scalar and the graded (two-component) families.
#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "susyphoton/dynamics.hpp"
#include "susyphoton/mcs.hpp"
#include "susyphoton/susy.hpp"
#include "susyphoton/verify.hpp"
#include "susyphoton/wigner.hpp"

namespace py = pybind11;
using namespace susyphoton;

namespace {

McsSpec scalar_spec(int m, int j, cplx z) { return {m, j, z}; }

SusySpec graded_spec(int m, int j, cplx z, double k2, cplx a, cplx c) {
  return {m, j, z, k2, a, c};
}

py::array_t<double> grid_values(const WignerGrid& g) {
  py::array_t<double> out({g.nq, g.np});
  std::copy(g.values.begin(), g.values.end(), out.mutable_data());
  return out;
}

std::vector<double> grid_axis(int n, double lo, double hi) {
  std::vector<double> out((size_t)n);
  const double d = (hi - lo) / n;
  for (int i = 0; i < n; ++i) out[(size_t)i] = lo + (i + 0.5) * d;
  return out;
}

py::dict report_to_dict(const VerifyReport& rep) {
  py::list checks;
  for (const auto& c : rep.checks) {
    py::dict d;
    d["name"] = c.name;
    d["measured"] = c.measured;
    d["tolerance"] = c.tolerance;
    d["passed"] = c.passed;
    d["seconds"] = c.seconds;
    if (!c.note.empty()) d["note"] = c.note;
    checks.append(d);
  }
  py::dict out;
  out["full"] = rep.full;
  out["all_passed"] = rep.all_passed();
  out["total_seconds"] = rep.total_seconds();
  out["checks"] = checks;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() =
      "Multiphoton coherent states of the oscillator and their graded "
      "two-component extension: state construction, uncertainty products, "
      "photon statistics, Wigner functions, and cyclic geometric phases.";

  py::class_<HurResult>(mod, "UncertaintyResult",
                        "Quadrature spreads and their product for one state.")
      .def_readonly("sigma_q", &HurResult::sigma_q)
      .def_readonly("sigma_p", &HurResult::sigma_p)
      .def_readonly("product", &HurResult::product)
      .def("__repr__", [](const HurResult& r) {
        return "UncertaintyResult(sigma_q=" + std::to_string(r.sigma_q) +
               ", sigma_p=" + std::to_string(r.sigma_p) +
               ", product=" + std::to_string(r.product) + ")";
      });

  py::class_<ScsComponent>(mod, "CircleComponent",
                           "One coherent component of the circle decomposition.")
      .def_readonly("label", &ScsComponent::label)
      .def_readonly("weight", &ScsComponent::weight)
      .def("__repr__", [](const ScsComponent& c) {
        return "CircleComponent(label=(" + std::to_string(c.label.real()) + "+" +
               std::to_string(c.label.imag()) + "j), weight=(" +
               std::to_string(c.weight.real()) + "+" +
               std::to_string(c.weight.imag()) + "j))";
      });

  py::class_<LoopReport>(mod, "LoopReport",
                         "Phase bookkeeping for one closed evolution loop.")
      .def_readonly("period", &LoopReport::period)
      .def_readonly("total_phase", &LoopReport::total_phase)
      .def_readonly("fidelity", &LoopReport::fidelity)
      .def_readonly("geometric_phase", &LoopReport::geometric_phase)
      .def_readonly("spectral_offset", &LoopReport::spectral_offset)
      .def("__repr__", [](const LoopReport& r) {
        return "LoopReport(period=" + std::to_string(r.period) +
               ", fidelity=" + std::to_string(r.fidelity) +
               ", geometric_phase=" + std::to_string(r.geometric_phase) + ")";
      });

  py::class_<WignerGrid>(mod, "WignerGrid",
                         "Cell-centered phase-space grid of Wigner values.")
      .def_property_readonly("q_min", [](const WignerGrid& g) { return g.q_min; })
      .def_property_readonly("q_max", [](const WignerGrid& g) { return g.q_max; })
      .def_property_readonly("p_min", [](const WignerGrid& g) { return g.p_min; })
      .def_property_readonly("p_max", [](const WignerGrid& g) { return g.p_max; })
      .def_property_readonly("nq", [](const WignerGrid& g) { return g.nq; })
      .def_property_readonly("np", [](const WignerGrid& g) { return g.np; })
      .def_property_readonly("values", &grid_values,
                             "Wigner values, shape (nq, np), q along rows.")
      .def_property_readonly(
          "q_axis",
          [](const WignerGrid& g) { return grid_axis(g.nq, g.q_min, g.q_max); },
          "Cell-center q coordinates.")
      .def_property_readonly(
          "p_axis",
          [](const WignerGrid& g) { return grid_axis(g.np, g.p_min, g.p_max); },
          "Cell-center p coordinates.")
      .def("integral", &WignerGrid::integral,
           "Riemann integral of the grid; 1 for a normalized state.")
      .def("norm_residual", &WignerGrid::norm_residual,
           "|integral - 1|, a quality measure for window and resolution.")
      .def(
          "negativity",
          [](const WignerGrid& g) {
            const Negativity n = negativity(g);
            return py::make_tuple(n.min_value, n.negative_volume);
          },
          "(most negative value, integrated volume of the negative part).");

  // ---- scalar family -------------------------------------------------
  mod.def(
      "coefficients",
      [](int m, int j, cplx z) {
        return build_mcs(scalar_spec(m, j, z)).vector.c;
      },
      py::arg("m"), py::arg("j"), py::arg("z"),
      "Number-basis coefficients of the normalized state; the support is the "
      "residue class j mod m.");

  mod.def(
      "normalization",
      [](int m, int j, double x) { return normalization(m, j, x); },
      py::arg("m"), py::arg("j"), py::arg("x"),
      "Normalization constant at squared amplitude x = |z|^2.");

  mod.def(
      "uncertainty",
      [](int m, int j, cplx z) { return hur(scalar_spec(m, j, z)); },
      py::arg("m"), py::arg("j"), py::arg("z"),
      "Quadrature uncertainty product sigma_q * sigma_p.");

  mod.def(
      "mandel_q", [](int m, int j, cplx z) { return mandel_q(scalar_spec(m, j, z)); },
      py::arg("m"), py::arg("j"), py::arg("z"),
      "Mandel Q parameter; negative values flag sub-Poissonian statistics.");

  mod.def(
      "geometric_phase",
      [](int m, int j, cplx z) { return geometric_phase_scalar(scalar_spec(m, j, z)); },
      py::arg("m"), py::arg("j"), py::arg("z"),
      "Geometric phase accumulated over one closed evolution loop.");

  mod.def(
      "circle_decomposition",
      [](int m, int j, cplx z) { return scs_decomposition(scalar_spec(m, j, z)); },
      py::arg("m"), py::arg("j"), py::arg("z"),
      "Decompose the state into m coherent states on the circle |z| e^{2 pi "
      "i k / m}.");

  mod.def(
      "loop_check",
      [](int m, int j, cplx z) { return loop_check(scalar_spec(m, j, z)); },
      py::arg("m"), py::arg("j"), py::arg("z"),
      "Evolve through one closure period and report fidelity and phases.");

  mod.def(
      "wigner",
      [](int m, int j, cplx z, double q_min, double q_max, double p_min,
         double p_max, int nq, int np) {
        return wigner_scalar_mcs(scalar_spec(m, j, z),
                                 {q_min, q_max, p_min, p_max, nq, np});
      },
      py::arg("m"), py::arg("j"), py::arg("z"), py::kw_only(),
      py::arg("q_min") = -8.0, py::arg("q_max") = 8.0, py::arg("p_min") = -8.0,
      py::arg("p_max") = 8.0, py::arg("nq") = 257, py::arg("np") = 257,
      "Wigner function on a phase-space window.");

  // ---- graded family ---------------------------------------------------
  mod.def(
      "supercoherent_components",
      [](int m, int j, cplx z, double k2, cplx a, cplx c) {
        const SpinorState s = build_supercoherent(graded_spec(m, j, z, k2, a, c));
        return py::make_tuple(s.upper.c, s.lower.c);
      },
      py::arg("m"), py::arg("j"), py::arg("z"), py::arg("k2"),
      py::arg("a") = cplx(1.0, 0.0), py::arg("c") = cplx(1.0, 0.0),
      "Number-basis coefficients (upper, lower) of the normalized "
      "two-component state.");

  mod.def(
      "uncertainty_susy",
      [](int m, int j, cplx z, double k2, cplx a, cplx c) {
        return hur_susy(graded_spec(m, j, z, k2, a, c));
      },
      py::arg("m"), py::arg("j"), py::arg("z"), py::arg("k2"),
      py::arg("a") = cplx(1.0, 0.0), py::arg("c") = cplx(1.0, 0.0),
      "Quadrature uncertainty product for the two-component state.");

  mod.def(
      "mandel_q_susy",
      [](int m, int j, cplx z, double k2, cplx a, cplx c) {
        return mandel_q_susy(graded_spec(m, j, z, k2, a, c));
      },
      py::arg("m"), py::arg("j"), py::arg("z"), py::arg("k2"),
      py::arg("a") = cplx(1.0, 0.0), py::arg("c") = cplx(1.0, 0.0),
      "Mandel Q parameter for the two-component state.");

  mod.def(
      "mandel_root_k2",
      [](int m, int j, cplx z, double lo, double hi) {
        return mandel_root_k2(m, j, z, lo, hi);
      },
      py::arg("m"), py::arg("j"), py::arg("z"), py::arg("lo") = -5.0,
      py::arg("hi") = 5.0,
      "First coupling k2 in [lo, hi] where Q crosses zero (Poissonian "
      "statistics).  Raises RuntimeError when no crossing exists in range.");

  mod.def(
      "geometric_phase_susy",
      [](int m, int j, cplx z, double k2, cplx a, cplx c) {
        return geometric_phase_susy(graded_spec(m, j, z, k2, a, c));
      },
      py::arg("m"), py::arg("j"), py::arg("z"), py::arg("k2"),
      py::arg("a") = cplx(1.0, 0.0), py::arg("c") = cplx(1.0, 0.0),
      "Geometric phase of the two-component state over one closed loop; "
      "equals -2 pi j / m plus the energy share.");

  mod.def(
      "loop_check_susy",
      [](int m, int j, cplx z, double k2, cplx a, cplx c, double omega) {
        return loop_check(graded_spec(m, j, z, k2, a, c), omega);
      },
      py::arg("m"), py::arg("j"), py::arg("z"), py::arg("k2"),
      py::arg("a") = cplx(1.0, 0.0), py::arg("c") = cplx(1.0, 0.0),
      py::arg("omega") = 1.0,
      "Evolve the two-component state through one closure period.");

  mod.def(
      "wigner_susy",
      [](int m, int j, cplx z, double k2, cplx a, cplx c, double q_min,
         double q_max, double p_min, double p_max, int nq, int np) {
        return wigner_susy(graded_spec(m, j, z, k2, a, c),
                           {q_min, q_max, p_min, p_max, nq, np});
      },
      py::arg("m"), py::arg("j"), py::arg("z"), py::arg("k2"),
      py::arg("a") = cplx(1.0, 0.0), py::arg("c") = cplx(1.0, 0.0),
      py::kw_only(), py::arg("q_min") = -8.0, py::arg("q_max") = 8.0,
      py::arg("p_min") = -8.0, py::arg("p_max") = 8.0, py::arg("nq") = 257,
      py::arg("np") = 257,
      "Wigner function of the two-component state (sum of both components).");

  // ---- self checks -----------------------------------------------------
  mod.def(
      "verify", [](bool full) { return report_to_dict(run_verify(full)); },
      py::arg("full") = false,
      "Run the built-in consistency battery; returns a dict report with "
      "per-check name, measured value, tolerance, and pass flag.");
}

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "hmlab/claims.hpp"
#include "hmlab/gallery.hpp"
#include "hmlab/rkc.hpp"
#include "hmlab/scenario.hpp"

namespace py = pybind11;
using namespace hmlab;

namespace {

PolarGrid grid_of(int radial, int angular, double max_radius) { return PolarGrid{radial, angular, max_radius}; }

py::dict certificate_dict(const Certificate& c) {
  py::dict d;
  d["certified"] = c.certified;
  d["ring_min"] = c.ring_min;
  d["interior_min"] = c.interior_min;
  d["curvature_bound"] = c.curvature_bound;
  d["diameter_bound"] = c.diameter_bound;
  d["applied_bound"] = c.applied_bound;
  d["k"] = c.k;
  d["K"] = c.big_k;
  d["m"] = c.m;
  d["M"] = c.big_m;
  d["d"] = c.d;
  return d;
}

}  // namespace

PYBIND11_MODULE(_hmlab, m) {
  m.doc() = "hmlab core bindings";

  static py::exception<Error> error(m, "Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::class_<PolarGrid>(m, "PolarGrid")
      .def(py::init(&grid_of), py::arg("radial") = 64, py::arg("angular") = 256, py::arg("max_radius") = 0.999)
      .def_readwrite("radial", &PolarGrid::radial)
      .def_readwrite("angular", &PolarGrid::angular)
      .def_readwrite("max_radius", &PolarGrid::max_radius);

  py::enum_<Verdict>(m, "Verdict")
      .value("Pass", Verdict::Pass)
      .value("Fail", Verdict::Fail)
      .value("Unverifiable", Verdict::Unverifiable);

  py::class_<ClaimReport>(m, "ClaimReport")
      .def_readonly("id", &ClaimReport::id)
      .def_readonly("margin", &ClaimReport::margin)
      .def_readonly("argmin", &ClaimReport::argmin)
      .def_readonly("tolerance", &ClaimReport::tolerance)
      .def_readonly("verdict", &ClaimReport::verdict)
      .def_readonly("evaluations", &ClaimReport::evaluations)
      .def_readonly("notes", &ClaimReport::notes)
      .def_property_readonly("parameters",
                             [](const ClaimReport& r) {
                               py::dict d;
                               for (const auto& [k, v] : r.parameters) d[py::str(k)] = v;
                               return d;
                             })
      .def("passed", &ClaimReport::pass)
      .def("__repr__", [](const ClaimReport& r) {
        return "<ClaimReport " + r.id + " " + std::string(to_string(r.verdict)) + ">";
      });

  py::class_<DiskHarmonicMap>(m, "DiskHarmonicMap")
      .def("__call__", [](const DiskHarmonicMap& h, cplx z) { return eval(h, z); })
      .def("jacobian", [](const DiskHarmonicMap& h, cplx z) { return jacobian(h, z); })
      .def("wirtinger", [](const DiskHarmonicMap& h, cplx z) { return wirtinger(h, z); })
      .def_property_readonly("modes", &DiskHarmonicMap::modes)
      .def("coefficient", &DiskHarmonicMap::coefficient);

  py::class_<DiskScenario>(m, "DiskScenario")
      .def_readonly("name", &DiskScenario::name)
      .def_readonly("map", &DiskScenario::map)
      .def_readwrite("tolerance", &DiskScenario::tolerance)
      .def_readwrite("seed", &DiskScenario::seed)
      .def_readwrite("unit_disk_target", &DiskScenario::unit_disk_target)
      .def("transformed", &DiskScenario::transformed, py::arg("a"), py::arg("b"))
      .def(
          "run_claims",
          [](const DiskScenario& s, const std::vector<std::string>& ids, double scale) {
            py::gil_scoped_release release;
            return run_claims(s, ids, scale);
          },
          py::arg("ids") = std::vector<std::string>{}, py::arg("tolerance_scale") = 1.0);

  m.def(
      "identity_scenario", [](int radial, int angular, double max_radius) {
        return identity_scenario(grid_of(radial, angular, max_radius));
      },
      py::arg("radial") = 64, py::arg("angular") = 256, py::arg("max_radius") = 0.999);

  m.def(
      "polynomial_scenario",
      [](std::vector<cplx> analytic, std::vector<cplx> coanalytic, int radial, int angular, double max_radius) {
        return scenario_from_polynomial("polynomial", std::move(analytic), std::move(coanalytic),
                                        grid_of(radial, angular, max_radius));
      },
      py::arg("analytic"), py::arg("coanalytic"), py::arg("radial") = 64, py::arg("angular") = 256,
      py::arg("max_radius") = 0.999);

  m.def(
      "ellipse_scenario",
      [](double a, double b, std::vector<double> speed, double start_offset, int radial, int angular,
         double max_radius) {
        auto curve = std::make_shared<const ConvexCurve>(ellipse_curve(a, b));
        if (speed.empty()) speed.assign(kDefaultBoundarySamples, 1.0);
        return scenario_from_boundary("ellipse", boundary_from_speed(curve, speed, start_offset),
                                      grid_of(radial, angular, max_radius));
      },
      py::arg("a"), py::arg("b"), py::arg("speed") = std::vector<double>{}, py::arg("start_offset") = 0.0,
      py::arg("radial") = 64, py::arg("angular") = 256, py::arg("max_radius") = 0.999,
      "Poisson extension onto the ellipse; speed holds samples of |f'| on a uniform grid (constant when empty).");

  m.def("self_map_gallery", &self_map_gallery, py::arg("count"), py::arg("seed") = 7,
        py::arg("grid") = PolarGrid{});

  m.def("claim_catalog", [] {
    py::list out;
    for (const auto& c : claim_catalog())
      out.append(py::make_tuple(c.id, c.target == ClaimTarget::Disk ? "disk" : "ball", c.summary));
    return out;
  });

  m.def("certify", [](const DiskScenario& s) { return certificate_dict(certify(s)); });

  m.def("hall_quantities", [](const DiskHarmonicMap& h) {
    const auto q = hall_quantities(h);
    return py::make_tuple(q.energy, q.analytic_one);
  });

  m.def("mobius_derivative", &mobius_derivative, py::arg("b"), py::arg("z"));

  m.def(
      "homotopy_trace",
      [](const DiskScenario& s, int intervals) {
        if (!s.boundary) throw Error(ErrorCode::InvalidArgument, "scenario has no boundary map");
        const auto t = homotopy_trace(s.boundary->curve_ptr(), *s.boundary, intervals, s.grid);
        return py::make_tuple(t.lambda, t.m, t.max_jump);
      },
      py::arg("scenario"), py::arg("intervals") = 20);

  m.def(
      "run_scenario_file",
      [](const std::string& path, std::optional<std::vector<std::string>> claims, std::optional<std::uint64_t> seed,
         double tolerance_scale) {
        RunOptions opts{std::move(claims), seed, tolerance_scale};
        const auto result = run_scenario(load_scenario(path), opts);
        return py::make_tuple(result.report_json, result.all_pass);
      },
      py::arg("path"), py::arg("claims") = py::none(), py::arg("seed") = py::none(),
      py::arg("tolerance_scale") = 1.0, "Runs a scenario file; returns (report JSON text, all passed).");

  m.def(
      "grid_csv", [](const std::string& path, const std::string& field) { return grid_csv(load_scenario(path), field); },
      py::arg("path"), py::arg("field"));
}

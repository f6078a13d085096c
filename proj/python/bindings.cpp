#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "latmech/catalogue.hpp"
#include "latmech/cli.hpp"
#include "latmech/fe_homog.hpp"
#include "latmech/io.hpp"
#include "latmech/lattice.hpp"
#include "latmech/metrics.hpp"
#include "latmech/optimize.hpp"
#include "latmech/psd.hpp"
#include "latmech/tensor4.hpp"

namespace py = pybind11;
using namespace latmech;

namespace {

psd::PsdMethod method_from(const std::string& name) {
  const auto m = psd::parse_method(name);
  if (!m) throw py::value_error("unknown PSD method '" + name + "'");
  return *m;
}

Lattice make_lattice(const std::string& name, const Mat3& cell, const std::vector<Vec3>& nodes,
                     const std::vector<std::array<int, 5>>& edges, double radius) {
  std::vector<Edge> es;
  for (const auto& e : edges) es.push_back({e[0], e[1], Vec3i(e[2], e[3], e[4])});
  return Lattice(name, cell, nodes, std::move(es), radius);
}

std::vector<std::array<int, 5>> edge_rows(const Lattice& lat) {
  std::vector<std::array<int, 5>> out;
  for (const Edge& e : lat.edges()) out.push_back({e.i, e.j, e.shift.x(), e.shift.y(), e.shift.z()});
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Periodic strut-lattice elasticity: tensors, PSD projections, FE homogenization, metrics";
  m.attr("__version__") = cli::version();

  py::register_exception<HomogenizationError>(m, "HomogenizationError", PyExc_RuntimeError);

  // Tensors are exchanged with Python as 6x6 Mandel matrices.
  m.def("isotropic", [](double lam, double mu) { return to_mandel(ElasticTensor4::isotropic(lam, mu)).matrix(); },
        py::arg("lam"), py::arg("mu"));
  m.def("cubic", [](double c11, double c12, double c44) { return to_mandel(ElasticTensor4::cubic(c11, c12, c44)).matrix(); },
        py::arg("c11"), py::arg("c12"), py::arg("c44"));
  m.def("mandel_rotation", [](const Mat3& r) { return mandel_rotation(r).r_mandel; }, py::arg("r"));
  m.def("rotate", [](const Mat6& c, const Mat3& r) { return to_mandel(rotate(from_mandel(c), r)).matrix(); },
        py::arg("mandel"), py::arg("r"), "Rotate by Cartesian contraction");
  m.def("directional_modulus", [](const Mat6& c, const Vec3& d) { return directional_modulus(from_mandel(c), d); },
        py::arg("mandel"), py::arg("d"));
  m.def("kelvin_eigenvalues", [](const Mat6& c) { return kelvin_spectrum(from_mandel(c)).eigenvalues; },
        py::arg("mandel"));
  m.def("psd_project", [](const Mat6& c, const std::string& method) { return psd::project(c, method_from(method)); },
        py::arg("mandel"), py::arg("method"));

  py::class_<Lattice>(m, "Lattice")
      .def(py::init(&make_lattice), py::arg("name"), py::arg("cell"), py::arg("nodes"), py::arg("edges"),
           py::arg("radius"))
      .def_property_readonly("name", &Lattice::name)
      .def_property_readonly("cell", &Lattice::cell)
      .def_property_readonly("nodes", &Lattice::nodes)
      .def_property_readonly("edges", &edge_rows)
      .def_property_readonly("radius", &Lattice::radius)
      .def("with_radius", &Lattice::with_radius)
      .def("to_json", [](const Lattice& l) { return io::to_json_line(l); })
      .def_static("from_json", [](const std::string& s) { return io::parse_lattice(s); })
      .def("__repr__", [](const Lattice& l) {
        return "<Lattice '" + l.name() + "' nodes=" + std::to_string(l.node_count()) +
               " edges=" + std::to_string(l.edge_count()) + ">";
      });

  m.def("catalogue", &catalogue::reference_set, "Built-in reference lattices");
  m.def("tessellate", &tessellate, py::arg("lattice"), py::arg("n"));
  m.def("perturb", &perturb, py::arg("lattice"), py::arg("level"), py::arg("seed") = 0);
  m.def("rotate_lattice", &rotate_lattice, py::arg("lattice"), py::arg("r"));
  m.def("relative_density", &relative_density, py::arg("lattice"));

  m.def(
      "homogenize",
      [](const Lattice& lat, double E, double nu) {
        const BeamMaterial mat{E, nu};
        py::gil_scoped_release release;
        return to_mandel(homogenize(lat, mat).stiffness).matrix();
      },
      py::arg("lattice"), py::arg("E") = 1.0, py::arg("nu") = 0.3, "Effective stiffness as a Mandel matrix");

  m.def("l_comp", [](const Mat6& p, const Mat6& t) { return metrics::l_comp(MandelMatrix(p), MandelMatrix(t)); },
        py::arg("pred"), py::arg("target"));
  m.def(
      "l_dir",
      [](const Mat6& p, const Mat6& t, std::size_t n, std::uint64_t seed) {
        const auto d = metrics::l_dir(from_mandel(p), from_mandel(t), metrics::DirectionSet::random(n, seed));
        return py::make_tuple(d.l_dir, d.l_dir_rel);
      },
      py::arg("pred"), py::arg("target"), py::arg("n") = 250, py::arg("seed") = 0);

  m.def(
      "optimize",
      [](const Lattice& base, const Mat6& target, double step_size, int max_steps) {
        optimize::DesignProblem prob;
        prob.base = base;
        prob.target = from_mandel(target);
        for (std::size_t n = 0; n < base.node_count(); ++n) prob.free_nodes.push_back(static_cast<int>(n));
        prob.step_size = step_size;
        prob.max_steps = max_steps;
        optimize::DesignTrace t;
        {
          py::gil_scoped_release release;
          t = optimize::solve(prob);
        }
        py::dict out;
        out["objective_history"] = t.objective_history;
        out["final_lattice"] = t.final_lattice;
        out["final_stiffness"] = to_mandel(t.final_stiffness).matrix();
        out["stop_reason"] = t.stop_reason;
        return out;
      },
      py::arg("base"), py::arg("target"), py::arg("step_size") = optimize::kDefaultStepSize,
      py::arg("max_steps") = 50);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::dispatch(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command-line tool in-process; returns (exit code, stdout, stderr)");
}

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "amoeba/basis.hpp"
#include "amoeba/io.hpp"
#include "amoeba/membership.hpp"
#include "amoeba/polytope.hpp"
#include "amoeba/solver.hpp"
#include "amoeba/verify.hpp"

namespace py = pybind11;
using namespace amoeba;

namespace {

TorusPoint to_point(const std::vector<Complex>& coords) { return TorusPoint(coords); }

LogPoint to_log(const std::vector<double>& u) { return LogPoint{u}; }

SolutionSet make_solutions(const std::vector<std::vector<Complex>>& points, std::vector<int> mults) {
  if (points.empty()) throw DomainError("need at least one solution");
  if (mults.empty()) mults.assign(points.size(), 1);
  if (mults.size() != points.size()) throw DomainError("mults must match points");
  SolutionSet sols(points.front().size());
  for (std::size_t i = 0; i < points.size(); ++i) sols.add(TorusPoint(points[i], mults[i]));
  return sols;
}

GridSpec make_grid(const SolutionSet& sols, std::optional<std::size_t> resolution,
                   std::optional<std::vector<std::pair<double, double>>> box, double tol) {
  GridSpec grid = default_grid(sols);
  if (box) grid.box = *box;
  if (resolution) grid.resolution = *resolution;
  grid.tol = tol;
  return grid;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Amoeba bases for zero-dimensional varieties in the complex torus";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

  py::class_<AffineForm>(m, "AffineForm")
      .def(py::init<Complex, std::vector<Complex>>(), py::arg("b0"), py::arg("b"))
      .def_property_readonly("b0", &AffineForm::b0)
      .def_property_readonly("b", &AffineForm::b)
      .def("__call__", [](const AffineForm& f, const std::vector<Complex>& z) { return evaluate_affine(f, z); })
      .def("__repr__", [](const AffineForm& f) {
        return "<AffineForm n=" + std::to_string(f.dim()) + ">";
      });

  py::class_<ArrangementPoly>(m, "ArrangementPoly")
      .def_property_readonly("factors", &ArrangementPoly::factors)
      .def_property_readonly("label", [](const ArrangementPoly& g) { return g.label().str(); })
      .def_property_readonly("degree", &ArrangementPoly::degree)
      .def("__call__", [](const ArrangementPoly& g, const std::vector<Complex>& z) { return evaluate_arrangement(g, z); });

  py::class_<SolutionSet>(m, "SolutionSet")
      .def(py::init(&make_solutions), py::arg("points"), py::arg("mults") = std::vector<int>{})
      .def_static("from_json", &io::parse_solutions)
      .def("to_json", &io::format_solutions)
      .def_property_readonly("n", &SolutionSet::n)
      .def_property_readonly("total_count", &SolutionSet::total_count)
      .def_property_readonly("mixed_volume", &SolutionSet::mixed_volume)
      .def_property_readonly("points", [](const SolutionSet& s) {
        std::vector<std::vector<Complex>> out;
        for (const auto& p : s.points()) out.push_back(p.coords());
        return out;
      })
      .def_property_readonly("mults", [](const SolutionSet& s) {
        std::vector<int> out;
        for (const auto& p : s.points()) out.push_back(p.mult());
        return out;
      })
      .def("__len__", &SolutionSet::size);

  py::class_<AmoebaBasis>(m, "AmoebaBasis")
      .def_static("from_json", &io::parse_basis)
      .def("to_json", &io::format_basis)
      .def_readonly("n", &AmoebaBasis::n)
      .def_readonly("l", &AmoebaBasis::l)
      .def_readonly("generators", &AmoebaBasis::generators)
      .def_readonly("mu_bound", &AmoebaBasis::mu_bound)
      .def_property_readonly("mode", [](const AmoebaBasis& b) { return to_string(b.mode); })
      .def_property_readonly("max_degree", &AmoebaBasis::max_degree)
      .def("__len__", [](const AmoebaBasis& b) { return b.generators.size(); })
      .def("__eq__", [](const AmoebaBasis& a, const AmoebaBasis& b) { return a == b; });

  m.def("log_map", [](const std::vector<Complex>& z) { return log_map(to_point(z)).u; }, py::arg("z"));
  m.def("norm0", [](const std::vector<Complex>& z) { return norm0(to_point(z)); }, py::arg("z"));

  m.def(
      "fpt_margin",
      [](const AffineForm& f, const std::vector<double>& u) {
        auto r = fpt_margin(f, to_log(u));
        return py::make_tuple(r.margin, r.tight_index);
      },
      py::arg("form"), py::arg("u"), "(margin, tight_index); margin <= 0 on the hyperplane amoeba");
  m.def(
      "fpt_member", [](const AffineForm& f, const std::vector<double>& u, double tol) { return fpt_member(f, to_log(u), tol); },
      py::arg("form"), py::arg("u"), py::arg("tol") = kDefaultMembershipTol);
  m.def(
      "phase_oracle",
      [](const AffineForm& f, const std::vector<double>& u, std::size_t samples) { return phase_oracle(f, to_log(u), samples); },
      py::arg("form"), py::arg("u"), py::arg("samples") = 1000);

  m.def(
      "build_basis", [](const SolutionSet& s, const std::string& mode) { return build_basis(s, parse_mode(mode)); },
      py::arg("solutions"), py::arg("mode") = "full");
  m.def(
      "enumerate_h_tuples",
      [](std::size_t n, std::size_t l, const std::string& mode) { return enumerate_h_tuples(n, l, parse_mode(mode)); },
      py::arg("n"), py::arg("l"), py::arg("mode") = "full");
  m.def("root_check", &root_check, py::arg("basis"), py::arg("solutions"), py::arg("tol") = 1e-9);
  m.def(
      "intersection_margin",
      [](const AmoebaBasis& b, const std::vector<double>& u) { return intersection_margin(b, to_log(u)); },
      py::arg("basis"), py::arg("u"));

  m.def(
      "verify_basis",
      [](const AmoebaBasis& b, const SolutionSet& s, std::optional<std::size_t> resolution,
         std::optional<std::vector<std::pair<double, double>>> box, double tol) {
        auto r = verify_basis(b, s, make_grid(s, resolution, box, tol));
        py::list members;
        for (const auto& mp : r.member_points) members.append(py::make_tuple(mp.u.u, mp.margin));
        py::dict d;
        d["passed"] = r.passed;
        d["members"] = members;
        d["max_distance"] = r.max_distance;
        d["radius"] = r.radius;
        d["solution_margins"] = r.solution_margins;
        d["missed"] = r.missed.size();
        return d;
      },
      py::arg("basis"), py::arg("solutions"), py::arg("resolution") = py::none(), py::arg("box") = py::none(),
      py::arg("tol") = kDefaultMembershipTol);

  m.def(
      "mixed_volume",
      [](const std::vector<std::vector<std::vector<std::int64_t>>>& supports) {
        std::vector<NewtonPolytope> polys;
        for (const auto& s : supports) {
          if (s.empty()) throw DomainError("empty support");
          polys.emplace_back(s.front().size(), s);
        }
        return mixed_volume(polys);
      },
      py::arg("supports"), "Normalized mixed volume of lattice supports (n <= 3)");
  m.def("basis_length_bound", &basis_length_bound, py::arg("n"), py::arg("mu"));

  m.def(
      "solve_system", [](const std::string& system_json) { return solve_system(io::parse_system(system_json)); },
      py::arg("system_json"), "Solve a system given in the JSON system format (n <= 2)");
}

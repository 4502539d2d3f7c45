#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "p3p/experiments.hpp"
#include "p3p/geom.hpp"
#include "p3p/oracle.hpp"
#include "p3p/quartic.hpp"
#include "p3p/serialize.hpp"
#include "p3p/solver.hpp"

namespace py = pybind11;
using namespace p3p;

namespace {

ToroidLabel label_from(const std::string& name) {
  for (int k = 0; k < 6; ++k) {
    const auto l = static_cast<ToroidLabel>(k);
    if (name == short_name(l) || name == to_string(l)) return l;
  }
  throw Error(ErrorKind::InvalidInput, "unknown toroid '" + name + "'");
}

CrossingTheorem crossing_from(int id) {
  switch (id) {
    case 3: return CrossingTheorem::Theorem3;
    case 4: return CrossingTheorem::Theorem4;
    case 5: return CrossingTheorem::Theorem5;
  }
  throw Error(ErrorKind::InvalidInput, "crossing theorems are 3, 4 and 5");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "P3P solution counting on inscribed-angle toroids (C++ core)";

  // args = (message, kind name)
  static py::handle exc = py::exception<Error>(m, "P3PError", PyExc_ValueError).release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(exc, py::make_tuple(e.what(), std::string(to_string(e.kind()))));
    }
  });

  py::class_<ControlTriangle>(m, "Triangle")
      .def(py::init(&triangle_from_sides), py::arg("a"), py::arg("b"), py::arg("c"))
      .def_readonly("a", &ControlTriangle::a)
      .def_readonly("b", &ControlTriangle::b)
      .def_readonly("c", &ControlTriangle::c)
      .def_readonly("angle_a", &ControlTriangle::angleA)
      .def_readonly("angle_b", &ControlTriangle::angleB)
      .def_readonly("angle_c", &ControlTriangle::angleC)
      .def_readonly("A", &ControlTriangle::A)
      .def_readonly("B", &ControlTriangle::B)
      .def_readonly("C", &ControlTriangle::C)
      .def("diameter", &ControlTriangle::diameter)
      .def("circumradius", &ControlTriangle::circumradius)
      .def("circumcenter", &ControlTriangle::circumcenter)
      .def("is_acute", &ControlTriangle::is_acute)
      .def("__repr__", [](const ControlTriangle& t) {
        return "Triangle(a=" + format_double(t.a) + ", b=" + format_double(t.b) + ", c=" + format_double(t.c) + ")";
      });

  py::class_<ViewAngles>(m, "ViewAngles")
      .def(py::init([](double a, double b, double g) { return ViewAngles{a, b, g}; }), py::arg("alpha"),
           py::arg("beta"), py::arg("gamma"))
      .def_readonly("alpha", &ViewAngles::alpha)
      .def_readonly("beta", &ViewAngles::beta)
      .def_readonly("gamma", &ViewAngles::gamma)
      .def("realizable", &ViewAngles::realizable)
      .def("__repr__", [](const ViewAngles& v) {
        return "ViewAngles(alpha=" + format_double(v.alpha) + ", beta=" + format_double(v.beta) +
               ", gamma=" + format_double(v.gamma) + ")";
      });

  m.def("make_triangle", [](const std::string& kind, std::uint64_t seed) {
        if (kind == "equilateral") return make_triangle(TriangleKind::Equilateral, seed);
        if (kind == "345") return make_triangle(TriangleKind::Pythagorean345, seed);
        if (kind == "acute") return make_triangle(TriangleKind::RandomAcute, seed);
        if (kind == "obtuse") return make_triangle(TriangleKind::RandomObtuse, seed);
        if (kind == "any") return make_triangle(TriangleKind::RandomAny, seed);
        throw Error(ErrorKind::InvalidInput, "unknown triangle kind '" + kind + "'");
      },
      py::arg("kind"), py::arg("seed") = 0);

  m.def("subtended_angles", &subtended_angles, py::arg("center"), py::arg("triangle"));
  m.def("toroid_signed_excess",
        [](const Vec3& p, const ControlTriangle& tri, const std::string& label) {
          return toroid_signed_excess(p, toroid(tri, label_from(label)));
        },
        py::arg("point"), py::arg("triangle"), py::arg("toroid"));

  m.def("grunert_coefficients",
        [](const ControlTriangle& tri, const ViewAngles& ang) {
          const auto q = grunert_coefficients(tri, ang);
          return py::make_tuple(q.A4, q.A3, q.A2, q.A1, q.A0);
        },
        py::arg("triangle"), py::arg("angles"), "(A4, A3, A2, A1, A0)");
  m.def("real_roots",
        [](const std::array<double, 5>& lowFirst, double tolCluster) {
          std::vector<std::pair<double, int>> out;
          for (const auto& r : real_roots(lowFirst, tolCluster).roots) out.emplace_back(r.value, r.multiplicity);
          return out;
        },
        py::arg("coeffs"), py::arg("tol_cluster") = kDefaultRootCluster,
        "Real roots of a0 + a1 x + ... + a4 x^4 as (value, multiplicity) pairs.");

  m.def("_solve_json",
        [](const ControlTriangle& tri, const ViewAngles& ang, double tol) {
          SolveOptions opts;
          opts.residualTol = tol;
          return dump_json(to_json(solve_p3p(tri, ang, opts), tri), -1);
        },
        py::arg("triangle"), py::arg("angles"), py::arg("tol") = 1e-8);
  m.def("_region_json",
        [](const Vec3& o, const ControlTriangle& tri) { return dump_json(to_json(classify_region(o, tri)), -1); },
        py::arg("center"), py::arg("triangle"));
  m.def("_oracle_json",
        [](const ControlTriangle& tri, const ViewAngles& ang, int grid) {
          const OracleResult o = brute_force_solve(tri, ang, grid, grid);
          int solutions = 0;
          MatchReport match;
          try {
            const SolveReport rep = solve_p3p(tri, ang);
            solutions = rep.solution_count();
            match = compare(rep, tri, o, 1e-4 * tri.diameter());
          } catch (const Error& e) {
            if (e.kind() != ErrorKind::NoRealRoots) throw;
            match = compare_positions({}, o, 1e-4 * tri.diameter());
          }
          return dump_json(to_json(match, o, solutions), -1);
        },
        py::arg("triangle"), py::arg("angles"), py::arg("grid") = 512);
  m.def("_sweep_json",
        [](const ControlTriangle& tri, const Vec3& start, const Vec3& end, int steps, double delta) {
          SweepConfig cfg;
          cfg.tri = tri;
          cfg.start = start;
          cfg.end = end;
          cfg.steps = steps;
          cfg.delta = delta;
          return dump_json(to_json(sweep_path(cfg)), -1);
        },
        py::arg("triangle"), py::arg("start"), py::arg("end"), py::arg("steps") = 1000, py::arg("delta") = 1e-4);
  m.def("_verify_json",
        [](const ControlTriangle& tri, const std::string& theorem, int trials, std::uint64_t seed) {
          TheoremReport rep;
          if (theorem == "1" || theorem == "2") {
            const OutsideReport o = verify_outside_theorems(tri, trials, seed);
            rep = theorem == "1" ? o.theorem1 : o.theorem2;
          } else if (theorem == "3" || theorem == "4" || theorem == "5") {
            rep = verify_crossing_theorem(tri, crossing_from(std::stoi(theorem)), trials, seed);
          } else if (theorem == "lemmas") {
            rep = verify_lemma_suite(tri, trials, seed);
          } else if (theorem == "signlaw") {
            rep = verify_sign_law(tri, trials, seed);
          } else {
            throw Error(ErrorKind::InvalidInput, "unknown theorem id '" + theorem + "'");
          }
          return dump_json(to_json(rep), -1);
        },
        py::arg("triangle"), py::arg("theorem"), py::arg("trials"), py::arg("seed") = 1);
}

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "udcert/chromatic.hpp"
#include "udcert/colorings.hpp"
#include "udcert/constructions.hpp"
#include "udcert/svg.hpp"
#include "udcert/udgraph.hpp"
#include "udcert/version.hpp"

namespace py = pybind11;
using namespace udcert;

namespace {

// "p/q" strings and ints stay exact, floats are real.
Scalar to_scalar(const py::object& v) {
  if (py::isinstance<py::str>(v)) return Scalar::parse(v.cast<std::string>());
  if (py::isinstance<py::int_>(v)) return Scalar(Rational(v.cast<long>()));
  return Scalar(v.cast<double>());
}

Rational to_rational(const py::object& v) {
  const Scalar s = to_scalar(v);
  if (!s.is_exact()) throw py::value_error("expected an exact value such as '2/5'");
  return s.exact();
}

py::list point_list(const Point& p) {
  py::list out;
  for (double x : p) out.append(x);
  return out;
}

py::dict stats_dict(const SolveStats& s) {
  py::dict d;
  d["decisions"] = s.decisions;
  d["backtracks"] = s.backtracks;
  d["nodes"] = s.nodes;
  d["cache_hits"] = s.cache_hits;
  d["elapsed_seconds"] = s.elapsed_seconds;
  return d;
}

py::dict outcome_dict(const SolveOutcome& o) {
  py::dict d;
  d["k"] = o.k;
  d["status"] = to_string(o.status);
  d["coloring"] = o.coloring;
  d["stats"] = stats_dict(o.stats);
  return d;
}

SolveOptions solve_options(int threads, double budget, bool cache) {
  SolveOptions o;
  o.threads = threads;
  o.budget.seconds = budget;
  o.failure_cache = cache;
  return o;
}

}  // namespace

PYBIND11_MODULE(_udcert, m) {
  m.doc() = "Unit-distance witnesses, exact colorability search and coloring checks for slabs R^n x [0, eps]^k";
  m.attr("__version__") = kVersion;

  py::register_exception<DegenerateError>(m, "DegenerateError", PyExc_ValueError);

  py::class_<SlabSpec>(m, "SlabSpec")
      .def(py::init([](int n, int k, const py::object& eps) { return SlabSpec{n, k, to_scalar(eps)}; }),
           py::arg("n"), py::arg("k"), py::arg("epsilon"))
      .def_readonly("n", &SlabSpec::n)
      .def_readonly("k", &SlabSpec::k)
      .def_property_readonly("epsilon", [](const SlabSpec& s) { return s.epsilon.to_string(); })
      .def("contains", [](const SlabSpec& s, const std::vector<double>& p) {
        Point q(static_cast<int>(p.size()));
        for (std::size_t i = 0; i < p.size(); ++i) q[static_cast<int>(i)] = p[i];
        return slab_contains(s, q);
      });

  py::class_<ForbiddenRadius>(m, "ForbiddenRadius")
      .def_readonly("l", &ForbiddenRadius::l)
      .def_readonly("m", &ForbiddenRadius::m)
      .def_property_readonly("r", &ForbiddenRadius::radius)
      .def("__repr__", &ForbiddenRadius::to_string);

  m.def("forbidden_radius", &forbidden_radius, py::arg("l"), py::arg("m"));
  m.def("enumerate_forbidden_radii", &enumerate_forbidden_radii, py::arg("r_min"), py::arg("r_max"),
        py::arg("max_m") = 101);
  m.def("max_chord_residual", [](const ForbiddenRadius& f) { return static_cast<double>(max_chord_residual(f)); });

  py::class_<ValidationReport>(m, "ValidationReport")
      .def_readonly("max_residual", &ValidationReport::max_residual)
      .def_readonly("exact_unit_edges", &ValidationReport::exact_unit_edges)
      .def_readonly("worst_edge", &ValidationReport::worst_edge)
      .def_readonly("out_of_slab", &ValidationReport::out_of_slab)
      .def_readonly("near_boundary", &ValidationReport::near_boundary)
      .def_readonly("passed", &ValidationReport::pass)
      .def("__str__", &ValidationReport::to_text);

  py::class_<UnitDistanceGraph>(m, "Graph")
      .def_property_readonly("slab", &UnitDistanceGraph::slab)
      .def_property_readonly("exact", [](const UnitDistanceGraph& g) { return g.mode() == NumericMode::Exact; })
      .def_property_readonly("vertex_count", &UnitDistanceGraph::vertex_count)
      .def_property_readonly("edge_count", &UnitDistanceGraph::edge_count)
      .def_property_readonly("edges", &UnitDistanceGraph::edges)
      .def_property_readonly("points", [](const UnitDistanceGraph& g) {
        py::list out;
        for (int i = 0; i < g.vertex_count(); ++i) out.append(point_list(g.point(i)));
        return out;
      })
      .def("exact_point", [](const UnitDistanceGraph& g, int i) {
        std::vector<std::string> out;
        for (const auto& x : g.exact_point(i)) out.push_back(format_rational(x));
        return out;
      })
      .def("label", &UnitDistanceGraph::label)
      .def_property_readonly("metadata", py::overload_cast<>(&UnitDistanceGraph::metadata, py::const_))
      .def("validate", &validate_geometry)
      .def("is_proper", py::overload_cast<const UnitDistanceGraph&, const Coloring&>(&validate_coloring))
      .def("to_json", &graph_to_string)
      .def_static("from_json", &graph_from_string)
      .def("save", [](const UnitDistanceGraph& g, const std::filesystem::path& p) { save_graph(g, p); })
      .def_static("load", &load_graph)
      .def("dimacs", [](const UnitDistanceGraph& g) {
        std::ostringstream out;
        write_dimacs(g, out);
        return out.str();
      })
      .def("svg", [](const UnitDistanceGraph& g, const Coloring& c) { return render_svg(g, c); },
           py::arg("coloring") = Coloring{})
      .def("__eq__", [](const UnitDistanceGraph& a, const UnitDistanceGraph& b) { return a == b; })
      .def("__repr__", [](const UnitDistanceGraph& g) {
        return "<Graph V=" + std::to_string(g.vertex_count()) + " E=" + std::to_string(g.edge_count()) + ">";
      });

  m.def("load_graph", &load_graph, py::arg("path"));

  m.def(
      "strip_chi3_witness",
      [](double eps, const py::object& delta, std::optional<double> eps1) {
        return strip_chi3_witness(eps, to_scalar(delta), eps1);
      },
      py::arg("epsilon"), py::arg("delta") = "1/12", py::arg("epsilon1") = py::none());
  m.def("strip4_min_steps", &strip4_min_steps, py::arg("h"));
  m.def("strip_chi4_witness", &strip_chi4_witness, py::arg("h"), py::arg("m") = py::none());
  m.def(
      "slab_chi5_witness",
      [](double eps, int steps, long l, long mm) { return slab_chi5_witness(make_spindle_params(eps, steps, l, mm)); },
      py::arg("epsilon") = 0.65, py::arg("steps") = 4, py::arg("l") = 3, py::arg("m") = 17);
  m.def(
      "rational_odd_cycle", [](long l, const py::object& eps) { return rational_odd_cycle(l, to_rational(eps)); },
      py::arg("l"), py::arg("epsilon"));
  m.def(
      "curve_odd_cycle",
      [](const std::vector<std::pair<double, double>>& poly, double eps) {
        std::vector<Point> pts;
        for (auto [x, y] : poly) pts.push_back(Point{x, y});
        return curve_odd_cycle(pts, eps);
      },
      py::arg("polyline"), py::arg("epsilon"));
  m.def("four_step_reach", &four_step_reach, py::arg("epsilon"));
  m.def(
      "four_step_path",
      [](std::pair<double, double> u, std::pair<double, double> t, double eps) {
        const auto p = four_step_path(Point{u.first, u.second}, Point{t.first, t.second}, eps);
        py::list out;
        for (const auto& v : p.v) out.append(point_list(v));
        return out;
      },
      py::arg("start"), py::arg("target"), py::arg("epsilon"));

  m.def(
      "is_k_colorable",
      [](const UnitDistanceGraph& g, int k, int threads, double budget, bool cache) {
        py::gil_scoped_release release;
        const auto out = is_k_colorable(AdjacencyGraph(g), k, solve_options(threads, budget, cache));
        py::gil_scoped_acquire acquire;
        return outcome_dict(out);
      },
      py::arg("graph"), py::arg("k"), py::arg("threads") = 1, py::arg("budget") = 600.0,
      py::arg("failure_cache") = true);
  m.def(
      "chromatic_number",
      [](const UnitDistanceGraph& g, int threads, double budget) {
        ChromaticResult r;
        {
          py::gil_scoped_release release;
          r = chromatic_number(AdjacencyGraph(g), solve_options(threads, budget, true));
        }
        py::dict d;
        d["status"] = to_string(r.status);
        d["chromatic_number"] = r.chromatic_number;
        d["lower_bound"] = r.lower_bound;
        d["upper_bound"] = r.upper_bound;
        d["coloring"] = r.coloring;
        d["clique"] = r.clique;
        d["unsat_below"] = r.unsat_below ? py::object(outcome_dict(*r.unsat_below)) : py::object(py::none());
        return d;
      },
      py::arg("graph"), py::arg("threads") = 1, py::arg("budget") = 600.0);
  m.def(
      "brute_force_chromatic",
      [](int n, const std::vector<Edge>& edges) { return brute_force_chromatic(AdjacencyGraph(n, edges)); },
      py::arg("vertex_count"), py::arg("edges"));
  m.def(
      "clique_lower_bound", [](const UnitDistanceGraph& g) { return clique_lower_bound(AdjacencyGraph(g)); },
      py::arg("graph"));

  m.def("hex7_side", &hex7_side);
  m.def(
      "hex7_color", [](double x, double y, double side) { return hex7_color(Point{x, y}, side); }, py::arg("x"),
      py::arg("y"), py::arg("side") = hex7_side());
  m.def(
      "stripe_color", [](const py::object& x, int cells) { return stripe_color(to_rational(x), cells); },
      py::arg("x"), py::arg("cells"));
  m.def(
      "qmod3_color", [](const py::object& x) { return qmod3_color(to_rational(x)); }, py::arg("x"));
  m.def(
      "stripe_max_h_squared", [](int cells, int k) { return format_rational(stripe_max_h_squared(cells, k)); },
      py::arg("cells"), py::arg("k"));
  m.def("slab7_admissible", &slab7_admissible, py::arg("slab"));
  m.def(
      "verify_scheme",
      [](const std::string& scheme, std::uint64_t samples, std::uint64_t seed, int k, const py::object& eps,
         const py::object& h_squared, bool exact, std::optional<double> side, int workers) {
        ColoringScheme s;
        s.kind = scheme_kind_from_string(scheme);
        const bool planar = s.kind == SchemeKind::Hex7 || s.kind == SchemeKind::Slab7;
        s.slab = SlabSpec{planar ? 2 : 1, k, to_scalar(eps)};
        if (!h_squared.is_none()) s.h_squared = to_rational(h_squared);
        s.exact = exact;
        if (side) s.hex_side = *side;
        VerifyReport rep;
        {
          py::gil_scoped_release release;
          rep = verify_scheme(s, samples, seed, workers);
        }
        return py::module_::import("json").attr("loads")(rep.to_json());
      },
      py::arg("scheme"), py::arg("samples") = 100000, py::arg("seed") = 0, py::arg("k") = 0,
      py::arg("epsilon") = 1.0, py::arg("h_squared") = py::none(), py::arg("exact") = false,
      py::arg("side") = py::none(), py::arg("workers") = 1);
}

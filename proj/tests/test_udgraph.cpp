#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "udcert/constructions.hpp"
#include "udcert/udgraph.hpp"

using namespace udcert;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("udcert_test_" + name);
}

UnitDistanceGraph cycle(int n) {
  UnitDistanceGraph g(SlabSpec{2, 0, Scalar(1.0)}, NumericMode::Real);
  const double r = 0.5 / std::sin(std::acos(-1.0) / n);
  for (int i = 0; i < n; ++i) {
    const double t = 2 * std::acos(-1.0) * i / n;
    g.add_vertex(Point{r * std::cos(t), r * std::sin(t)});
  }
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

std::string dimacs(const UnitDistanceGraph& g) {
  std::ostringstream out;
  write_dimacs(g, out);
  return out.str();
}

}  // namespace

TEST(ValidateGeometry, ExactUnitEdgePasses) {
  UnitDistanceGraph g(SlabSpec{2, 0, Scalar(1.0)}, NumericMode::Real);
  g.add_vertex(Point{0.0, 0.0});
  g.add_vertex(Point{1.0, 0.0});
  g.add_edge(0, 1);
  const auto rep = validate_geometry(g);
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(rep.max_residual, 0.0);
}

TEST(ValidateGeometry, LongEdgeFails) {
  UnitDistanceGraph g(SlabSpec{2, 0, Scalar(1.0)}, NumericMode::Real, 1e-9);
  g.add_vertex(Point{0.0, 0.0});
  g.add_vertex(Point{1.001, 0.0});
  g.add_edge(0, 1);
  const auto rep = validate_geometry(g);
  EXPECT_FALSE(rep.pass);
  EXPECT_NEAR(rep.max_residual, 1e-3, 1e-12);
}

TEST(ValidateGeometry, OutOfSlabFails) {
  UnitDistanceGraph g(SlabSpec{2, 1, Scalar(0.5)}, NumericMode::Real);
  g.add_vertex(Point{0.0, 0.0, 0.0});
  g.add_vertex(Point{0.0, 0.8, 0.6});
  g.add_edge(0, 1);
  const auto rep = validate_geometry(g);
  EXPECT_FALSE(rep.pass);
  EXPECT_EQ(rep.out_of_slab, 1);
}

TEST(ValidateGeometry, BoundaryContactIsFlaggedNotFailed) {
  UnitDistanceGraph g(SlabSpec{2, 1, Scalar(0.6)}, NumericMode::Real);
  g.add_vertex(Point{0.0, 0.0, 0.0});
  g.add_vertex(Point{0.8, 0.0, 0.6});
  g.add_edge(0, 1);
  const auto rep = validate_geometry(g);
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(rep.near_boundary.size(), 2u);
}

TEST(ValidateGeometry, RationalCycleHasZeroResidual) {
  const auto g = rational_odd_cycle(1, Rational(2, 5));
  const auto rep = validate_geometry(g);
  EXPECT_TRUE(rep.pass);
  EXPECT_TRUE(rep.exact_unit_edges);
  EXPECT_EQ(rep.max_residual, 0.0);
}

TEST(ValidateColoring, Examples) {
  UnitDistanceGraph g(SlabSpec{2, 0, Scalar(1.0)}, NumericMode::Real);
  g.add_vertex(Point{0.0, 0.0});
  g.add_vertex(Point{1.0, 0.0});
  g.add_edge(0, 1);
  EXPECT_TRUE(validate_coloring(g, {0, 1}));
  EXPECT_FALSE(validate_coloring(g, {0, 0}));
  EXPECT_TRUE(validate_coloring(cycle(5), {0, 1, 0, 1, 2}));
  EXPECT_FALSE(validate_coloring(cycle(5), {0, 1, 0, 1, 0}));
}

TEST(ValidateColoring, PartialAssignmentThrows) {
  EXPECT_THROW(validate_coloring(cycle(5), {0, 1, 0}), std::invalid_argument);
}

TEST(ValidateColoring, AnyMonochromaticEdgeIsRejected) {
  const auto g = cycle(9);
  for (const auto& [u, v] : g.edges()) {
    Coloring c(g.vertex_count());
    for (int i = 0; i < g.vertex_count(); ++i) c[i] = i % 3;
    c[u] = c[v] = 2;
    EXPECT_FALSE(validate_coloring(g, c));
  }
}

TEST(Graph, RejectsSelfLoopAndBadIndex) {
  auto g = cycle(3);
  EXPECT_THROW(g.add_edge(1, 1), std::invalid_argument);
  EXPECT_THROW(g.add_edge(0, 5), std::out_of_range);
  EXPECT_FALSE(g.add_edge(1, 0));
}

TEST(Persistence, RoundTripRealWitness) {
  auto g = slab_chi5_witness(reference_spindle_params());
  g.metadata()["note"] = "x";
  const auto path = temp_file("slab5.json");
  save_graph(g, path);
  const auto h = load_graph(path);
  EXPECT_TRUE(g == h);
  EXPECT_EQ(graph_to_string(g), graph_to_string(h));
  std::filesystem::remove(path);
}

TEST(Persistence, RoundTripEveryWitness) {
  for (const auto& g : {strip_chi3_witness(0.3, Scalar(Rational(1, 12))), strip_chi4_witness(0.9),
                        rational_odd_cycle(2, Rational(1, 4)),
                        curve_odd_cycle({Point{0.0, 0.0}, Point{2.5, 0.0}}, 0.2)}) {
    EXPECT_TRUE(graph_from_string(graph_to_string(g)) == g);
  }
}

TEST(Persistence, RationalStringSurvives) {
  UnitDistanceGraph g(SlabSpec{1, 3, Scalar(Rational(2, 5))}, NumericMode::Exact);
  g.add_vertex(ExactPoint{Rational(0), Rational(0), Rational(0), Rational(0)});
  g.add_vertex(ExactPoint{Rational(13, 14), Rational(3, 14), Rational(3, 14), Rational(3, 14)});
  g.add_edge(0, 1);
  const std::string text = graph_to_string(g);
  EXPECT_NE(text.find("\"13/14\""), std::string::npos);
  const auto h = graph_from_string(text);
  EXPECT_EQ(h.exact_point(1)[0], Rational(13, 14));
  EXPECT_TRUE(h.slab().epsilon.is_exact());
}

TEST(Persistence, EdgeOutOfRangeIsAnError) {
  const std::string bad = R"({"slab":{"n":2,"k":0,"epsilon":1.0},"mode":"real","tol":1e-9,)"
                    R"("points":[[0,0],[1,0]],"edges":[[0,2]]})";
  EXPECT_THROW(graph_from_string(bad), std::runtime_error);
}

TEST(Persistence, MalformedFilesAreErrors) {
  EXPECT_THROW(graph_from_string("{not json"), std::runtime_error);
  EXPECT_THROW(graph_from_string(R"({"slab":{"n":2,"k":1,"epsilon":1.0},"mode":"real","tol":1e-9,)"
                                 R"("points":[[0,0]],"edges":[]})"),
               std::runtime_error);
  EXPECT_THROW(load_graph(temp_file("does_not_exist.json")), std::runtime_error);
}

TEST(Persistence, ColoringRoundTrip) {
  const auto path = temp_file("coloring.json");
  save_coloring({0, 1, 2, 1}, path, {{"k", "3"}});
  EXPECT_EQ(load_coloring(path), (Coloring{0, 1, 2, 1}));
  std::filesystem::remove(path);
}

TEST(Dimacs, Triangle) {
  EXPECT_EQ(dimacs(cycle(3)), "p edge 3 3\ne 1 2\ne 1 3\ne 2 3\n");
}

TEST(Dimacs, EmptyEdgeSet) {
  UnitDistanceGraph g(SlabSpec{2, 0, Scalar(1.0)}, NumericMode::Real);
  for (int i = 0; i < 4; ++i) g.add_vertex(Point{double(i), 0.0});
  EXPECT_EQ(dimacs(g), "p edge 4 0\n");
}

TEST(Dimacs, SlabWitnessHeaderAndDeterminism) {
  const auto a = dimacs(slab_chi5_witness(reference_spindle_params()));
  const auto b = dimacs(slab_chi5_witness(reference_spindle_params()));
  EXPECT_EQ(a.substr(0, a.find('\n')), "p edge 145 409");
  EXPECT_EQ(a, b);
  // edges sorted lexicographically, 1-based
  std::istringstream in(a);
  std::string line;
  std::getline(in, line);
  std::pair<int, int> prev{0, 0};
  while (std::getline(in, line)) {
    int u = 0, v = 0;
    ASSERT_EQ(std::sscanf(line.c_str(), "e %d %d", &u, &v), 2);
    EXPECT_GE(u, 1);
    EXPECT_LT(u, v);
    EXPECT_LT(prev, std::make_pair(u, v));
    prev = {u, v};
  }
}

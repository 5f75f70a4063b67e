#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "udcert/chromatic.hpp"
#include "udcert/constructions.hpp"

using namespace udcert;

namespace {

const long double kPiL = 3.141592653589793238462643383279502884L;

// Direct scan over odd denominators, no windowing.
std::vector<std::pair<long, long>> oracle_radii(long double lo, long double hi, long max_m) {
  std::vector<std::tuple<long double, long, long>> rows;
  for (long m = 3; m <= max_m; m += 2)
    for (long l = 1; 2 * l < m; ++l) {
      if (std::gcd(l, m) != 1) continue;
      const long double r = 1.0L / (2.0L * std::sin(kPiL * l / m));
      if (r >= lo && r <= hi) rows.emplace_back(r, m, l);
    }
  std::sort(rows.begin(), rows.end());
  std::vector<std::pair<long, long>> out;
  for (auto [r, m, l] : rows) out.emplace_back(l, m);
  return out;
}

std::vector<std::pair<long, long>> as_pairs(const std::vector<ForbiddenRadius>& v) {
  std::vector<std::pair<long, long>> out;
  for (const auto& f : v) out.emplace_back(f.l, f.m);
  return out;
}

SolveStatus solve(const UnitDistanceGraph& g, int k) { return is_k_colorable(AdjacencyGraph(g), k).status; }

int find_label(const UnitDistanceGraph& g, const std::string& label) {
  for (int i = 0; i < g.vertex_count(); ++i)
    if (g.label(i) == label) return i;
  return -1;
}

}  // namespace

// ---------------------------------------------------------------------------
// forbidden radii

TEST(ForbiddenRadius, Examples) {
  EXPECT_NEAR(forbidden_radius(1, 3).radius(), 1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(forbidden_radius(1, 7).radius(), 1.152382, 1e-6);
  EXPECT_NEAR(forbidden_radius(1, 5).radius(), 0.850651, 1e-6);
  EXPECT_THROW(forbidden_radius(2, 3), std::invalid_argument);
  EXPECT_THROW(forbidden_radius(1, 4), std::invalid_argument);
  EXPECT_THROW(forbidden_radius(3, 9), std::invalid_argument);
  EXPECT_THROW(forbidden_radius(0, 5), std::invalid_argument);
}

TEST(ForbiddenRadius, ThreeSeventeenerValue) {
  // 1 / (2 sin(3 pi / 17)); the matching spindle leg is 2 sqrt(1 - r^2).
  const auto fr = forbidden_radius(3, 17);
  EXPECT_NEAR(fr.radius(), 0.949790, 1e-6);
  EXPECT_EQ(fr.q(), Rational(3, 17));
}

TEST(EnumerateForbiddenRadii, MatchesScanOracle) {
  const auto got = enumerate_forbidden_radii(0.94, 0.97, 23);
  EXPECT_EQ(as_pairs(got), oracle_radii(0.94L, 0.97L, 23));
  const auto pairs = as_pairs(got);
  EXPECT_NE(std::find(pairs.begin(), pairs.end(), std::make_pair(3L, 17L)), pairs.end());
  EXPECT_NE(std::find(pairs.begin(), pairs.end(), std::make_pair(4L, 23L)), pairs.end());
  for (const auto& f : got)
    if (f.m == 23 && f.l == 4) EXPECT_NEAR(f.radius(), 0.962309, 1e-6);
}

TEST(EnumerateForbiddenRadii, RandomRangesMatchOracle) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> lo(0.51, 4.0), width(0.0, 0.3);
  for (int t = 0; t < 60; ++t) {
    const double a = lo(rng);
    const double b = a + width(rng) + 1e-6;
    const long m = 3 + 2 * static_cast<long>(rng() % 60);
    EXPECT_EQ(as_pairs(enumerate_forbidden_radii(a, b, m)), oracle_radii(a, b, m)) << a << " " << b << " " << m;
  }
}

TEST(EnumerateForbiddenRadii, EmptyAndErrors) {
  EXPECT_TRUE(enumerate_forbidden_radii(0.50000001, 0.51, 5).empty());
  EXPECT_THROW(enumerate_forbidden_radii(0.5, 0.51, 5), std::invalid_argument);
  EXPECT_THROW(enumerate_forbidden_radii(0.4, 0.45, 5), std::invalid_argument);
}

TEST(EnumerateForbiddenRadii, DenseAboveOne) {
  EXPECT_FALSE(enumerate_forbidden_radii(2.0, 2.1, 101).empty());
  EXPECT_FALSE(enumerate_forbidden_radii(0.999, 1.001, 1001).empty());
  EXPECT_TRUE(enumerate_forbidden_radii(0.999, 1.001, 449).empty());
}

TEST(EnumerateForbiddenRadii, SortedByRadiusThenDenominator) {
  const auto v = enumerate_forbidden_radii(0.6, 3.0, 41);
  for (std::size_t i = 1; i < v.size(); ++i)
    EXPECT_TRUE(v[i - 1].r < v[i].r || (v[i - 1].r == v[i].r && v[i - 1].m < v[i].m));
}

TEST(CircleOddCycle, EveryRadiusUpTo101Closes) {
  for (const auto& fr : enumerate_forbidden_radii(0.5000001, 1e6, 101)) {
    ASSERT_EQ(fr.m % 2, 1);
    EXPECT_LT(max_chord_residual(fr), 1e-9L) << fr.l << "/" << fr.m;
  }
}

TEST(CircleOddCycle, Examples) {
  const Circle plane{Point{0.0, 0.0}, 0.0, Point{1.0, 0.0}, Point{0.0, 1.0}};
  Circle c = plane;
  c.radius = 1.0 / std::sqrt(3.0);
  const auto tri = circle_odd_cycle(c, forbidden_radius(1, 3));
  ASSERT_EQ(tri.points.size(), 3u);
  for (auto [u, v] : tri.edges) EXPECT_NEAR(distance(tri.points[u], tri.points[v]), 1.0, 1e-12);

  const auto fr = forbidden_radius(3, 17);
  c.radius = fr.radius();
  const auto cyc = circle_odd_cycle(c, fr);
  ASSERT_EQ(cyc.points.size(), 17u);
  ASSERT_EQ(cyc.edges.size(), 17u);
  double turned = 0.0;
  for (auto [u, v] : cyc.edges) {
    EXPECT_NEAR(distance(cyc.points[u], cyc.points[v]), 1.0, 1e-9);
    const double a = std::atan2(cyc.points[v][1], cyc.points[v][0]) - std::atan2(cyc.points[u][1], cyc.points[u][0]);
    turned += std::remainder(a, 2 * std::acos(-1.0));
  }
  EXPECT_NEAR(turned / (2 * std::acos(-1.0)), 3.0, 1e-9);

  c.radius = 0.9;
  EXPECT_THROW(circle_odd_cycle(c, fr), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// strip witnesses

TEST(StripChi3, ReferenceWitness) {
  const auto g = strip_chi3_witness(0.3, Scalar(Rational(1, 12)));
  EXPECT_EQ(g.vertex_count(), 49);
  const auto rep = validate_geometry(g);
  EXPECT_TRUE(rep.pass);
  EXPECT_LT(rep.max_residual, 1e-9);
  EXPECT_EQ(solve(g, 2), SolveStatus::Unsat);
  EXPECT_EQ(solve(g, 3), SolveStatus::Sat);
}

TEST(StripChi3, ParameterGrid) {
  const std::vector<std::pair<double, Rational>> grid{
      {0.3, Rational(1, 12)}, {0.32, Rational(1, 10)}, {0.35, Rational(1, 9)}, {0.4, Rational(1, 7)}, {0.55, Rational(1, 4)}};
  for (const auto& [eps, delta] : grid) {
    const auto g = strip_chi3_witness(eps, Scalar(delta));
    EXPECT_TRUE(validate_geometry(g).pass) << eps;
    EXPECT_EQ(solve(g, 2), SolveStatus::Unsat) << eps;
    EXPECT_EQ(solve(g, 3), SolveStatus::Sat) << eps;
  }
}

TEST(StripChi3, Preconditions) {
  EXPECT_THROW(strip_chi3_witness(0.3, Scalar(Rational(1, 2))), std::invalid_argument);
  EXPECT_THROW(strip_chi3_witness(0.3, Scalar(Rational(2, 25))), std::invalid_argument);
}

TEST(StripChi4, OffsetRange) {
  for (double h : {0.87, 0.88, 0.9, 0.92, std::sqrt(8.0 / 9.0)}) {
    const double want = 3.0 - 2.0 * std::sqrt(3.0 - h * h);
    EXPECT_NEAR(strip4_offset_range(h), want, 1e-14);
    const int m = strip4_min_steps(h);
    EXPECT_LE(1.0 / m, want);
    EXPECT_GT(1.0 / (m - 1), want);
  }
  EXPECT_EQ(strip4_min_steps(0.9), 25);
}

TEST(StripChi4, CertifiedForThreeWidths) {
  for (double h : {0.88, 0.90, 0.92}) {
    const auto g = strip_chi4_witness(h);
    const auto rep = validate_geometry(g);
    EXPECT_TRUE(rep.pass) << h;
    EXPECT_EQ(solve(g, 3), SolveStatus::Unsat) << h;
    EXPECT_EQ(solve(g, 4), SolveStatus::Sat) << h;
  }
}

TEST(StripChi4, AnchorsAdvanceByOneOverM) {
  const auto g = strip_chi4_witness(0.9);
  const int m = strip4_min_steps(0.9);
  const int a0 = find_label(g, "anchor:0");
  const int am = find_label(g, "anchor:" + std::to_string(m));
  ASSERT_GE(a0, 0);
  ASSERT_GE(am, 0);
  EXPECT_NEAR(distance(g.point(a0), g.point(am)), 1.0, 1e-12);
  EXPECT_TRUE(g.has_edge(a0, am));
  for (int i = 0; i < g.vertex_count(); ++i) {
    EXPECT_GE(g.point(i)[1], -1e-12);
    EXPECT_LE(g.point(i)[1], 0.9 + 1e-12);
  }
}

TEST(StripChi4, Preconditions) {
  EXPECT_THROW(strip_chi4_witness(0.8), std::invalid_argument);
  EXPECT_THROW(strip_chi4_witness(1.2), std::invalid_argument);
  EXPECT_THROW(strip_chi4_witness(0.9, 7), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// slab witness

TEST(SlabChi5, ReferenceParameters) {
  const auto p = reference_spindle_params();
  EXPECT_EQ(p.q.l, 3);
  EXPECT_EQ(p.q.m, 17);
  EXPECT_EQ(p.steps, 4);
  EXPECT_DOUBLE_EQ(p.epsilon, 0.65);
  const double r = 1.0 / (2.0 * std::sin(std::acos(-1.0) * 3.0 / 17.0));
  EXPECT_NEAR(p.epsilon1, 2.0 * std::sqrt(1.0 - r * r), 1e-12);
  EXPECT_LT(p.delta(), p.epsilon * p.epsilon);
  EXPECT_LE(std::sqrt(p.delta()), p.epsilon1);
  EXPECT_LT(p.epsilon1, p.epsilon);
  EXPECT_GE(p.circle_margin(), 0.05);
}

TEST(SlabChi5, ReferenceWitness) {
  const auto g = slab_chi5_witness(reference_spindle_params());
  EXPECT_EQ(g.vertex_count(), 145);
  EXPECT_EQ(g.edge_count(), 409);
  const auto rep = validate_geometry(g);
  EXPECT_TRUE(rep.pass);
  double lo = 1e9, hi = -1e9;
  for (int i = 0; i < g.vertex_count(); ++i)
    if (g.label(i).rfind("circle:", 0) == 0) {
      lo = std::min(lo, g.point(i)[2]);
      hi = std::max(hi, g.point(i)[2]);
    }
  EXPECT_GE(lo, 0.05);
  EXPECT_LE(hi, 0.65 - 0.05);
  EXPECT_EQ(solve(g, 4), SolveStatus::Unsat);
  EXPECT_EQ(solve(g, 5), SolveStatus::Sat);
}

TEST(SlabChi5, CircleVerticesAreUnitFromBothCenters) {
  const auto g = slab_chi5_witness(reference_spindle_params());
  for (int i = 0; i < g.vertex_count(); ++i) {
    if (g.label(i).rfind("circle:", 0) != 0) continue;
    int centers = 0;
    for (int j = 0; j < g.vertex_count(); ++j)
      if (g.has_edge(i, j) && g.label(j).rfind("circle:", 0) != 0) {
        ++centers;
        EXPECT_NEAR(distance(g.point(i), g.point(j)), 1.0, 1e-12);
      }
    EXPECT_EQ(centers, 2);
  }
}

TEST(SlabChi5, ParameterErrors) {
  EXPECT_THROW(make_spindle_params(0.65, 2, 3, 17), std::invalid_argument);   // delta >= eps^2
  EXPECT_THROW(make_spindle_params(0.3, 16, 3, 17), std::invalid_argument);   // eps1 >= eps
}

TEST(SlabChi5, SearchFindsValidatedWitness) {
  const auto p = search_spindle_params(0.65);
  ASSERT_TRUE(p.has_value());
  EXPECT_LE(p->q.m, 17);
  EXPECT_GE(p->circle_margin(), 0.05);
  const auto g = slab_chi5_witness(*p);
  EXPECT_TRUE(validate_geometry(g).pass);
  EXPECT_EQ(solve(g, 4), SolveStatus::Unsat);
}

// ---------------------------------------------------------------------------
// rational odd cycle

TEST(RationalCycle, IdentitiesForFirstTenL) {
  for (long l = 1; l <= 10; ++l) {
    const auto p = rational_cycle_params(l);
    const long b = 2 * l + 1;
    EXPECT_EQ(p.n, 6 * l * l + 6 * l + 2);
    EXPECT_EQ(p.n % 2, 0);
    EXPECT_EQ(3 * b * b, 2 * p.n - 1);
    EXPECT_EQ(norm_squared(p.e), Rational(1));
    EXPECT_EQ(norm_squared(p.e_prime), Rational(1));
    const Rational bound = Rational(b, p.n);
    EXPECT_LT(bound * bound, Rational(2, p.n));
  }
}

TEST(RationalCycle, ReferenceCycles) {
  const auto g = rational_odd_cycle(1, Rational(2, 5));
  EXPECT_EQ(g.mode(), NumericMode::Exact);
  EXPECT_EQ(g.edge_count(), 27);
  EXPECT_EQ(g.vertex_count(), 27);
  EXPECT_EQ(rational_cycle_params(1).e[0], Rational(13, 14));
  EXPECT_EQ(rational_cycle_params(1).e[1], Rational(3, 14));
  const auto rep = validate_geometry(g);
  EXPECT_TRUE(rep.pass);
  EXPECT_TRUE(rep.exact_unit_edges);
  EXPECT_EQ(solve(g, 2), SolveStatus::Unsat);
  EXPECT_EQ(solve(g, 3), SolveStatus::Sat);

  const auto p2 = rational_cycle_params(2);
  EXPECT_EQ(p2.n, 38);
  EXPECT_EQ(p2.e[0], Rational(37, 38));
  EXPECT_EQ(p2.e[1], Rational(5, 38));
  const auto g2 = rational_odd_cycle(2, Rational(1, 4));
  EXPECT_EQ(g2.edge_count(), 2 * 38 - 1);
  EXPECT_TRUE(validate_geometry(g2).exact_unit_edges);
}

TEST(RationalCycle, EpsilonTooSmall) {
  EXPECT_THROW(rational_odd_cycle(1, Rational(1, 10)), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// four-step path and curve cycle

TEST(FourStepPath, DegenerateTarget) {
  const Point u{0.3, -0.2};
  const auto p = four_step_path(u, u, 0.2);
  EXPECT_LT(distance(p.v[1], u), 1e-15);
  EXPECT_LT(distance(p.v[3], u), 1e-15);
}

TEST(FourStepPath, ReachExamples) {
  const double gamma = four_step_reach(0.2);
  EXPECT_NEAR(gamma, std::sin(0.1) * std::sin(0.05), 1e-18);
  EXPECT_NEAR(gamma, 0.004989, 1e-6);
  const Point u{0.0, 0.0};
  const auto p = four_step_path(u, Point{0.003, 0.0}, 0.2);
  Point prev = u;
  for (const auto& v : p.v) {
    EXPECT_NEAR(distance(prev, v), 1.0, 1e-12);
    prev = v;
  }
  EXPECT_LT(distance(p.v[3], Point{0.003, 0.0}), 1e-12);
  EXPECT_THROW(four_step_path(u, Point{0.006, 0.0}, 0.2), std::invalid_argument);
}

TEST(FourStepPath, RandomTargetsAndBounds) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  const double eps = 0.2;
  const double gamma = four_step_reach(eps);
  const double bound = 2 * std::sin(eps / 4);
  for (int t = 0; t < 1000; ++t) {
    const Point u{5 * U(rng), 5 * U(rng)};
    Point d{U(rng), U(rng)};
    while (norm(d) > 1.0) d = Point{U(rng), U(rng)};
    const Point target = u + gamma * d;
    const auto p = four_step_path(u, target, eps);
    Point prev = u;
    for (const auto& v : p.v) {
      EXPECT_LT(std::abs(distance(prev, v) - 1.0), 1e-12);
      prev = v;
    }
    EXPECT_LT(distance(p.v[3], target), 1e-12);
    EXPECT_LE(distance(u, p.v[1]), bound * (1 + 1e-12));
    EXPECT_LE(distance(p.v[1], p.v[3]), bound * (1 + 1e-12));
  }
}

TEST(CurveOddCycle, StraightSegment) {
  const std::vector<Point> seg{Point{0.0, 0.0}, Point{2.5, 0.0}};
  const auto g = curve_odd_cycle(seg, 0.2);
  EXPECT_EQ(g.edge_count() % 4, 1);
  EXPECT_EQ(g.vertex_count(), g.edge_count());
  EXPECT_TRUE(validate_geometry(g).pass);
  const int u = find_label(g, "curve:u");
  const int v = find_label(g, "curve:v");
  ASSERT_GE(u, 0);
  ASSERT_GE(v, 0);
  EXPECT_NEAR(distance(g.point(u), g.point(v)), 1.0, 1e-9);
  for (int i = 0; i < g.vertex_count(); ++i) EXPECT_LE(polyline_distance(seg, g.point(i)), 0.2);
  EXPECT_EQ(solve(g, 2), SolveStatus::Unsat);
  EXPECT_EQ(solve(g, 3), SolveStatus::Sat);
}

TEST(CurveOddCycle, CircularArc) {
  std::vector<Point> arc;
  const double R = 1.2;
  for (int i = 0; i <= 200; ++i) {
    const double t = std::acos(-1.0) * (0.15 + 0.7 * i / 200.0);
    arc.push_back(Point{R * std::cos(t), R * std::sin(t)});
  }
  double diam = 0.0;
  for (const auto& a : arc)
    for (const auto& b : arc) diam = std::max(diam, distance(a, b));
  ASSERT_GE(diam, 2.0);
  const auto g = curve_odd_cycle(arc, 0.3);
  EXPECT_TRUE(validate_geometry(g).pass);
  EXPECT_EQ(g.edge_count() % 4, 1);
  for (int i = 0; i < g.vertex_count(); ++i) EXPECT_LE(polyline_distance(arc, g.point(i)), 0.3);
}

TEST(CurveOddCycle, ShortSegmentFails) {
  EXPECT_THROW(curve_odd_cycle({Point{0.0, 0.0}, Point{1.5, 0.0}}, 0.2), std::invalid_argument);
}

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "udcert/constructions.hpp"

using namespace udcert;

namespace {

const double kPi = std::acos(-1.0);

PentagonOptions contained_options() {
  PentagonOptions o;
  o.delta = 1e-3;
  o.delta1 = 2e-4;
  o.delta2 = 1e-2;
  return o;
}

// Central differences of r_i in the ambient 4-space.
Point fd_gradient(const PentagonConfig& c, const Point& w, int i, double h) {
  Point g(4);
  for (int a = 0; a < 4; ++a) {
    Point p = w, m = w;
    p[a] += h;
    m[a] -= h;
    g[a] = (radius_map(c, p)[i] - radius_map(c, m)[i]) / (2 * h);
  }
  return g;
}

double cosine(const Point& a, const Point& b) { return dot(a, b) / (norm(a) * norm(b)); }

double interior_angle(const Point& at, const Point& b, const Point& c) {
  return std::acos(cosine(b - at, c - at));
}

}  // namespace

TEST(PentagonConfig, InscribedPentagon) {
  const auto c = pentagon_config(0.3, 0.1);
  for (const auto& p : c.pentagon) EXPECT_NEAR(distance(p, Point{0.15, 0.15}), 0.1, 1e-15);
  for (int k = 0; k < 5; ++k)
    EXPECT_NEAR(distance(c.pentagon[k], c.pentagon[(k + 1) % 5]), 2 * 0.1 * std::sin(kPi / 5), 1e-15);
  for (const auto& v : c.v) EXPECT_TRUE(slab_contains(c.slab, v));
  EXPECT_EQ(c.slab.n, 2);
  EXPECT_EQ(c.slab.k, 2);
}

TEST(PentagonConfig, AnglesAndPlaneBound) {
  const auto c = pentagon_config(0.3, 0.1);
  EXPECT_LE(c.phi, c.epsilon2);
  for (int i = 0; i < 3; ++i) {
    const double a = interior_angle(c.v[i], c.v[(i + 1) % 3], c.v[(i + 2) % 3]);
    EXPECT_NEAR(a, c.alpha[i], 1e-9);
    EXPECT_GE(a, kPi / 5 - c.epsilon3);
  }
  // vertices {0,1,3} of a regular pentagon: angles 2pi/5, 2pi/5, pi/5 in the bounded plane
  double s = c.alpha[0] + c.alpha[1] + c.alpha[2];
  EXPECT_NEAR(s, kPi, 1e-12);
  EXPECT_GE(c.phi_condition_slack, 0.0);
}

TEST(PentagonConfig, Preconditions) {
  EXPECT_THROW(pentagon_config(0.3, 0.2), std::invalid_argument);
  EXPECT_THROW(pentagon_config(0.3, 0.15), std::invalid_argument);
  PentagonOptions o;
  o.vertices = {0, 0, 3};
  EXPECT_THROW(pentagon_config(0.3, 0.1, o), std::invalid_argument);
}

TEST(PentagonConfig, LiftedPointIsOffsetAlongNormal) {
  const auto c = pentagon_config(0.3, 0.1);
  auto [u0, R] = circumcenter(std::span<const Point>(c.v.data(), 3));
  EXPECT_LT(distance(u0, c.u0), 1e-12);
  EXPECT_NEAR(distance(c.u1, c.u0), c.delta1, 1e-15);
  for (const auto& v : c.v) {
    EXPECT_NEAR(dot(c.normal, v - c.u0), 0.0, 1e-12);
    EXPECT_NEAR(distance(c.u1, v), std::hypot(R, c.delta1), 1e-12);
  }
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) EXPECT_NEAR(dot(c.basis[a], c.basis[b]), a == b ? 1.0 : 0.0, 1e-12);
}

TEST(RadiusMap, EquilateralSymmetry) {
  const double s = 0.05;
  const std::array<Point, 3> v{Point{0.0, 0.0, 0.1, 0.1}, Point{s, 0.0, 0.1, 0.1},
                               Point{0.5 * s, s * std::sqrt(3.0) / 2, 0.1, 0.1}};
  const auto c = triangle_config(SlabSpec{2, 2, Scalar(0.3)}, v, 1e-2, 1e-2);
  const auto r = radius_map(c, c.u1);
  EXPECT_NEAR(r[0], r[1], 1e-14);
  EXPECT_NEAR(r[1], r[2], 1e-14);
  EXPECT_GT(std::fabs(radius_map_jacobian(c, c.u1).det), 0.0);
}

TEST(RadiusMap, MatchesCircumradius) {
  const auto c = pentagon_config(0.3, 0.1);
  const auto w = hyperplane_point(c, {1e-3, -2e-3, 5e-4});
  const auto r = radius_map(c, w);
  for (int i = 0; i < 3; ++i) {
    const Point tri[3] = {c.v[(i + 1) % 3], c.v[(i + 2) % 3], w};
    const double R = circumcenter(tri).second;
    EXPECT_NEAR(r[i], std::sqrt(1.0 - R * R), 1e-12);
  }
}

TEST(RadiusMap, VertexIsDegenerate) {
  const auto c = pentagon_config(0.3, 0.1);
  EXPECT_THROW(radius_map(c, c.v[0]), DegenerateError);
}

TEST(RadiusJacobian, GradientsFollowMedians) {
  const auto c = pentagon_config(0.3, 0.1);
  const auto jac = radius_map_jacobian(c, c.u1);
  for (int i = 0; i < 3; ++i) {
    const Point fd = fd_gradient(c, c.u1, i, 1e-6);
    const Point median = c.u1 - 0.5 * (c.v[(i + 1) % 3] + c.v[(i + 2) % 3]);
    EXPECT_GT(std::fabs(cosine(fd, median)), 1 - 1e-6) << i;
    EXPECT_GT(cosine(fd, jac.gradients[i]), 1 - 1e-6) << i;
    EXPECT_NE(jac.lambda[i], 0.0);
    EXPECT_NEAR(norm(jac.gradients[i] - jac.lambda[i] * jac.medians[i]), 0.0, 1e-9 * norm(jac.gradients[i]));
  }
  EXPECT_TRUE(jac.nonsingular);
  EXPECT_GT(std::fabs(jac.det), 1e-10);
}

TEST(RadiusJacobian, MatchesFiniteDifferencesAtRandomPoints) {
  const auto c = pentagon_config(0.3, 0.1);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  const double h = 1e-7;
  for (int t = 0; t < 50; ++t) {
    const std::array<double, 3> xi{5e-3 * U(rng), 5e-3 * U(rng), 5e-3 * U(rng)};
    const Point w = hyperplane_point(c, xi);
    const auto jac = radius_map_jacobian(c, w);
    for (int b = 0; b < 3; ++b) {
      auto xp = xi, xm = xi;
      xp[b] += h;
      xm[b] -= h;
      const auto rp = radius_map(c, hyperplane_point(c, xp));
      const auto rm = radius_map(c, hyperplane_point(c, xm));
      for (int i = 0; i < 3; ++i) {
        const double fd = (rp[i] - rm[i]) / (2 * h);
        double scale = 0.0;
        for (int a = 0; a < 3; ++a) scale = std::max(scale, std::fabs(jac.j[i][a]));
        EXPECT_LT(std::fabs(fd - jac.j[i][b]), 1e-6 * scale) << "t=" << t << " i=" << i << " b=" << b;
      }
    }
  }
}

TEST(SolveTriple, FixedPoint) {
  const auto c = pentagon_config(0.3, 0.1);
  const auto rep = solve_forbidden_triple(c, radius_map(c, c.u1));
  EXPECT_EQ(rep.iterations, 0);
  EXPECT_LT(distance(rep.w, c.u1), 1e-15);
}

TEST(SolveTriple, NearbyForbiddenTargetsConverge) {
  PentagonOptions o;
  o.delta1 = 1e-2;
  o.delta2 = 1e-2;
  const auto c = pentagon_config(0.3, 0.1, o);
  const auto t = nearby_forbidden_triple(c);
  const auto r0 = radius_map(c, c.u1);
  for (int i = 0; i < 3; ++i) EXPECT_LE(std::fabs(t[i].radius() - r0[i]), 1e-3);
  const auto rep = solve_forbidden_triple(c, t);
  EXPECT_LE(rep.iterations, 20);
  EXPECT_LT(rep.residual, 1e-10);
  EXPECT_LT(rep.offset, c.delta2);
  const auto r = radius_map(c, rep.w);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(r[i], t[i].radius(), 1e-10);
}

TEST(SolveTriple, ContainedCirclesForSmallerPentagon) {
  const auto c = pentagon_config(0.3, 0.05, contained_options());
  const auto rep = solve_forbidden_triple(c, nearby_forbidden_triple(c));
  EXPECT_LT(rep.residual, 1e-10);
  for (int i = 0; i < 3; ++i) {
    EXPECT_TRUE(rep.inside[i]);
    EXPECT_GT(rep.margin[i], 0.0);
    EXPECT_LT(rep.chord_residual[i], 1e-9);
    // circle points really are unit distance from the triple's centers
    for (double th : {0.0, 1.0, 2.5, 4.0}) {
      const Point p = circle_point(rep.circles[i], th);
      EXPECT_NEAR(distance(p, rep.w), 1.0, 1e-9);
      EXPECT_NEAR(distance(p, c.v[(i + 1) % 3]), 1.0, 1e-9);
      EXPECT_NEAR(distance(p, c.v[(i + 2) % 3]), 1.0, 1e-9);
      EXPECT_TRUE(slab_contains(c.slab, p));
    }
  }
}

TEST(SolveTriple, FarTargetsRejected) {
  const auto c = pentagon_config(0.3, 0.1);
  auto r = radius_map(c, c.u1);
  for (double& x : r) x -= 0.1;
  EXPECT_ANY_THROW(solve_forbidden_triple(c, r));
}

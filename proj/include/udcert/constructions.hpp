#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "udcert/geometry.hpp"
#include "udcert/udgraph.hpp"

namespace udcert {

// ---------------------------------------------------------------------------
// Forbidden radii

/// Circle radius on which m unit chords close after winding l times.
struct ForbiddenRadius {
  long l = 1;
  long m = 3;
  long double r = 0.0L;

  Rational q() const { return Rational(l, m); }
  double radius() const { return static_cast<double>(r); }
  std::string to_string() const;

  friend bool operator==(const ForbiddenRadius& a, const ForbiddenRadius& b) { return a.l == b.l && a.m == b.m; }
};

/// r = 1 / (2 sin(pi l / m)). Requires m odd >= 3, gcd(l, m) = 1 and 0 < l/m < 1/2.
ForbiddenRadius forbidden_radius(long l, long m);

/// Every reduced l/m with m odd <= max_m and r in [r_lo, r_hi], sorted by r then m.
std::vector<ForbiddenRadius> enumerate_forbidden_radii(double r_lo, double r_hi, long max_m);

/// Largest |chord - 1| over the m consecutive chords, computed in long double.
long double max_chord_residual(const ForbiddenRadius& fr);

struct CircleCycle {
  std::vector<Point> points;
  std::vector<Edge> edges;
};

/// m points at angles theta0 + 2 pi l j / m joined cyclically.
CircleCycle circle_odd_cycle(const Circle& circle, const ForbiddenRadius& fr, double tol = kDefaultTol,
                             double theta0 = 0.0);

// ---------------------------------------------------------------------------
// Strip witnesses R x [0, h]

/// Chain of spacing delta with apexes and unit-distance xi points; chi = 3.
/// `delta` must have integer reciprocal; epsilon1 defaults to (sqrt(delta) + epsilon) / 2.
UnitDistanceGraph strip_chi3_witness(double epsilon, const Scalar& delta,
                                     std::optional<double> epsilon1 = std::nullopt);

/// Width of the achievable net anchor offset per double step: 3 - 2 sqrt(3 - h^2).
double strip4_offset_range(double h);
/// Smallest m with 1/m inside the offset range.
int strip4_min_steps(double h);

/// Rhombus zig-zag chain whose anchors advance by 1/m; chi = 4.
/// Requires sqrt(3)/2 < h <= sqrt(8/9). m defaults to strip4_min_steps(h).
UnitDistanceGraph strip_chi4_witness(double h, std::optional<int> m = std::nullopt);

// ---------------------------------------------------------------------------
// Slab witness R^2 x [0, eps]

struct SpindleParams {
  double epsilon = 0.65;
  /// 1/delta.
  int steps = 4;
  double epsilon1 = 0.0;
  ForbiddenRadius q;

  double delta() const { return 1.0 / steps; }
  double apex_height() const;
  /// Distance of the lowest/highest circle point to the slab faces.
  double circle_margin() const;
};

/// Checks delta < eps^2, sqrt(delta) <= eps1 < eps with eps1 = 2 sqrt(1 - r^2).
SpindleParams make_spindle_params(double epsilon, int steps, long l, long m);

/// eps = 0.65, delta = 1/4, q = 3/17.
SpindleParams reference_spindle_params();

/// Minimal m first, then the fewest chain steps, subject to circle margin >= min_margin.
std::optional<SpindleParams> search_spindle_params(double epsilon, long max_m = 101, int max_steps = 64,
                                                   double min_margin = 0.05);

UnitDistanceGraph slab_chi5_witness(const SpindleParams& params);

// ---------------------------------------------------------------------------
// Exact odd cycle in Q x [0, eps]^3

struct RationalCycleParams {
  long l = 1;
  long n = 14;
  Rational b;
  ExactPoint e;
  ExactPoint e_prime;
};

RationalCycleParams rational_cycle_params(long l);

/// Requires n > 2 / eps^2 and (2l+1)/n < eps with eps rational.
UnitDistanceGraph rational_odd_cycle(long l, const Rational& epsilon);

// ---------------------------------------------------------------------------
// Curve neighbourhoods in the plane

/// Reach sin(eps/2) sin(eps/4) of a four-link path.
double four_step_reach(double epsilon);

struct FourStepPath {
  std::array<Point, 4> v;
  double l1 = 0.0;
  double l2 = 0.0;
};

/// Unit path u, v1, v2, v3, v4 = t for |t - u| <= four_step_reach(eps).
/// `reference` is the unit direction the links straddle; by default it is
/// perpendicular to t - u.
FourStepPath four_step_path(const Point& u, const Point& t, double epsilon,
                            std::optional<Point> reference = std::nullopt);

/// Odd cycle of length 4s+1 inside the eps-neighbourhood of a planar polyline.
UnitDistanceGraph curve_odd_cycle(const std::vector<Point>& polyline, double epsilon);

/// Distance from p to the polyline.
double polyline_distance(const std::vector<Point>& polyline, const Point& p);

// ---------------------------------------------------------------------------
// Pentagon configuration in R^2 x [0, eps]^2

struct PentagonOptions {
  /// Mutual planar distance of the lifted vertices.
  double delta = 1e-3;
  double delta1 = 1e-2;
  double delta2 = 1e-2;
  std::array<int, 3> vertices{0, 1, 3};
  /// Polar angle of pentagon vertex 0 around (eps/2, eps/2).
  double rotation = 1.5707963267948966;
  /// Plane-angle and triangle-angle allowances; 0 derives them from delta.
  double epsilon2 = 0.0;
  double epsilon3 = 0.0;
};

struct PentagonConfig {
  SlabSpec slab;
  double epsilon = 0.0;
  double epsilon1 = 0.0;
  std::array<Point, 5> pentagon;  // (z, t) pairs
  std::array<Point, 3> v;
  Point u0;
  Point normal;
  Point u1;
  double delta = 0.0;
  double delta1 = 0.0;
  double delta2 = 0.0;
  /// Orthonormal basis of the hyperplane through u1, v1, v2, v3.
  std::array<Point, 3> basis;

  double epsilon2 = 0.0;
  double epsilon3 = 0.0;
  double phi = 0.0;
  std::array<double, 3> alpha{};
  /// sin(eps2) - 16 (delta/eps1 + 2 delta^2/eps1^2)
  double phi_condition_slack = 0.0;
  /// eps1/2 sin(eps3/2) - delta
  double alpha_condition_slack = 0.0;
};

PentagonConfig pentagon_config(double epsilon, double epsilon1, const PentagonOptions& options = {});

/// Configuration over an arbitrary triangle; no pentagon data.
PentagonConfig triangle_config(const SlabSpec& slab, const std::array<Point, 3>& v, double delta1,
                               double delta2);

Point hyperplane_point(const PentagonConfig& c, const std::array<double, 3>& xi);

/// r_i = radius of the unit-equidistant circle over the triple without v_i.
std::array<double, 3> radius_map(const PentagonConfig& c, const Point& w);

struct RadiusJacobian {
  /// d r_i / d xi_j in hyperplane coordinates.
  std::array<std::array<double, 3>, 3> j{};
  double det = 0.0;
  bool nonsingular = false;
  std::array<Point, 3> gradients;
  std::array<Point, 3> medians;  // w - midpoint of the opposite side
  std::array<double, 3> lambda{};
};

RadiusJacobian radius_map_jacobian(const PentagonConfig& c, const Point& w);

struct TripleSolveReport {
  Point w;
  std::array<double, 3> xi{};
  std::array<double, 3> targets{};
  std::optional<std::array<ForbiddenRadius, 3>> forbidden;
  int iterations = 0;
  double residual = 0.0;
  double offset = 0.0;  // |w - u1|
  std::array<Circle, 3> circles;
  std::array<bool, 3> inside{};
  std::array<double, 3> margin{};
  std::array<double, 3> chord_residual{};

  std::string to_text() const;
};

TripleSolveReport solve_forbidden_triple(const PentagonConfig& c, const std::array<double, 3>& targets);
TripleSolveReport solve_forbidden_triple(const PentagonConfig& c, const std::array<ForbiddenRadius, 3>& targets);

/// For each r_i(u1), the closest forbidden radius with m <= max_m (must lie within `window`).
std::array<ForbiddenRadius, 3> nearby_forbidden_triple(const PentagonConfig& c, double window = 1e-3,
                                                       long max_m = 4001);

}  // namespace udcert

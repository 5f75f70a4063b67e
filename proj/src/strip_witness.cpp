#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "udcert/constructions.hpp"

namespace udcert {

namespace {

int reciprocal_steps(const Scalar& delta) {
  if (delta.is_exact()) {
    const Rational& d = delta.exact();
    if (sgn(d) <= 0 || d.get_num() != 1 || !d.get_den().fits_sint_p())
      throw std::invalid_argument("delta must be 1/N for a positive integer N");
    return static_cast<int>(d.get_den().get_si());
  }
  const double d = delta.to_double();
  if (!(d > 0.0) || d > 1.0) throw std::invalid_argument("delta must be 1/N for a positive integer N");
  const double n = std::round(1.0 / d);
  if (std::fabs(n * d - 1.0) > 1e-12) throw std::invalid_argument("1/delta must be an integer");
  return static_cast<int>(n);
}

// The point at distance 1 from a and b with the smaller second coordinate.
Point lower_unit_apex(const Point& a, const Point& b) {
  const Point mid = 0.5 * (a + b);
  const Point d = b - a;
  const double len = norm(d);
  const double s = std::sqrt(1.0 - 0.25 * len * len);
  Point perp{-d[1] / len, d[0] / len};
  if (perp[1] > 0.0) perp = -perp;
  return mid + s * perp;
}

Point at(double x, double y) { return Point{x, y}; }

}  // namespace

UnitDistanceGraph strip_chi3_witness(double epsilon, const Scalar& delta, std::optional<double> epsilon1) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) throw std::invalid_argument("strip width must lie in (0, 1)");
  const int steps = reciprocal_steps(delta);
  const double d = 1.0 / steps;
  if (d > epsilon * epsilon * (1.0 + 1e-12))
    throw std::invalid_argument("delta must not exceed eps^2 (delta=" + format_double(d) +
                                ", eps^2=" + format_double(epsilon * epsilon) + ")");
  const double e1 = epsilon1.value_or(0.5 * (std::sqrt(d) + epsilon));
  if (e1 < std::sqrt(d) * (1.0 - 1e-12) || !(e1 < epsilon))
    throw std::invalid_argument("leg length eps1 must satisfy sqrt(delta) <= eps1 < eps");
  const double apex_h = std::sqrt(e1 * e1 - 0.25 * d * d);

  UnitDistanceGraph g(SlabSpec{1, 1, Scalar(epsilon)}, NumericMode::Real);
  for (int i = 0; i <= steps; ++i)
    g.add_vertex(at(static_cast<double>(i) / steps, 0.0), "chain:" + std::to_string(i));
  std::vector<int> apex;
  for (int i = 0; i < steps; ++i) {
    const double x = (static_cast<double>(i) + 0.5) / steps;
    apex.push_back(g.add_vertex(at(x, apex_h), "apex:" + std::to_string(i)));
  }
  g.add_edge(0, steps);
  for (int i = 0; i < steps; ++i) {
    for (int side = 0; side < 2; ++side) {
      const int p = i + side;
      const Point xi = lower_unit_apex(g.point(p), g.point(apex[i]));
      if (xi[1] < 0.0 || xi[1] > epsilon)
        throw std::invalid_argument("xi point leaves the strip; delta/eps combination infeasible");
      const int v = g.add_vertex(xi, "xi:" + std::to_string(i) + (side == 0 ? ":left" : ":right"));
      g.add_edge(v, p);
      g.add_edge(v, apex[i]);
    }
  }
  g.metadata()["construction"] = "strip3";
  g.metadata()["epsilon"] = format_double(epsilon);
  g.metadata()["delta"] = "1/" + std::to_string(steps);
  g.metadata()["epsilon1"] = format_double(e1);
  return g;
}

double strip4_offset_range(double h) { return 3.0 - 2.0 * std::sqrt(3.0 - h * h); }

namespace {

void check_strip4_height(double h) {
  if (!(h > std::sqrt(3.0) / 2.0) || !(h <= std::sqrt(8.0 / 9.0)))
    throw std::invalid_argument("strip height h must satisfy sqrt(3)/2 < h <= sqrt(8/9)");
}

}  // namespace

int strip4_min_steps(double h) {
  check_strip4_height(h);
  const double w = strip4_offset_range(h);
  int m = static_cast<int>(std::ceil(1.0 / w));
  if (1.0 / m > w) ++m;
  return m;
}

UnitDistanceGraph strip_chi4_witness(double h, std::optional<int> m_opt) {
  check_strip4_height(h);
  const double w = strip4_offset_range(h);
  const int m = m_opt.value_or(strip4_min_steps(h));
  if (m < 1) throw std::invalid_argument("step count m must be positive");
  if (1.0 / m > w)
    throw std::invalid_argument("m too small: offset 1/m exceeds the hinge range " + format_double(w));

  // Double step of tilt phi advances 2 sqrt(3) cos(phi); forward and backward
  // double steps differ by exactly 1/m, centred inside the achievable range.
  const double slack = 0.5 * (w - 1.0 / m);
  const double forward = 3.0 - slack;
  const double backward = forward - 1.0 / m;
  const double sqrt3 = std::sqrt(3.0);
  const double phi_f = std::acos(forward / (2.0 * sqrt3));
  const double phi_b = std::acos(backward / (2.0 * sqrt3));

  UnitDistanceGraph g(SlabSpec{1, 1, Scalar(h)}, NumericMode::Real);
  for (int i = 0; i <= m; ++i) g.add_vertex(at(static_cast<double>(i) / m, 0.0), "anchor:" + std::to_string(i));

  // Rhombus a, p, q, b with |ab| = sqrt(3); returns b.
  auto rhombus = [&](int a, Point b_pos, const std::string& tag) {
    const Point a_pos = g.point(a);
    const Point mid = 0.5 * (a_pos + b_pos);
    const Point d = b_pos - a_pos;
    const Point n{-d[1] / sqrt3, d[0] / sqrt3};
    const int p = g.add_vertex(mid + 0.5 * n, tag + ":p");
    const int q = g.add_vertex(mid - 0.5 * n, tag + ":q");
    g.add_edge(a, p);
    g.add_edge(a, q);
    g.add_edge(p, q);
    return std::pair{p, q};
  };
  auto close = [&](std::pair<int, int> pq, int b) {
    g.add_edge(pq.first, b);
    g.add_edge(pq.second, b);
  };

  for (int i = 0; i < m; ++i) {
    const std::string base = "step:" + std::to_string(i);
    const Point a = g.point(i);
    const Point top_f = at(a[0] + sqrt3 * std::cos(phi_f), sqrt3 * std::sin(phi_f));
    auto r1 = rhombus(i, top_f, base + ":fwd-up");
    const int b = g.add_vertex(top_f, base + ":fwd-top");
    close(r1, b);
    const Point mid_pos = at(a[0] + forward, 0.0);
    auto r2 = rhombus(b, mid_pos, base + ":fwd-down");
    const int c = g.add_vertex(mid_pos, base + ":turn");
    close(r2, c);
    const Point top_b = at(mid_pos[0] - sqrt3 * std::cos(phi_b), sqrt3 * std::sin(phi_b));
    auto r3 = rhombus(c, top_b, base + ":back-up");
    const int d = g.add_vertex(top_b, base + ":back-top");
    close(r3, d);
    auto r4 = rhombus(d, g.point(i + 1), base + ":back-down");
    close(r4, i + 1);
  }
  g.add_edge(0, m);

  g.metadata()["construction"] = "strip4";
  g.metadata()["h"] = format_double(h);
  g.metadata()["m"] = std::to_string(m);
  g.metadata()["offset_range"] = format_double(w);
  return g;
}

}  // namespace udcert

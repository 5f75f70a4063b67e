#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "udcert/constructions.hpp"

namespace udcert {

double SpindleParams::apex_height() const {
  const double d = delta();
  return std::sqrt(epsilon1 * epsilon1 - 0.25 * d * d);
}

// The circle over a pair (chain point, apex) is centred at height H/2 and tilted
// so its vertical half-extent is r * (delta/2) / eps1.
double SpindleParams::circle_margin() const {
  const double centre = 0.5 * apex_height();
  const double half = q.radius() * 0.5 * delta() / epsilon1;
  return std::min(centre - half, epsilon - centre - half);
}

SpindleParams make_spindle_params(double epsilon, int steps, long l, long m) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("slab width must be positive");
  if (steps < 1) throw std::invalid_argument("1/delta must be a positive integer");
  SpindleParams p;
  p.epsilon = epsilon;
  p.steps = steps;
  p.q = forbidden_radius(l, m);
  if (!(p.q.r < 1.0L)) throw std::invalid_argument("forbidden radius must be below 1 for a unit-equidistant circle");
  p.epsilon1 = static_cast<double>(2.0L * std::sqrt(1.0L - p.q.r * p.q.r));
  const double d = p.delta();
  if (!(d < epsilon * epsilon)) throw std::invalid_argument("need delta < eps^2");
  if (!(std::sqrt(d) <= p.epsilon1)) throw std::invalid_argument("need sqrt(delta) <= eps1");
  if (!(p.epsilon1 < epsilon)) throw std::invalid_argument("need eps1 < eps (forbidden radius too small for this slab)");
  return p;
}

SpindleParams reference_spindle_params() { return make_spindle_params(0.65, 4, 3, 17); }

std::optional<SpindleParams> search_spindle_params(double epsilon, long max_m, int max_steps, double min_margin) {
  for (long m = 3; m <= max_m; m += 2) {
    std::optional<SpindleParams> best;
    for (long l = 1; 2 * l < m; ++l) {
      if (std::gcd(l, m) != 1) continue;
      const ForbiddenRadius fr = forbidden_radius(l, m);
      if (!(fr.r < 1.0L)) continue;
      const double e1 = static_cast<double>(2.0L * std::sqrt(1.0L - fr.r * fr.r));
      if (!(e1 < epsilon)) continue;
      for (int steps = 1; steps <= max_steps; ++steps) {
        const double d = 1.0 / steps;
        if (!(d < epsilon * epsilon) || !(std::sqrt(d) <= e1)) continue;
        SpindleParams p = make_spindle_params(epsilon, steps, l, m);
        if (p.circle_margin() < min_margin) continue;
        if (!best || steps < best->steps) best = p;
        break;
      }
    }
    if (best) return best;
  }
  return std::nullopt;
}

UnitDistanceGraph slab_chi5_witness(const SpindleParams& params) {
  const SpindleParams& p = params;
  // re-check the invariants in case the struct was filled by hand
  make_spindle_params(p.epsilon, p.steps, p.q.l, p.q.m);
  const int n = p.steps;
  const double height = p.apex_height();

  UnitDistanceGraph g(SlabSpec{2, 1, Scalar(p.epsilon)}, NumericMode::Real);
  for (int i = 0; i <= n; ++i)
    g.add_vertex(Point{static_cast<double>(i) / n, 0.0, 0.0}, "chain:" + std::to_string(i));
  for (int i = 0; i < n; ++i)
    g.add_vertex(Point{(static_cast<double>(i) + 0.5) / n, 0.0, height}, "apex:" + std::to_string(i));
  g.add_edge(0, n);

  int circle_index = 0;
  for (int i = 0; i < n; ++i) {
    const int apex = n + 1 + i;
    for (int chain : {i, i + 1}) {
      const Point centers[2] = {g.point(chain), g.point(apex)};
      const Circle circle = unit_equidistant_circle(centers);
      const auto [lo, hi] = circle_extent(circle, 2);
      if (lo < 0.0 || hi > p.epsilon)
        throw std::invalid_argument("circle " + std::to_string(circle_index) + " exits the slab");
      const CircleCycle cycle = circle_odd_cycle(circle, p.q, 1e-9);
      const int first = g.vertex_count();
      for (std::size_t j = 0; j < cycle.points.size(); ++j)
        g.add_vertex(cycle.points[j], "circle:" + std::to_string(circle_index) + ":vertex:" + std::to_string(j));
      for (const Edge& e : cycle.edges) g.add_edge(first + e.first, first + e.second);
      for (std::size_t j = 0; j < cycle.points.size(); ++j) {
        g.add_edge(first + static_cast<int>(j), chain);
        g.add_edge(first + static_cast<int>(j), apex);
      }
      ++circle_index;
    }
  }
  g.metadata()["construction"] = "slab5";
  g.metadata()["epsilon"] = format_double(p.epsilon);
  g.metadata()["delta"] = "1/" + std::to_string(n);
  g.metadata()["epsilon1"] = format_double(p.epsilon1);
  g.metadata()["q"] = std::to_string(p.q.l) + "/" + std::to_string(p.q.m);
  return g;
}

}  // namespace udcert

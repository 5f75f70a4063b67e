#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "udcert/constructions.hpp"

namespace udcert {

namespace {

Point dir(double theta) { return Point{std::cos(theta), std::sin(theta)}; }

void require_planar(const Point& p, const char* what) {
  if (p.dim() != 2) throw DimensionError(std::string(what) + " must be a planar point");
}

class Polyline {
 public:
  explicit Polyline(const std::vector<Point>& pts) : pts_(pts) {
    if (pts_.size() < 2) throw std::invalid_argument("polyline needs at least two points");
    cum_.push_back(0.0);
    for (std::size_t i = 0; i + 1 < pts_.size(); ++i) {
      require_planar(pts_[i], "polyline vertex");
      cum_.push_back(cum_.back() + distance(pts_[i], pts_[i + 1]));
    }
    require_planar(pts_.back(), "polyline vertex");
  }

  double length() const { return cum_.back(); }

  double diameter() const {
    double d = 0.0;
    for (std::size_t i = 0; i < pts_.size(); ++i)
      for (std::size_t j = i + 1; j < pts_.size(); ++j) d = std::max(d, distance(pts_[i], pts_[j]));
    return d;
  }

  Point at(double s) const {
    if (s <= 0.0) return pts_.front();
    if (s >= length()) return pts_.back();
    const std::size_t i = segment_of(s);
    const double len = cum_[i + 1] - cum_[i];
    const double tau = len > 0.0 ? (s - cum_[i]) / len : 0.0;
    return pts_[i] + tau * (pts_[i + 1] - pts_[i]);
  }

  // Smallest arclength s >= from where |P(s) - c| = 1.
  std::optional<double> unit_crossing(double from, const Point& c) const {
    for (std::size_t i = segment_of(std::max(from, 0.0)); i + 1 < pts_.size(); ++i) {
      const double len = cum_[i + 1] - cum_[i];
      if (len <= 0.0) continue;
      const double t0 = std::clamp((from - cum_[i]) / len, 0.0, 1.0);
      const Point d = pts_[i + 1] - pts_[i];
      const Point ac = pts_[i] - c;
      const double qa = dot(d, d);
      const double qb = 2.0 * dot(d, ac);
      const double qc = dot(ac, ac) - 1.0;
      const double disc = qb * qb - 4.0 * qa * qc;
      if (disc < 0.0) continue;
      const double sq = std::sqrt(disc);
      for (double tau : {(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)})
        if (tau >= t0 && tau <= 1.0) return cum_[i] + tau * len;
    }
    return std::nullopt;
  }

  double distance_to(const Point& p) const {
    double best = distance(p, pts_.front());
    for (std::size_t i = 0; i + 1 < pts_.size(); ++i) {
      const Point d = pts_[i + 1] - pts_[i];
      const double len2 = dot(d, d);
      const double tau = len2 > 0.0 ? std::clamp(dot(p - pts_[i], d) / len2, 0.0, 1.0) : 0.0;
      best = std::min(best, distance(p, pts_[i] + tau * d));
    }
    return best;
  }

 private:
  std::size_t segment_of(double s) const {
    auto it = std::upper_bound(cum_.begin(), cum_.end(), s);
    std::size_t i = it == cum_.begin() ? 0 : static_cast<std::size_t>(it - cum_.begin()) - 1;
    return std::min(i, pts_.size() - 2);
  }

  std::vector<Point> pts_;
  std::vector<double> cum_;
};

}  // namespace

double four_step_reach(double epsilon) { return std::sin(0.5 * epsilon) * std::sin(0.25 * epsilon); }

FourStepPath four_step_path(const Point& u, const Point& t, double epsilon, std::optional<Point> reference) {
  require_planar(u, "u");
  require_planar(t, "t");
  if (!(epsilon > 0.0) || !(epsilon < std::numbers::pi)) throw std::invalid_argument("epsilon must lie in (0, pi)");
  const Point d = t - u;
  const double gap = norm(d);
  const double gamma = four_step_reach(epsilon);
  if (gap > gamma * (1.0 + 1e-12))
    throw std::invalid_argument("target out of reach: |t-u|=" + format_double(gap) + " > gamma=" + format_double(gamma));

  double theta_ref;
  if (reference) {
    require_planar(*reference, "reference direction");
    if (!(norm(*reference) > 0.0)) throw std::invalid_argument("reference direction must be nonzero");
    theta_ref = std::atan2((*reference)[1], (*reference)[0]);
  } else {
    theta_ref = gap > 0.0 ? std::atan2(d[1], d[0]) - 0.5 * std::numbers::pi : 0.0;
  }

  // Two rhombus links l1, l2 along the lines at +-beta from the reference
  // direction; their sum must equal t - u.
  const double beta = epsilon / 8.0;
  const Point n = dir(theta_ref + 0.5 * std::numbers::pi);
  const Point m = dir(theta_ref + std::numbers::pi);
  const double sum = dot(d, n) / std::cos(beta);
  const double diff = dot(d, m) / std::sin(beta);
  FourStepPath path;
  path.l1 = 0.5 * (sum + diff);
  path.l2 = 0.5 * (sum - diff);
  const double limit = 2.0 * std::sin(0.25 * epsilon);
  if (std::fabs(path.l1) > limit * (1.0 + 1e-9) || std::fabs(path.l2) > limit * (1.0 + 1e-9))
    throw std::invalid_argument("link length exceeds 2 sin(eps/4); reference direction unsuitable");

  const double a1 = std::asin(std::clamp(0.5 * path.l1, -1.0, 1.0));
  const double a2 = std::asin(std::clamp(0.5 * path.l2, -1.0, 1.0));
  const double mu1 = theta_ref + beta;
  const double mu2 = theta_ref - beta;
  path.v[0] = u + dir(mu1 + a1);
  path.v[1] = path.v[0] - dir(mu1 - a1);
  path.v[2] = path.v[1] + dir(mu2 + a2);
  path.v[3] = path.v[2] - dir(mu2 - a2);
  return path;
}

double polyline_distance(const std::vector<Point>& polyline, const Point& p) {
  return Polyline(polyline).distance_to(p);
}

UnitDistanceGraph curve_odd_cycle(const std::vector<Point>& polyline, double epsilon) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  const Polyline curve(polyline);
  if (curve.diameter() < 2.0) throw std::invalid_argument("curve diameter must be at least 2");

  const Point u = curve.at(0.0);
  const std::optional<double> sv = curve.unit_crossing(0.0, u);
  if (!sv) throw std::invalid_argument("no curve point at distance 1 from the start");
  const double gamma = four_step_reach(epsilon);
  const int steps = static_cast<int>(std::ceil(*sv / gamma * (1.0 + 1e-9)));

  UnitDistanceGraph g(SlabSpec{2, 0, Scalar(epsilon)}, NumericMode::Real);
  int prev = g.add_vertex(u, "curve:u");
  Point cur = u;
  for (int j = 0; j < steps; ++j) {
    const double s = *sv * j / steps;
    const Point target = curve.at(*sv * (j + 1) / steps);
    std::optional<Point> ref;
    if (auto f = curve.unit_crossing(s, cur)) ref = curve.at(*f) - cur;
    FourStepPath path = four_step_path(cur, target, epsilon, ref);
    for (int i = 0; i < 4; ++i) {
      std::string label = "step:" + std::to_string(j) + ":v" + std::to_string(i + 1);
      if (i == 3 && j == steps - 1) label = "curve:v";
      const int v = g.add_vertex(path.v[i], label);
      g.add_edge(prev, v);
      prev = v;
    }
    cur = path.v[3];
  }
  g.add_edge(prev, 0);

  for (int i = 0; i < g.vertex_count(); ++i)
    if (curve.distance_to(g.point(i)) > epsilon)
      throw std::runtime_error("step construction left the eps-neighbourhood at vertex " + g.label(i));

  g.metadata()["construction"] = "curve";
  g.metadata()["epsilon"] = format_double(epsilon);
  g.metadata()["steps"] = std::to_string(steps);
  return g;
}

}  // namespace udcert

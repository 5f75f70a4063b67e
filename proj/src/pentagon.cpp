#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "udcert/constructions.hpp"

namespace udcert {

namespace {

constexpr double kPi = std::numbers::pi;

std::pair<int, int> others(int i) {
  switch (i) {
    case 0: return {1, 2};
    case 1: return {0, 2};
    default: return {0, 1};
  }
}

double angle_between(const Point& a, const Point& b) {
  const double c = dot(a, b) / (norm(a) * norm(b));
  return std::acos(std::clamp(c, -1.0, 1.0));
}

// Largest principal angle between span(v1-v0, v2-v0) and the bounded (z, t) plane.
double plane_angle(const std::array<Point, 3>& v) {
  const Point d[2] = {v[1] - v[0], v[2] - v[0]};
  const std::vector<Point> basis = orthonormalize(d);
  Eigen::Matrix2d proj;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) proj(i, j) = basis[i][2 + j];
  Eigen::JacobiSVD<Eigen::Matrix2d> svd(proj);
  const double smin = std::clamp(svd.singularValues()(1), 0.0, 1.0);
  return std::acos(smin);
}

void finish(PentagonConfig& c) {
  auto [u0, R] = circumcenter(c.v);
  (void)R;
  c.u0 = u0;
  const Point dirs[2] = {c.v[1] - c.v[0], c.v[2] - c.v[0]};
  const std::vector<Point> plane = orthonormalize(dirs);
  c.normal = orthogonal_complement(plane, 4).front();
  c.u1 = c.u0 + c.delta1 * c.normal;
  const Point hull[3] = {c.v[0] - c.u1, c.v[1] - c.u1, c.v[2] - c.u1};
  const std::vector<Point> b = orthonormalize(hull);
  for (int i = 0; i < 3; ++i) c.basis[i] = b[i];
  c.phi = plane_angle(c.v);
  for (int i = 0; i < 3; ++i) {
    auto [j, k] = others(i);
    c.alpha[i] = angle_between(c.v[j] - c.v[i], c.v[k] - c.v[i]);
  }
}

// Gradient of the circumradius-derived r = sqrt(1 - R^2) of triangle (a, b, w) in w.
Point radius_gradient(const Point& a, const Point& b, const Point& w, double& r_out) {
  const Point p = a - w;
  const Point q = b - w;
  const double pp = dot(p, p);
  const double qq = dot(q, q);
  const double pq = dot(p, q);
  const double ab2 = norm_squared(a - b);
  const double n = pp * qq;
  const double gram = n - pq * pq;
  if (!(gram > 1e-300)) throw DegenerateError("degenerate triple");
  const double r2 = 0.25 * ab2 * n / gram;
  if (!(r2 < 1.0)) throw DegenerateError("triple circumradius is at least 1");
  const double r = std::sqrt(1.0 - r2);
  const Point grad_n = (-2.0 * qq) * p + (-2.0 * pp) * q;
  const Point grad_g = grad_n + (2.0 * pq) * (p + q);
  const Point grad_r2 = (0.25 * ab2 / (gram * gram)) * (gram * grad_n - n * grad_g);
  r_out = r;
  return (-0.5 / r) * grad_r2;
}

double det3(const std::array<std::array<double, 3>, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

double norm3(const std::array<double, 3>& x) { return std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]); }

}  // namespace

PentagonConfig pentagon_config(double epsilon, double epsilon1, const PentagonOptions& options) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("slab width must be positive");
  if (!(epsilon1 > 0.0) || !(epsilon1 < 0.5 * epsilon)) throw std::invalid_argument("need 0 < eps1 < eps/2");
  if (!(options.delta > 0.0) || !(options.delta1 > 0.0) || !(options.delta2 > 0.0))
    throw std::invalid_argument("delta, delta1 and delta2 must be positive");
  const auto& idx = options.vertices;
  for (int i = 0; i < 3; ++i) {
    if (idx[i] < 0 || idx[i] > 4) throw std::invalid_argument("pentagon vertex index out of range");
    for (int j = 0; j < i; ++j)
      if (idx[i] == idx[j]) throw std::invalid_argument("pentagon vertices must be distinct");
  }

  PentagonConfig c;
  c.slab = SlabSpec{2, 2, Scalar(epsilon)};
  c.epsilon = epsilon;
  c.epsilon1 = epsilon1;
  c.delta = options.delta;
  c.delta1 = options.delta1;
  c.delta2 = options.delta2;
  for (int k = 0; k < 5; ++k) {
    const double a = options.rotation + 2.0 * kPi * k / 5.0;
    c.pentagon[k] = Point{0.5 * epsilon + epsilon1 * std::cos(a), 0.5 * epsilon + epsilon1 * std::sin(a)};
  }
  // planar offsets on an equilateral triangle of side delta
  for (int i = 0; i < 3; ++i) {
    const double a = 0.5 * kPi + 2.0 * kPi * i / 3.0;
    const double s = options.delta / std::sqrt(3.0);
    const Point& m = c.pentagon[idx[i]];
    c.v[i] = Point{s * std::cos(a), s * std::sin(a), m[0], m[1]};
  }
  finish(c);

  const double ratio = options.delta / epsilon1;
  const double phi_need = 16.0 * (ratio + 2.0 * ratio * ratio);
  c.epsilon2 = options.epsilon2 > 0.0 ? options.epsilon2 : std::asin(std::min(1.0, phi_need));
  c.epsilon3 = options.epsilon3 > 0.0 ? options.epsilon3 : 2.0 * std::asin(std::min(1.0, 2.0 * ratio));
  c.phi_condition_slack = std::sin(c.epsilon2) - phi_need;
  c.alpha_condition_slack = 0.5 * epsilon1 * std::sin(0.5 * c.epsilon3) - options.delta;

  if (c.phi > c.epsilon2)
    throw std::invalid_argument("plane angle " + format_double(c.phi) + " exceeds eps2 " + format_double(c.epsilon2));
  for (double a : c.alpha)
    if (a < kPi / 5.0 - c.epsilon3)
      throw std::invalid_argument("triangle angle " + format_double(a) + " below pi/5 - eps3");
  for (const Point& p : c.v)
    if (!slab_contains(c.slab, p)) throw std::invalid_argument("triangle vertex outside the slab");
  return c;
}

PentagonConfig triangle_config(const SlabSpec& slab, const std::array<Point, 3>& v, double delta1, double delta2) {
  slab.validate();
  if (slab.dim() != 4) throw DimensionError("triangle configuration lives in a 4-dimensional slab");
  if (!(delta1 > 0.0) || !(delta2 > 0.0)) throw std::invalid_argument("delta1 and delta2 must be positive");
  PentagonConfig c;
  c.slab = slab;
  c.epsilon = slab.epsilon.to_double();
  c.v = v;
  c.delta1 = delta1;
  c.delta2 = delta2;
  finish(c);
  return c;
}

Point hyperplane_point(const PentagonConfig& c, const std::array<double, 3>& xi) {
  Point w = c.u1;
  for (int j = 0; j < 3; ++j) w += xi[j] * c.basis[j];
  return w;
}

std::array<double, 3> radius_map(const PentagonConfig& c, const Point& w) {
  std::array<double, 3> r{};
  for (int i = 0; i < 3; ++i) {
    auto [j, k] = others(i);
    const Point centers[3] = {c.v[j], c.v[k], w};
    r[i] = unit_equidistant_circle(centers).radius;
  }
  return r;
}

RadiusJacobian radius_map_jacobian(const PentagonConfig& c, const Point& w) {
  RadiusJacobian out;
  for (int i = 0; i < 3; ++i) {
    auto [j, k] = others(i);
    double r = 0.0;
    out.gradients[i] = radius_gradient(c.v[j], c.v[k], w, r);
    out.medians[i] = w - 0.5 * (c.v[j] + c.v[k]);
    out.lambda[i] = dot(out.gradients[i], out.medians[i]) / norm_squared(out.medians[i]);
    for (int b = 0; b < 3; ++b) out.j[i][b] = dot(out.gradients[i], c.basis[b]);
  }
  out.det = det3(out.j);
  out.nonsingular = std::fabs(out.det) > 1e-10;
  return out;
}

TripleSolveReport solve_forbidden_triple(const PentagonConfig& c, const std::array<double, 3>& targets) {
  TripleSolveReport rep;
  rep.targets = targets;
  std::array<double, 3> xi{0.0, 0.0, 0.0};
  auto residual_at = [&](const std::array<double, 3>& x, std::array<double, 3>& f) {
    const std::array<double, 3> r = radius_map(c, hyperplane_point(c, x));
    for (int i = 0; i < 3; ++i) f[i] = r[i] - targets[i];
    return norm3(f);
  };
  std::array<double, 3> f{};
  double res = residual_at(xi, f);
  constexpr double kTol = 1e-10;
  constexpr int kMaxIter = 50;
  int iter = 0;
  while (res >= kTol) {
    if (iter == kMaxIter) throw std::runtime_error("Newton iteration did not converge");
    const RadiusJacobian jac = radius_map_jacobian(c, hyperplane_point(c, xi));
    if (!jac.nonsingular) throw std::runtime_error("singular radius-map Jacobian");
    Eigen::Matrix3d jm;
    Eigen::Vector3d rhs;
    for (int i = 0; i < 3; ++i) {
      rhs(i) = -f[i];
      for (int j = 0; j < 3; ++j) jm(i, j) = jac.j[i][j];
    }
    const Eigen::Vector3d step = jm.fullPivLu().solve(rhs);
    if (iter == 0 && step.norm() > c.delta2)
      throw std::invalid_argument("targets outside the neighbourhood: first Newton step " + format_double(step.norm()) +
                                  " exceeds delta2");
    double t = 1.0;
    bool improved = false;
    for (int halving = 0; halving <= 60; ++halving, t *= 0.5) {
      std::array<double, 3> trial{xi[0] + t * step(0), xi[1] + t * step(1), xi[2] + t * step(2)};
      std::array<double, 3> ft{};
      double rt;
      try {
        rt = residual_at(trial, ft);
      } catch (const std::invalid_argument&) {
        continue;
      }
      if (rt < res) {
        xi = trial;
        f = ft;
        res = rt;
        improved = true;
        break;
      }
    }
    if (!improved) throw std::runtime_error("Newton divergence: step damping exhausted");
    ++iter;
  }
  rep.xi = xi;
  rep.w = hyperplane_point(c, xi);
  rep.iterations = iter;
  rep.residual = res;
  rep.offset = distance(rep.w, c.u1);
  if (!(rep.offset < c.delta2))
    throw std::runtime_error("Newton solution left the ball B(u1, delta2)");

  const double eps = c.epsilon;
  for (int i = 0; i < 3; ++i) {
    auto [j, k] = others(i);
    const Point centers[3] = {c.v[j], c.v[k], rep.w};
    rep.circles[i] = unit_equidistant_circle(centers);
    double margin = std::numeric_limits<double>::infinity();
    for (int axis = c.slab.n; axis < c.slab.dim(); ++axis) {
      auto [lo, hi] = circle_extent(rep.circles[i], axis);
      margin = std::min({margin, lo, eps - hi});
    }
    rep.margin[i] = margin;
    rep.inside[i] = margin >= 0.0;
  }
  return rep;
}

TripleSolveReport solve_forbidden_triple(const PentagonConfig& c, const std::array<ForbiddenRadius, 3>& targets) {
  TripleSolveReport rep =
      solve_forbidden_triple(c, std::array<double, 3>{targets[0].radius(), targets[1].radius(), targets[2].radius()});
  rep.forbidden = targets;
  for (int i = 0; i < 3; ++i) {
    const CircleCycle cycle = circle_odd_cycle(rep.circles[i], targets[i], 1e-9);
    double worst = 0.0;
    for (const Edge& e : cycle.edges)
      worst = std::max(worst, std::fabs(distance(cycle.points[e.first], cycle.points[e.second]) - 1.0));
    rep.chord_residual[i] = worst;
  }
  return rep;
}

std::array<ForbiddenRadius, 3> nearby_forbidden_triple(const PentagonConfig& c, double window, long max_m) {
  constexpr std::size_t kKeep = 12;
  const std::array<double, 3> r = radius_map(c, c.u1);
  std::array<std::vector<ForbiddenRadius>, 3> cands;
  for (int i = 0; i < 3; ++i) {
    cands[i] = enumerate_forbidden_radii(std::max(r[i] - window, 0.5 + 1e-12), r[i] + window, max_m);
    if (cands[i].empty())
      throw std::runtime_error("no forbidden radius within " + format_double(window) + " of " + format_double(r[i]));
    std::sort(cands[i].begin(), cands[i].end(), [&](const ForbiddenRadius& a, const ForbiddenRadius& b) {
      const double da = std::fabs(a.radius() - r[i]);
      const double db = std::fabs(b.radius() - r[i]);
      if (da != db) return da < db;
      return a.m < b.m;
    });
    if (cands[i].size() > kKeep) cands[i].resize(kKeep);
  }
  // pick the combination with the shortest linearized Newton step from u1
  const RadiusJacobian jac = radius_map_jacobian(c, c.u1);
  Eigen::Matrix3d jm;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) jm(i, j) = jac.j[i][j];
  const Eigen::FullPivLU<Eigen::Matrix3d> lu(jm);
  std::array<ForbiddenRadius, 3> best;
  double best_step = std::numeric_limits<double>::infinity();
  for (const auto& a : cands[0])
    for (const auto& b : cands[1])
      for (const auto& d : cands[2]) {
        const Eigen::Vector3d dr(a.radius() - r[0], b.radius() - r[1], d.radius() - r[2]);
        const double step = lu.solve(dr).norm();
        if (step < best_step) {
          best_step = step;
          best = {a, b, d};
        }
      }
  return best;
}

std::string TripleSolveReport::to_text() const {
  std::ostringstream os;
  os << "iterations " << iterations << "\nresidual " << format_double(residual) << "\noffset " << format_double(offset)
     << "\n";
  for (int i = 0; i < 3; ++i) {
    os << "circle " << i + 1 << " target " << format_double(targets[i]);
    if (forbidden) os << " (" << (*forbidden)[i].l << "/" << (*forbidden)[i].m << ")";
    os << " radius " << format_double(circles[i].radius) << " margin " << format_double(margin[i])
       << (inside[i] ? " inside" : " OUTSIDE");
    if (forbidden) os << " chord_residual " << format_double(chord_residual[i]);
    os << "\n";
  }
  return os.str();
}

}  // namespace udcert

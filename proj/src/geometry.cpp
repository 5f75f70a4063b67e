#include "udcert/geometry.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <limits>

namespace udcert {

Point to_real(const ExactPoint& p) {
  Point out(p.dim());
  for (int i = 0; i < p.dim(); ++i) out[i] = p[i].get_d();
  return out;
}

double distance(const Point& p, const Point& q) {
  p.same_dim(q);
  return norm(p - q);
}

Rational distance_squared(const ExactPoint& p, const ExactPoint& q) {
  p.same_dim(q);
  return norm_squared(p - q);
}

std::optional<Rational> exact_distance(const ExactPoint& p, const ExactPoint& q) {
  return rational_sqrt(distance_squared(p, q));
}

void SlabSpec::validate() const {
  if (n < 1) throw std::invalid_argument("slab needs at least one unbounded dimension");
  if (k < 0) throw std::invalid_argument("slab bounded dimension count must be non-negative");
  if (n + k > kMaxDim) throw std::invalid_argument("slab dimension exceeds 4");
  bool positive = epsilon.is_exact() ? sgn(epsilon.exact()) > 0 : epsilon.to_double() > 0.0;
  if (!positive) throw std::invalid_argument("slab width must be positive");
}

bool slab_contains(const SlabSpec& slab, const Point& p) {
  if (p.dim() != slab.dim()) throw DimensionError("point dimension does not match slab");
  const double eps = slab.epsilon.to_double();
  for (int i = slab.n; i < slab.dim(); ++i)
    if (!(p[i] >= 0.0 && p[i] <= eps)) return false;
  return true;
}

bool slab_contains(const SlabSpec& slab, const ExactPoint& p) {
  if (p.dim() != slab.dim()) throw DimensionError("point dimension does not match slab");
  if (!slab.epsilon.is_exact()) return slab_contains(slab, to_real(p));
  const Rational& eps = slab.epsilon.exact();
  for (int i = slab.n; i < slab.dim(); ++i)
    if (sgn(p[i]) < 0 || p[i] > eps) return false;
  return true;
}

double slab_margin(const SlabSpec& slab, const Point& p) {
  if (p.dim() != slab.dim()) throw DimensionError("point dimension does not match slab");
  const double eps = slab.epsilon.to_double();
  double margin = std::numeric_limits<double>::infinity();
  for (int i = slab.n; i < slab.dim(); ++i) margin = std::min({margin, p[i], eps - p[i]});
  return margin;
}

std::vector<Point> orthonormalize(std::span<const Point> vectors, double rel_tol) {
  std::vector<Point> basis;
  for (const Point& v : vectors) {
    Point w = v;
    // two passes of modified Gram-Schmidt
    for (int pass = 0; pass < 2; ++pass)
      for (const Point& b : basis) w -= dot(w, b) * b;
    const double len = norm(w);
    if (!(len > rel_tol * std::max(1.0, norm(v)))) throw DegenerateError("vectors are linearly dependent");
    basis.push_back(w * (1.0 / len));
  }
  return basis;
}

std::vector<Point> orthogonal_complement(std::span<const Point> basis, int dim) {
  std::vector<Point> all(basis.begin(), basis.end());
  std::vector<Point> out;
  while (static_cast<int>(all.size()) < dim) {
    Point best;
    double best_len = -1.0;
    for (int axis = 0; axis < dim; ++axis) {
      Point e(dim);
      e[axis] = 1.0;
      for (int pass = 0; pass < 2; ++pass)
        for (const Point& b : all) e -= dot(e, b) * b;
      const double len = norm(e);
      if (len > best_len + 1e-12) {
        best_len = len;
        best = e;
      }
    }
    best *= 1.0 / best_len;
    all.push_back(best);
    out.push_back(best);
  }
  return out;
}

std::pair<Point, double> circumcenter(std::span<const Point> points) {
  if (points.size() < 2) throw DegenerateError("circumcenter needs at least two points");
  const int d = points[0].dim();
  for (const Point& p : points) points[0].same_dim(p);
  const int m = static_cast<int>(points.size()) - 1;
  if (m > d) throw DegenerateError("too many points for an affinely independent set");

  // c = p0 + sum_i a_i (p_i - p0) with 2 (p_i - p0).(c - p0) = |p_i - p0|^2
  std::vector<Point> dirs;
  for (int i = 1; i <= m; ++i) dirs.push_back(points[i] - points[0]);
  Eigen::MatrixXd gram(m, m);
  Eigen::VectorXd rhs(m);
  double scale = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) gram(i, j) = dot(dirs[i], dirs[j]);
    rhs(i) = 0.5 * gram(i, i);
    scale = std::max(scale, gram(i, i));
  }
  if (!(scale > 0.0)) throw DegenerateError("coincident points");
  // relative Gram determinant measures affine independence
  double det = gram.determinant();
  double prod = 1.0;
  for (int i = 0; i < m; ++i) prod *= gram(i, i);
  if (!(std::abs(det) > 1e-12 * prod) || prod == 0.0) throw DegenerateError("points are affinely dependent");

  Eigen::VectorXd a = gram.fullPivLu().solve(rhs);
  Point c = points[0];
  for (int i = 0; i < m; ++i) c += a(i) * dirs[i];
  (void)d;
  double radius = 0.0;
  for (const Point& p : points) radius += distance(c, p);
  radius /= static_cast<double>(points.size());
  return {c, radius};
}

Circle unit_equidistant_circle(std::span<const Point> centers) {
  if (centers.empty()) throw DegenerateError("no centers");
  const int d = centers[0].dim();
  if (static_cast<int>(centers.size()) != d - 1)
    throw DimensionError("need exactly d-1 centers for a circle in R^d");
  auto [c, R] = circumcenter(centers);
  if (!(R < 1.0)) throw DegenerateError("circumradius of centers is at least 1; no unit-equidistant circle");

  std::vector<Point> dirs;
  for (std::size_t i = 1; i < centers.size(); ++i) dirs.push_back(centers[i] - centers[0]);
  std::vector<Point> hull = orthonormalize(dirs);
  std::vector<Point> plane = orthogonal_complement(hull, d);
  return Circle{c, std::sqrt(1.0 - R * R), plane[0], plane[1]};
}

Point circle_point(const Circle& c, double theta) {
  return c.center + (c.radius * std::cos(theta)) * c.b1 + (c.radius * std::sin(theta)) * c.b2;
}

std::pair<double, double> circle_extent(const Circle& c, int axis) {
  const double half = c.radius * std::hypot(c.b1[axis], c.b2[axis]);
  return {c.center[axis] - half, c.center[axis] + half};
}

}  // namespace udcert

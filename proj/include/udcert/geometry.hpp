#pragma once

#include <array>
#include <cmath>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "udcert/rational.hpp"

namespace udcert {

/// Largest ambient dimension used by any construction (R^2 x [0,eps]^2, Q x [0,eps]^3).
inline constexpr int kMaxDim = 4;

/// Default tolerance for every "distance equals one" check.
inline constexpr double kDefaultTol = 1e-9;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DegenerateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Coordinate vector in 1..4 dimensions over double or Rational.
template <class T>
class Vec {
 public:
  Vec() = default;
  explicit Vec(int dim) : dim_(dim) { check_dim(dim); }
  Vec(std::initializer_list<T> init) : dim_(static_cast<int>(init.size())) {
    check_dim(dim_);
    int i = 0;
    for (const T& x : init) c_[i++] = x;
  }

  int dim() const { return dim_; }
  T& operator[](int i) { return c_[i]; }
  const T& operator[](int i) const { return c_[i]; }
  auto begin() const { return c_.begin(); }
  auto end() const { return c_.begin() + dim_; }

  Vec& operator+=(const Vec& o) {
    same_dim(o);
    for (int i = 0; i < dim_; ++i) c_[i] += o.c_[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    same_dim(o);
    for (int i = 0; i < dim_; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Vec& operator*=(const T& s) {
    for (int i = 0; i < dim_; ++i) c_[i] *= s;
    return *this;
  }
  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator*(Vec a, const T& s) { return a *= s; }
  friend Vec operator*(const T& s, Vec a) { return a *= s; }
  friend Vec operator-(Vec a) {
    for (int i = 0; i < a.dim_; ++i) a.c_[i] = -a.c_[i];
    return a;
  }
  friend bool operator==(const Vec& a, const Vec& b) {
    if (a.dim_ != b.dim_) return false;
    for (int i = 0; i < a.dim_; ++i)
      if (!(a.c_[i] == b.c_[i])) return false;
    return true;
  }

  void same_dim(const Vec& o) const {
    if (o.dim_ != dim_) throw DimensionError("dimension mismatch");
  }

 private:
  static void check_dim(int d) {
    if (d < 1 || d > kMaxDim) throw DimensionError("point dimension must be in [1, 4]");
  }

  std::array<T, kMaxDim> c_{};
  int dim_ = 0;
};

using Point = Vec<double>;
using ExactPoint = Vec<Rational>;

template <class T>
T dot(const Vec<T>& a, const Vec<T>& b) {
  a.same_dim(b);
  T s = T(0);
  for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

template <class T>
T norm_squared(const Vec<T>& a) {
  return dot(a, a);
}

inline double norm(const Point& a) { return std::sqrt(norm_squared(a)); }

Point to_real(const ExactPoint& p);

double distance(const Point& p, const Point& q);
Rational distance_squared(const ExactPoint& p, const ExactPoint& q);
/// Exact distance when it is rational (e.g. a unit edge between rational points).
std::optional<Rational> exact_distance(const ExactPoint& p, const ExactPoint& q);

/// Ambient R^n x [0,eps]^k; the bounded coordinates are the last k.
struct SlabSpec {
  int n = 2;
  int k = 0;
  Scalar epsilon = Scalar(1.0);

  int dim() const { return n + k; }
  /// Throws std::invalid_argument unless n >= 1, k >= 0, eps > 0, n + k <= 4.
  void validate() const;

  friend bool operator==(const SlabSpec&, const SlabSpec&) = default;
};

bool slab_contains(const SlabSpec& slab, const Point& p);
bool slab_contains(const SlabSpec& slab, const ExactPoint& p);

/// Smallest distance of the bounded coordinates of `p` to the slab faces
/// (negative when outside). Infinite when k = 0.
double slab_margin(const SlabSpec& slab, const Point& p);

/// Circle embedded in R^d: center + r cos t b1 + r sin t b2.
struct Circle {
  Point center;
  double radius = 0.0;
  Point b1;
  Point b2;
};

/// Circumcenter and circumradius of 2..d affinely independent points, taken
/// inside their affine hull.
std::pair<Point, double> circumcenter(std::span<const Point> points);

/// The circle of points at distance exactly 1 from each of d-1 centers in R^d.
Circle unit_equidistant_circle(std::span<const Point> centers);

Point circle_point(const Circle& c, double theta);

/// Lowest and highest value of coordinate `axis` over the circle.
std::pair<double, double> circle_extent(const Circle& c, int axis);

/// Orthonormal basis (Gram-Schmidt) of span(vectors); throws DegenerateError when
/// the vectors are linearly dependent relative to `rel_tol`.
std::vector<Point> orthonormalize(std::span<const Point> vectors, double rel_tol = 1e-12);

/// Orthonormal basis of the orthogonal complement of span(basis), which must be
/// orthonormal. Deterministic: at each step the standard axis with the largest
/// projected residual is taken (lowest index on ties).
std::vector<Point> orthogonal_complement(std::span<const Point> basis, int dim);

}  // namespace udcert

#include "udcert/colorings.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace udcert {

double hex7_side() { return 1.0 / std::sqrt(7.0); }

Point hex_center(long a, long b, double side) {
  const double w = std::sqrt(3.0) * side;
  return Point{w * (static_cast<double>(a) + 0.5 * static_cast<double>(b)), 1.5 * side * static_cast<double>(b)};
}

HexCell hex_cell(const Point& p, double side) {
  if (!(side > 0.0)) throw std::invalid_argument("hexagon side must be positive");
  if (p.dim() < 2) throw DimensionError("hex coloring needs a planar projection");
  const double w = std::sqrt(3.0) * side;
  const double fb = p[1] / (1.5 * side);
  const double fa = (p[0] - 0.5 * fb * w) / w;
  const long a0 = static_cast<long>(std::floor(fa));
  const long b0 = static_cast<long>(std::floor(fb));
  const double tie = 1e-12 * side * side;
  HexCell best;
  double best_d = std::numeric_limits<double>::infinity();
  for (long b = b0 - 1; b <= b0 + 2; ++b) {
    for (long a = a0 - 1; a <= a0 + 2; ++a) {
      const Point c = hex_center(a, b, side);
      const double d = (p[0] - c[0]) * (p[0] - c[0]) + (p[1] - c[1]) * (p[1] - c[1]);
      bool take = d < best_d - tie;
      if (!take && std::fabs(d - best_d) <= tie)
        take = c[0] < best.center[0] || (c[0] == best.center[0] && c[1] < best.center[1]);
      if (take) {
        best_d = std::min(d, best_d);
        best = HexCell{a, b, c};
      }
    }
  }
  return best;
}

std::array<Point, 6> hex_polygon(long a, long b, double side) {
  const Point c = hex_center(a, b, side);
  std::array<Point, 6> out;
  for (int k = 0; k < 6; ++k) {
    const double t = std::numbers::pi / 6.0 + k * std::numbers::pi / 3.0;
    out[k] = Point{c[0] + side * std::cos(t), c[1] + side * std::sin(t)};
  }
  return out;
}

int hex_cell_color(long a, long b) { return static_cast<int>(positive_mod(static_cast<long long>(a) + 3LL * b, 7)); }

int hex7_color(const Point& p, double side) {
  const HexCell c = hex_cell(p, side);
  return hex_cell_color(c.a, c.b);
}

bool slab7_admissible(const SlabSpec& slab) {
  if (slab.epsilon.is_exact()) {
    const Rational& e = slab.epsilon.exact();
    return Rational(4, 7) + slab.k * e * e < 1;
  }
  const double e = slab.epsilon.to_double();
  return 4.0 / 7.0 + slab.k * e * e < 1.0;
}

int slab7_color(const SlabSpec& slab, const Point& p) {
  slab.validate();
  if (slab.n != 2) throw std::invalid_argument("slab7 coloring needs two unbounded dimensions");
  if (!slab7_admissible(slab))
    throw std::invalid_argument("slab7 coloring requires 4/7 + k eps^2 < 1 (k=" + std::to_string(slab.k) +
                                ", eps=" + slab.epsilon.to_string() + ")");
  if (p.dim() != slab.dim()) throw DimensionError("point dimension does not match slab");
  return hex7_color(p);
}

namespace {

int stripe_width(int cells) {
  if (cells == 3) return 2;
  if (cells == 4) return 3;
  throw std::invalid_argument("stripe coloring uses 3 or 4 cells per period");
}

}  // namespace

int stripe_color(const Rational& x, int cells) {
  return static_cast<int>(positive_mod(floor(x * stripe_width(cells)), cells));
}

int stripe_color(double x, int cells) {
  return static_cast<int>(positive_mod(static_cast<long long>(std::floor(x * stripe_width(cells))), cells));
}

int qmod3_color(const Rational& x) {
  const mpz_class k = ceil(Rational(3, 2) * x) - 1;
  return static_cast<int>(positive_mod(k, 3));
}

std::string to_string(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::Hex7: return "hex7";
    case SchemeKind::Slab7: return "slab7";
    case SchemeKind::Stripe3: return "stripe3";
    case SchemeKind::Stripe4: return "stripe4";
    case SchemeKind::Qmod3: return "qmod3";
  }
  return "?";
}

SchemeKind scheme_kind_from_string(const std::string& name) {
  for (SchemeKind k : {SchemeKind::Hex7, SchemeKind::Slab7, SchemeKind::Stripe3, SchemeKind::Stripe4, SchemeKind::Qmod3})
    if (to_string(k) == name) return k;
  throw std::invalid_argument("unknown coloring scheme '" + name + "'");
}

namespace {

bool is_linear(SchemeKind k) { return k == SchemeKind::Stripe3 || k == SchemeKind::Stripe4 || k == SchemeKind::Qmod3; }

// Cell width w: same color forces |dx| < w or |dx| >= 1.
Rational cell_width(SchemeKind k) {
  switch (k) {
    case SchemeKind::Stripe3: return Rational(1, 2);
    case SchemeKind::Stripe4: return Rational(1, 3);
    case SchemeKind::Qmod3: return Rational(2, 3);
    default: throw std::logic_error("not a linear scheme");
  }
}

int cell_count(SchemeKind k) { return k == SchemeKind::Stripe4 ? 4 : 3; }

}  // namespace

Rational stripe_max_h_squared(int cells, int k) {
  if (k < 1) throw std::invalid_argument("need at least one bounded dimension");
  const Rational w = Rational(1, stripe_width(cells));
  return (1 - w * w) / k;
}

void ColoringScheme::validate() const {
  slab.validate();
  if (is_linear(kind)) {
    if (slab.n != 1) throw std::invalid_argument(to_string(kind) + " lives in R x [0,h]^k (n = 1)");
    if (sgn(h_squared) <= 0) throw std::invalid_argument("bounded width must be positive");
    const Rational w = cell_width(kind);
    if (slab.k > 0 && slab.k * h_squared > 1 - w * w)
      throw std::invalid_argument(to_string(kind) + " needs k h^2 <= " + format_rational(1 - w * w));
    return;
  }
  if (exact) throw std::invalid_argument("exact sampling applies to stripe and qmod3 schemes only");
  if (slab.n != 2) throw std::invalid_argument(to_string(kind) + " needs two unbounded dimensions");
  if (!(hex_side > 0.0)) throw std::invalid_argument("hexagon side must be positive");
  if (kind == SchemeKind::Slab7 && !slab7_admissible(slab))
    throw std::invalid_argument("slab7 coloring requires 4/7 + k eps^2 < 1 (k=" + std::to_string(slab.k) +
                                ", eps=" + slab.epsilon.to_string() + ")");
}

int ColoringScheme::color(const Point& p) const {
  switch (kind) {
    case SchemeKind::Hex7:
    case SchemeKind::Slab7: return hex7_color(p, hex_side);
    case SchemeKind::Stripe3: return stripe_color(p[0], 3);
    case SchemeKind::Stripe4: return stripe_color(p[0], 4);
    case SchemeKind::Qmod3: return qmod3_color(Rational(p[0]));
  }
  return -1;
}

int ColoringScheme::color(const ExactPoint& p) const {
  switch (kind) {
    case SchemeKind::Stripe3: return stripe_color(p[0], 3);
    case SchemeKind::Stripe4: return stripe_color(p[0], 4);
    case SchemeKind::Qmod3: return qmod3_color(p[0]);
    default: return color(to_real(p));
  }
}

std::string ColoringScheme::describe() const {
  std::string s = to_string(kind) + " n=" + std::to_string(slab.n) + " k=" + std::to_string(slab.k);
  if (is_linear(kind))
    s += " h^2=" + format_rational(h_squared);
  else
    s += " eps=" + slab.epsilon.to_string() + " side=" + format_double(hex_side);
  s += exact ? " exact" : " real";
  return s;
}

// ---------------------------------------------------------------------------
// sampling

namespace {

constexpr int kBuckets = 24;
constexpr double kHistMax = 1.2;
constexpr std::size_t kMaxViolations = 8;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

struct Partial {
  std::uint64_t samples = 0;
  std::uint64_t mono = 0;
  std::uint64_t boundary = 0;
  double max_residual = 0.0;
  std::vector<VerifyBucket> hist;
  std::vector<VerifyViolation> violations;
};

std::vector<std::string> coords(const Point& p) {
  std::vector<std::string> out;
  for (int i = 0; i < p.dim(); ++i) out.push_back(format_double(p[i]));
  return out;
}

std::vector<std::string> coords(const ExactPoint& p) {
  std::vector<std::string> out;
  for (int i = 0; i < p.dim(); ++i) out.push_back(format_rational(p[i]));
  return out;
}

void add_hist(Partial& part, double dist, bool same) {
  int b = static_cast<int>(dist / kHistMax * kBuckets);
  b = std::clamp(b, 0, kBuckets - 1);
  ++part.hist[b].pairs;
  if (same) ++part.hist[b].same_color;
}

class RealSampler {
 public:
  RealSampler(const ColoringScheme& s, std::uint64_t seed) : s_(s), rng_(seed) {
    h_ = is_linear(s.kind) ? std::sqrt(s.h_squared.get_d()) : s.slab.epsilon.to_double();
    d_ = s.slab.dim();
  }

  void run(std::uint64_t count, Partial& part) {
    for (std::uint64_t i = 0; i < count; ++i) {
      Point p, q;
      draw_unit_pair(p, q);
      part.max_residual = std::max(part.max_residual, std::fabs(distance(p, q) - 1.0));
      const int cp = s_.color(p);
      const int cq = s_.color(q);
      if (cp == cq) {
        ++part.mono;
        if (part.violations.size() < kMaxViolations) part.violations.push_back({coords(p), coords(q), cp});
      }
      aux(part);
      ++part.samples;
    }
  }

 private:
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  Point base() {
    Point p(d_);
    if (is_linear(s_.kind)) {
      const double period = cell_count(s_.kind) * cell_width(s_.kind).get_d();
      p[0] = uniform(0.0, period);
    } else {
      // fundamental domain of the color-preserving sublattice
      const Point l1 = hex_center(7, 0, s_.hex_side);
      const Point l2 = hex_center(-3, 1, s_.hex_side);
      const double a = uniform(0.0, 1.0);
      const double b = uniform(0.0, 1.0);
      p[0] = a * l1[0] + b * l2[0];
      p[1] = a * l1[1] + b * l2[1];
    }
    for (int i = s_.slab.n; i < d_; ++i) p[i] = uniform(0.0, h_);
    return p;
  }

  Point direction(int dims) {
    std::normal_distribution<double> g;
    Point v(d_);
    double len = 0.0;
    do {
      for (int i = 0; i < dims; ++i) v[i] = g(rng_);
      len = norm(v);
    } while (!(len > 1e-12));
    return v * (1.0 / len);
  }

  void draw_unit_pair(Point& p, Point& q) {
    for (;;) {
      p = base();
      for (int attempt = 0; attempt < 64; ++attempt) {
        q = p + direction(d_);
        bool inside = true;
        for (int i = s_.slab.n; i < d_; ++i) inside = inside && q[i] >= 0.0 && q[i] <= h_;
        if (inside) return;
      }
    }
  }

  // Random pair at a uniform free-coordinate distance, for the histogram.
  void aux(Partial& part) {
    const Point p = base();
    const double rho = uniform(0.0, kHistMax);
    const Point q = p + rho * direction(s_.slab.n);
    add_hist(part, rho, s_.color(p) == s_.color(q));
  }

  const ColoringScheme& s_;
  std::mt19937_64 rng_;
  double h_ = 0.0;
  int d_ = 0;
};

class ExactSampler {
 public:
  ExactSampler(const ColoringScheme& s, std::uint64_t seed) : s_(s), rng_(seed) {
    k_ = s.slab.k;
    w_ = cell_width(s.kind);
    if (auto r = rational_sqrt(s.h_squared)) {
      h_lo_ = *r;
    } else {
      // rational lower bound of sqrt(h^2)
      const double approx = std::sqrt(s.h_squared.get_d());
      h_lo_ = Rational(static_cast<long>(std::floor(approx * (1L << 30))), 1L << 30);
      h_lo_.canonicalize();
      while (h_lo_ * h_lo_ > s.h_squared) h_lo_ -= Rational(1, 1L << 30);
    }
    // |d_j| <= 2 |t_j|, so a box of half-width h keeps rejection cheap
    t_box_ = h_lo_ < 1 ? h_lo_ : Rational(1);
    if (k_ > 0) {
      if (auto dy = rational_sqrt((1 - w_ * w_) / k_); dy && *dy <= h_lo_) boundary_dy_ = *dy;
    }
  }

  void run(std::uint64_t count, Partial& part) {
    for (std::uint64_t i = 0; i < count; ++i) {
      ExactPoint delta = unit_vector();
      ExactPoint p(1 + k_);
      p[0] = random_rational(-3, 3, 60);
      if (pick(4) == 0) p[0] = Rational(floor(p[0] / w_)) * w_;  // snap to a cell boundary
      for (int j = 1; j <= k_; ++j) {
        const Rational lo = sgn(delta[j]) < 0 ? Rational(-delta[j]) : Rational(0);
        const Rational hi = sgn(delta[j]) > 0 ? Rational(h_lo_ - delta[j]) : h_lo_;
        p[j] = lo + random_rational(0, 1, 64) * (hi - lo);
      }
      const ExactPoint q = p + delta;
      if (norm_squared(delta) != 1) throw std::logic_error("exact sampler produced a non-unit pair");
      const int cp = s_.color(p);
      const int cq = s_.color(q);
      if (on_boundary(p[0]) || on_boundary(q[0])) ++part.boundary;
      if (cp == cq) {
        ++part.mono;
        if (part.violations.size() < kMaxViolations) part.violations.push_back({coords(p), coords(q), cp});
      }
      aux(part);
      ++part.samples;
    }
  }

 private:
  long pick(long n) { return std::uniform_int_distribution<long>(0, n - 1)(rng_); }

  Rational random_rational(long lo, long hi, long max_den) {
    const long den = 1 + pick(max_den);
    const long num = lo * den + pick((hi - lo) * den + 1);
    Rational r(num, den);
    r.canonicalize();
    return r;
  }

  bool fits(const ExactPoint& d) const {
    for (int j = 1; j <= k_; ++j)
      if (abs(d[j]) > h_lo_) return false;
    return true;
  }

  ExactPoint unit_vector() {
    ExactPoint d(1 + k_);
    const long mode = pick(8);
    if (mode == 0) {
      d[0] = 1;  // purely along the free axis
    } else if (mode == 1 && boundary_dy_) {
      d[0] = w_;
      for (int j = 1; j <= k_; ++j) d[j] = pick(2) ? *boundary_dy_ : Rational(-*boundary_dy_);
    } else {
      // inverse stereographic projection of a random rational point
      for (;;) {
        std::vector<Rational> t(k_);
        Rational s = 0;
        for (int j = 0; j < k_; ++j) {
          t[j] = random_rational(-1, 1, 48) * t_box_;
          s += t[j] * t[j];
        }
        d[0] = (1 - s) / (1 + s);
        for (int j = 0; j < k_; ++j) d[j + 1] = 2 * t[j] / (1 + s);
        if (fits(d)) break;
      }
    }
    if (pick(2)) d[0] = -d[0];
    return d;
  }

  bool on_boundary(const Rational& x) const {
    const Rational y = x / w_;
    return y.get_den() == 1;
  }

  void aux(Partial& part) {
    const Rational x = random_rational(-3, 3, 60);
    const Rational rho = random_rational(0, 1, 120) * Rational(6, 5);
    add_hist(part, rho.get_d(), s_.color(ExactPoint{x}) == s_.color(ExactPoint{Rational(x + rho)}));
  }

  const ColoringScheme& s_;
  std::mt19937_64 rng_;
  int k_ = 0;
  Rational w_;
  Rational h_lo_;
  Rational t_box_;
  std::optional<Rational> boundary_dy_;
};

}  // namespace

VerifyReport verify_scheme(const ColoringScheme& scheme, std::uint64_t samples, std::uint64_t seed, int workers) {
  scheme.validate();
  if (workers < 1) throw std::invalid_argument("need at least one worker");
  if (scheme.exact && !is_linear(scheme.kind))
    throw std::invalid_argument("exact sampling applies to stripe and qmod3 schemes only");

  std::vector<Partial> parts(workers);
  auto work = [&](int w) {
    Partial& part = parts[w];
    part.hist.resize(kBuckets);
    for (int b = 0; b < kBuckets; ++b) {
      part.hist[b].lo = kHistMax * b / kBuckets;
      part.hist[b].hi = kHistMax * (b + 1) / kBuckets;
    }
    const std::uint64_t count = samples / workers + (static_cast<std::uint64_t>(w) < samples % workers ? 1 : 0);
    const std::uint64_t stream = splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(w) + 1));
    if (scheme.exact)
      ExactSampler(scheme, stream).run(count, part);
    else
      RealSampler(scheme, stream).run(count, part);
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }

  VerifyReport rep;
  rep.scheme = scheme.describe();
  rep.seed = seed;
  rep.workers = workers;
  rep.exact = scheme.exact;
  rep.histogram = parts[0].hist;
  for (auto& b : rep.histogram) b.pairs = b.same_color = 0;
  for (const Partial& p : parts) {
    rep.samples += p.samples;
    rep.monochromatic += p.mono;
    rep.boundary_pairs += p.boundary;
    rep.max_unit_residual = std::max(rep.max_unit_residual, p.max_residual);
    for (int b = 0; b < kBuckets; ++b) {
      rep.histogram[b].pairs += p.hist[b].pairs;
      rep.histogram[b].same_color += p.hist[b].same_color;
    }
    for (const auto& v : p.violations)
      if (rep.violations.size() < kMaxViolations) rep.violations.push_back(v);
  }
  return rep;
}

std::string VerifyReport::to_json() const {
  nlohmann::ordered_json j;
  j["scheme"] = scheme;
  j["mode"] = exact ? "exact" : "real";
  j["samples"] = samples;
  j["seed"] = seed;
  j["workers"] = workers;
  j["monochromatic"] = monochromatic;
  j["boundary_pairs"] = boundary_pairs;
  j["max_unit_residual"] = max_unit_residual;
  j["pass"] = pass();
  auto& h = j["histogram"] = nlohmann::ordered_json::array();
  for (const auto& b : histogram)
    h.push_back({{"lo", b.lo}, {"hi", b.hi}, {"pairs", b.pairs}, {"same_color", b.same_color}});
  auto& v = j["violations"] = nlohmann::ordered_json::array();
  for (const auto& x : violations) v.push_back({{"p", x.p}, {"q", x.q}, {"color", x.color}});
  return j.dump(2);
}

// ---------------------------------------------------------------------------
// exact cell geometry

namespace {

double point_segment(const Point& p, const Point& a, const Point& b) {
  const Point d = b - a;
  const double t = std::clamp(dot(p - a, d) / dot(d, d), 0.0, 1.0);
  return distance(p, a + t * d);
}

double polygon_distance(const std::array<Point, 6>& x, const std::array<Point, 6>& y) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      const Point& a = x[i];
      const Point& b = x[(i + 1) % 6];
      const Point& c = y[j];
      const Point& d = y[(j + 1) % 6];
      best = std::min({best, point_segment(a, c, d), point_segment(b, c, d), point_segment(c, a, b),
                       point_segment(d, a, b)});
    }
  return best;
}

}  // namespace

double hex_same_color_min_distance(double side, int radius) {
  const auto origin = hex_polygon(0, 0, side);
  double best = std::numeric_limits<double>::infinity();
  for (long b = -radius; b <= radius; ++b)
    for (long a = -radius; a <= radius; ++a) {
      if ((a == 0 && b == 0) || hex_cell_color(a, b) != hex_cell_color(0, 0)) continue;
      best = std::min(best, polygon_distance(origin, hex_polygon(a, b, side)));
    }
  return best;
}

double hex_cell_diameter(double side) {
  const auto poly = hex_polygon(0, 0, side);
  double best = 0.0;
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) best = std::max(best, distance(poly[i], poly[j]));
  return best;
}

}  // namespace udcert

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "udcert/geometry.hpp"

namespace udcert {

/// Side 1/sqrt(7) of the standard 7-coloring tiling.
double hex7_side();

/// Cell of the pointy-top hexagonal tiling with lattice vectors
/// (sqrt3 s, 0) and (sqrt3 s / 2, 3 s / 2). Boundary points belong to the
/// incident cell whose center is lexicographically smallest.
struct HexCell {
  long a = 0;
  long b = 0;
  Point center;
};

HexCell hex_cell(const Point& p, double side);
Point hex_center(long a, long b, double side);
std::array<Point, 6> hex_polygon(long a, long b, double side);

/// (a + 3b) mod 7; the origin's cell has color 0.
int hex_cell_color(long a, long b);

/// Color of the planar projection (first two coordinates).
int hex7_color(const Point& p, double side = hex7_side());

/// (2/sqrt 7)^2 + k eps^2 < 1, exact when eps is rational.
bool slab7_admissible(const SlabSpec& slab);
/// Throws std::invalid_argument unless n = 2 and slab7_admissible(slab).
int slab7_color(const SlabSpec& slab, const Point& p);

/// Half-open cells [j/w, (j+1)/w) colored j mod cells, with w = 2 for 3 colors
/// and w = 3 for 4 colors.
int stripe_color(const Rational& x, int cells);
int stripe_color(double x, int cells);

/// k mod 3 for the unique k with 2k/3 < x <= 2(k+1)/3.
int qmod3_color(const Rational& x);

enum class SchemeKind { Hex7, Slab7, Stripe3, Stripe4, Qmod3 };

std::string to_string(SchemeKind kind);
SchemeKind scheme_kind_from_string(const std::string& name);

struct ColoringScheme {
  SchemeKind kind = SchemeKind::Hex7;
  /// Hex/slab: n = 2. Stripes and qmod3: n = 1 with k bounded dims.
  SlabSpec slab{2, 0, Scalar(1.0)};
  double hex_side = hex7_side();
  /// Stripes and qmod3: bounded width squared, exact (h = sqrt(h_squared)).
  Rational h_squared = Rational(1, 4);
  /// Sample exact rational unit pairs (stripes and qmod3 only).
  bool exact = false;

  /// Throws when the scheme's properness condition fails.
  void validate() const;
  int color(const Point& p) const;
  int color(const ExactPoint& p) const;
  std::string describe() const;
};

/// Largest width at which the stripe scheme is proper: h^2 = 3/(4k) or 8/(9k).
Rational stripe_max_h_squared(int cells, int k);

struct VerifyBucket {
  double lo = 0.0;
  double hi = 0.0;
  std::uint64_t pairs = 0;
  std::uint64_t same_color = 0;
};

struct VerifyViolation {
  std::vector<std::string> p;
  std::vector<std::string> q;
  int color = -1;
};

struct VerifyReport {
  std::string scheme;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  int workers = 1;
  bool exact = false;
  std::uint64_t monochromatic = 0;
  std::uint64_t boundary_pairs = 0;
  /// Largest |dist - 1| over the sampled unit pairs (0 in exact mode).
  double max_unit_residual = 0.0;
  /// Same-color counts of auxiliary random pairs by free-coordinate distance.
  std::vector<VerifyBucket> histogram;
  std::vector<VerifyViolation> violations;

  bool pass() const { return monochromatic == 0; }
  std::string to_json() const;
};

/// Samples unit-distance pairs inside the scheme's space and counts those with
/// equal colors. Worker w draws from its own stream derived from `seed`; the
/// totals depend only on (samples, seed, workers).
VerifyReport verify_scheme(const ColoringScheme& scheme, std::uint64_t samples, std::uint64_t seed, int workers = 1);

/// Smallest polygon-to-polygon distance between distinct same-colored cells
/// within `radius` lattice steps of the origin cell.
double hex_same_color_min_distance(double side, int radius = 8);
/// Largest vertex-to-vertex distance inside one cell.
double hex_cell_diameter(double side);

}  // namespace udcert

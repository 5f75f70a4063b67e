#include <stdexcept>
#include <string>

#include "udcert/constructions.hpp"

namespace udcert {

RationalCycleParams rational_cycle_params(long l) {
  if (l < 1) throw std::invalid_argument("l must be a positive integer");
  RationalCycleParams p;
  p.l = l;
  p.n = 6 * l * l + 6 * l + 2;
  p.b = Rational(2 * l + 1);
  const Rational n(p.n);
  const Rational x = 1 - 1 / n;
  const Rational s = p.b / n;
  p.e = ExactPoint{x, s, s, s};
  p.e_prime = ExactPoint{x, -s, -s, -s};
  if (norm_squared(p.e) != 1 || norm_squared(p.e_prime) != 1)
    throw std::logic_error("rational cycle step is not a unit vector");
  return p;
}

UnitDistanceGraph rational_odd_cycle(long l, const Rational& epsilon) {
  if (sgn(epsilon) <= 0) throw std::invalid_argument("slab width must be positive");
  const RationalCycleParams p = rational_cycle_params(l);
  const Rational n(p.n);
  if (!(n * epsilon * epsilon > 2))
    throw std::invalid_argument("eps too small for l=" + std::to_string(l) + ": need n > 2/eps^2 (increase l)");
  if (!(p.b / n < epsilon))
    throw std::invalid_argument("eps too small for l=" + std::to_string(l) + ": need (2l+1)/n < eps (increase l)");

  UnitDistanceGraph g(SlabSpec{1, 3, Scalar(epsilon)}, NumericMode::Exact);
  ExactPoint a{Rational(0), Rational(0), Rational(0), Rational(0)};
  int prev = g.add_vertex(a, "A:0");
  for (long i = 1; i <= p.n; ++i) {
    a += (i % 2 == 1) ? p.e : p.e_prime;
    const int v = g.add_vertex(a, "A:" + std::to_string(i));
    g.add_edge(prev, v);
    prev = v;
  }
  for (long x = p.n - 2; x >= 1; --x) {
    const int v = g.add_vertex(ExactPoint{Rational(x), Rational(0), Rational(0), Rational(0)}, "axis:" + std::to_string(x));
    g.add_edge(prev, v);
    prev = v;
  }
  g.add_edge(prev, 0);

  g.metadata()["construction"] = "rational";
  g.metadata()["l"] = std::to_string(l);
  g.metadata()["n"] = std::to_string(p.n);
  g.metadata()["epsilon"] = format_rational(epsilon);
  return g;
}

}  // namespace udcert

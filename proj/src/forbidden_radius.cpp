#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "udcert/constructions.hpp"

namespace udcert {

std::string ForbiddenRadius::to_string() const {
  return std::to_string(l) + "/" + std::to_string(m) + " r=" + format_double(radius());
}

ForbiddenRadius forbidden_radius(long l, long m) {
  if (m < 3 || m % 2 == 0) throw std::invalid_argument("forbidden radius needs odd m >= 3");
  if (l <= 0 || 2 * l >= m) throw std::invalid_argument("forbidden radius needs 0 < l/m < 1/2");
  if (std::gcd(l, m) != 1) throw std::invalid_argument("l/m must be in lowest terms");
  const long double pi = std::numbers::pi_v<long double>;
  ForbiddenRadius fr;
  fr.l = l;
  fr.m = m;
  fr.r = 1.0L / (2.0L * std::sin(pi * static_cast<long double>(l) / static_cast<long double>(m)));
  return fr;
}

std::vector<ForbiddenRadius> enumerate_forbidden_radii(double r_lo, double r_hi, long max_m) {
  if (!(r_lo > 0.5)) throw std::invalid_argument("forbidden radii exceed 1/2; r_lo must be > 1/2");
  if (r_hi < r_lo) throw std::invalid_argument("r_hi < r_lo");
  if (max_m < 3) throw std::invalid_argument("max_m must be at least 3");
  // r is decreasing in q; scan each odd m over the l window of [q_lo, q_hi]
  // widened by a margin, then filter on the exact radius.
  const long double pi = std::numbers::pi_v<long double>;
  const long double q_hi = std::asin(0.5L / static_cast<long double>(r_lo)) / pi;
  const long double q_lo = std::asin(std::min(1.0L, 0.5L / static_cast<long double>(r_hi))) / pi;
  std::vector<ForbiddenRadius> out;
  for (long m = 3; m <= max_m; m += 2) {
    const long lo = std::max(1L, static_cast<long>(std::floor(q_lo * m)) - 1);
    const long hi = std::min((m - 1) / 2, static_cast<long>(std::ceil(q_hi * m)) + 1);
    for (long l = lo; l <= hi; ++l) {
      if (std::gcd(l, m) != 1) continue;
      ForbiddenRadius fr = forbidden_radius(l, m);
      if (fr.r >= r_lo && fr.r <= r_hi) out.push_back(fr);
    }
  }
  std::sort(out.begin(), out.end(), [](const ForbiddenRadius& a, const ForbiddenRadius& b) {
    if (a.r != b.r) return a.r < b.r;
    return a.m < b.m;
  });
  return out;
}

long double max_chord_residual(const ForbiddenRadius& fr) {
  const long double pi = std::numbers::pi_v<long double>;
  long double worst = 0.0L;
  auto at = [&](long j) {
    const long double a = 2.0L * pi * static_cast<long double>(fr.l * (j % fr.m)) / static_cast<long double>(fr.m);
    return std::pair{fr.r * std::cos(a), fr.r * std::sin(a)};
  };
  for (long j = 0; j < fr.m; ++j) {
    auto [x0, y0] = at(j);
    auto [x1, y1] = at(j + 1);
    worst = std::max(worst, std::fabs(std::hypot(x1 - x0, y1 - y0) - 1.0L));
  }
  return worst;
}

CircleCycle circle_odd_cycle(const Circle& circle, const ForbiddenRadius& fr, double tol, double theta0) {
  if (std::fabs(circle.radius - fr.radius()) > tol)
    throw std::invalid_argument("circle radius " + format_double(circle.radius) + " does not match forbidden radius " +
                                fr.to_string());
  CircleCycle out;
  for (long j = 0; j < fr.m; ++j) {
    // reduce the winding so large l*j keeps full angle precision
    const double angle = theta0 + 2.0 * std::numbers::pi * static_cast<double>((fr.l * j) % fr.m) / static_cast<double>(fr.m);
    out.points.push_back(circle_point(circle, angle));
  }
  for (long j = 0; j < fr.m; ++j)
    out.edges.emplace_back(static_cast<int>(j), static_cast<int>((j + 1) % fr.m));
  return out;
}

}  // namespace udcert

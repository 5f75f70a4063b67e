#include "udcert/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace udcert {

namespace {

constexpr const char* kPalette[] = {"#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4",
                                    "#42d4f4", "#f032e6", "#bfef45", "#9a6324", "#808000"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const UnitDistanceGraph& g, const Coloring& coloring,
                       const std::map<std::string, std::string>& metadata) {
  if (!coloring.empty() && static_cast<int>(coloring.size()) != g.vertex_count())
    throw std::invalid_argument("coloring size does not match the graph");
  const int dim = g.slab().dim();
  if (dim < 2) throw DimensionError("plot needs at least two coordinates");

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  double zmin = xmin, zmax = -xmin;
  for (int i = 0; i < g.vertex_count(); ++i) {
    const Point& p = g.point(i);
    xmin = std::min(xmin, p[0]);
    xmax = std::max(xmax, p[0]);
    ymin = std::min(ymin, p[1]);
    ymax = std::max(ymax, p[1]);
    if (dim > 2) {
      zmin = std::min(zmin, p[2]);
      zmax = std::max(zmax, p[2]);
    }
  }
  if (g.vertex_count() == 0) xmin = xmax = ymin = ymax = 0.0;
  const double width = 800.0;
  const double margin = 20.0;
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-9});
  const double scale = (width - 2 * margin) / span;
  const double height = std::max(2 * margin + (ymax - ymin) * scale, 2 * margin + 1.0);
  auto sx = [&](double x) { return margin + (x - xmin) * scale; };
  auto sy = [&](double y) { return height - margin - (y - ymin) * scale; };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt(width) << "\" height=\""
     << fmt(height) << "\" viewBox=\"0 0 " << fmt(width) << " " << fmt(height) << "\">\n";
  os << "<metadata>\n";
  for (const auto& [k, v] : g.metadata()) os << "  <entry key=\"" << escape(k) << "\">" << escape(v) << "</entry>\n";
  for (const auto& [k, v] : metadata) os << "  <entry key=\"" << escape(k) << "\">" << escape(v) << "</entry>\n";
  os << "</metadata>\n";
  os << "<g stroke=\"#555555\" stroke-width=\"0.6\" stroke-opacity=\"0.6\">\n";
  for (const auto& [u, v] : g.edges()) {
    const Point& a = g.point(u);
    const Point& b = g.point(v);
    os << "  <line x1=\"" << fmt(sx(a[0])) << "\" y1=\"" << fmt(sy(a[1])) << "\" x2=\"" << fmt(sx(b[0]))
       << "\" y2=\"" << fmt(sy(b[1])) << "\"/>\n";
  }
  os << "</g>\n<g stroke=\"#000000\" stroke-width=\"0.4\">\n";
  for (int i = 0; i < g.vertex_count(); ++i) {
    const Point& p = g.point(i);
    std::string fill;
    if (!coloring.empty()) {
      fill = kPalette[static_cast<std::size_t>(coloring[i]) % std::size(kPalette)];
    } else {
      double t = 0.5;
      if (dim > 2 && zmax > zmin) t = (p[2] - zmin) / (zmax - zmin);
      const int level = static_cast<int>(std::lround(220.0 - 180.0 * t));
      char buf[8];
      std::snprintf(buf, sizeof buf, "#%02x%02x%02x", level, level, level);
      fill = buf;
    }
    os << "  <circle cx=\"" << fmt(sx(p[0])) << "\" cy=\"" << fmt(sy(p[1])) << "\" r=\"3\" fill=\"" << fill
       << "\"><title>" << i << " " << escape(g.label(i)) << "</title></circle>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace udcert

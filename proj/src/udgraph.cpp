#include "udcert/udgraph.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace udcert {

using ordered_json = nlohmann::ordered_json;

UnitDistanceGraph::UnitDistanceGraph(SlabSpec slab, NumericMode mode, double tol)
    : slab_(std::move(slab)), mode_(mode), tol_(tol) {
  slab_.validate();
  if (!(tol_ > 0.0)) throw std::invalid_argument("tolerance must be positive");
}

const ExactPoint& UnitDistanceGraph::exact_point(int i) const {
  if (mode_ != NumericMode::Exact) throw std::logic_error("graph is not in exact mode");
  return exact_points_.at(i);
}

int UnitDistanceGraph::add_vertex(const Point& p, std::string label) {
  if (mode_ == NumericMode::Exact) throw std::logic_error("exact-mode graph needs exact points");
  if (p.dim() != slab_.dim()) throw DimensionError("point dimension does not match slab");
  points_.push_back(p);
  labels_.push_back(std::move(label));
  return vertex_count() - 1;
}

int UnitDistanceGraph::add_vertex(const ExactPoint& p, std::string label) {
  if (p.dim() != slab_.dim()) throw DimensionError("point dimension does not match slab");
  if (mode_ == NumericMode::Exact) exact_points_.push_back(p);
  points_.push_back(to_real(p));
  labels_.push_back(std::move(label));
  return vertex_count() - 1;
}

bool UnitDistanceGraph::add_edge(int u, int v) {
  if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
  if (u < 0 || v < 0 || u >= vertex_count() || v >= vertex_count())
    throw std::out_of_range("edge index out of range");
  Edge e = std::minmax(u, v);
  if (!edge_set_.insert(e).second) return false;
  edges_.push_back(e);
  return true;
}

bool UnitDistanceGraph::has_edge(int u, int v) const { return edge_set_.count(std::minmax(u, v)) > 0; }

std::vector<std::vector<int>> UnitDistanceGraph::adjacency() const {
  std::vector<std::vector<int>> adj(vertex_count());
  for (auto [u, v] : edges_) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

bool operator==(const UnitDistanceGraph& a, const UnitDistanceGraph& b) {
  return a.slab_ == b.slab_ && a.mode_ == b.mode_ && a.tol_ == b.tol_ && a.points_ == b.points_ &&
         a.exact_points_ == b.exact_points_ && a.edges_ == b.edges_ && a.labels_ == b.labels_ &&
         a.metadata_ == b.metadata_;
}

// ---------------------------------------------------------------------------

std::string ValidationReport::to_text() const {
  std::ostringstream os;
  os << "validation: " << (pass ? "PASS" : "FAIL") << "\n";
  if (exact_unit_edges)
    os << "  max edge residual: 0 (exact)\n";
  else
    os << "  max edge residual: " << format_double(max_residual) << " (tol " << format_double(tol) << ")\n";
  if (worst_edge >= 0) os << "  worst edge index: " << worst_edge << "\n";
  os << "  points outside slab: " << out_of_slab << "\n";
  os << "  points within " << format_double(boundary_band) << " of a slab face: " << near_boundary.size() << "\n";
  return os.str();
}

ValidationReport validate_geometry(const UnitDistanceGraph& g) {
  ValidationReport rep;
  rep.tol = g.tol();
  rep.boundary_band = g.tol();
  const bool exact = g.mode() == NumericMode::Exact;
  bool all_exact = exact;

  for (int e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.edges()[e];
    double residual;
    if (exact) {
      Rational d2 = distance_squared(g.exact_point(u), g.exact_point(v));
      if (d2 == 1) {
        residual = 0.0;
      } else {
        all_exact = false;
        residual = std::abs(std::sqrt(d2.get_d()) - 1.0);
        if (residual == 0.0) residual = std::numeric_limits<double>::denorm_min();
      }
    } else {
      residual = std::abs(distance(g.point(u), g.point(v)) - 1.0);
    }
    if (rep.worst_edge < 0 || residual > rep.max_residual) {
      rep.max_residual = residual;
      rep.worst_edge = e;
    }
  }
  rep.exact_unit_edges = all_exact;

  const SlabSpec& slab = g.slab();
  for (int i = 0; i < g.vertex_count(); ++i) {
    bool inside = exact ? slab_contains(slab, g.exact_point(i)) : slab_contains(slab, g.point(i));
    if (!inside) {
      ++rep.out_of_slab;
      continue;
    }
    if (slab.k > 0 && slab_margin(slab, g.point(i)) <= rep.boundary_band) rep.near_boundary.push_back(i);
  }

  if (exact)
    rep.pass = all_exact && rep.out_of_slab == 0;
  else
    rep.pass = rep.max_residual <= g.tol() && rep.out_of_slab == 0;
  return rep;
}

bool validate_coloring(int vertex_count, const std::vector<Edge>& edges, const Coloring& c) {
  if (static_cast<int>(c.size()) != vertex_count) throw std::invalid_argument("coloring is not total on the vertices");
  for (int x : c)
    if (x < 0) throw std::invalid_argument("coloring leaves a vertex uncolored");
  for (auto [u, v] : edges)
    if (c[u] == c[v]) return false;
  return true;
}

bool validate_coloring(const UnitDistanceGraph& g, const Coloring& c) {
  return validate_coloring(g.vertex_count(), g.edges(), c);
}

// ---------------------------------------------------------------------------
// persistence

namespace {

constexpr const char* kFormatName = "udcert-graph";
constexpr int kFormatVersion = 1;

ordered_json scalar_to_json(const Scalar& s) {
  if (s.is_exact()) return format_rational(s.exact());
  return s.to_double();
}

Scalar scalar_from_json(const ordered_json& j) {
  if (j.is_string()) return Scalar(parse_rational(j.get<std::string>()));
  if (j.is_number_integer()) return Scalar(Rational(j.get<long>()));
  if (j.is_number()) return Scalar(j.get<double>());
  throw std::runtime_error("expected a number or a \"p/q\" string");
}

}  // namespace

std::string graph_to_string(const UnitDistanceGraph& g) {
  ordered_json doc;
  doc["format"] = kFormatName;
  doc["version"] = kFormatVersion;
  doc["slab"] = {{"n", g.slab().n}, {"k", g.slab().k}, {"epsilon", scalar_to_json(g.slab().epsilon)}};
  const bool exact = g.mode() == NumericMode::Exact;
  doc["mode"] = exact ? "exact" : "real";
  doc["tol"] = g.tol();
  ordered_json points = ordered_json::array();
  for (int i = 0; i < g.vertex_count(); ++i) {
    ordered_json row = ordered_json::array();
    if (exact) {
      for (const Rational& x : g.exact_point(i)) row.push_back(format_rational(x));
    } else {
      for (double x : g.point(i)) row.push_back(x);
    }
    points.push_back(std::move(row));
  }
  doc["points"] = std::move(points);
  ordered_json edges = ordered_json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  doc["edges"] = std::move(edges);
  ordered_json labels = ordered_json::array();
  for (int i = 0; i < g.vertex_count(); ++i) labels.push_back(g.label(i));
  doc["labels"] = std::move(labels);
  ordered_json meta = ordered_json::object();
  for (const auto& [k, v] : g.metadata()) meta[k] = v;
  doc["metadata"] = std::move(meta);
  return doc.dump(1) + "\n";
}

UnitDistanceGraph graph_from_string(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(std::string("malformed graph file: ") + e.what());
  }
  try {
    if (doc.value("format", std::string(kFormatName)) != kFormatName)
      throw std::runtime_error("not a udcert graph file");
    SlabSpec slab;
    slab.n = doc.at("slab").at("n").get<int>();
    slab.k = doc.at("slab").at("k").get<int>();
    slab.epsilon = scalar_from_json(doc.at("slab").at("epsilon"));
    const std::string mode_name = doc.at("mode").get<std::string>();
    if (mode_name != "exact" && mode_name != "real") throw std::runtime_error("unknown mode '" + mode_name + "'");
    const bool exact = mode_name == "exact";
    UnitDistanceGraph g(slab, exact ? NumericMode::Exact : NumericMode::Real, doc.at("tol").get<double>());

    const auto& labels = doc.contains("labels") ? doc.at("labels") : ordered_json::array();
    const auto& points = doc.at("points");
    if (!labels.empty() && labels.size() != points.size())
      throw std::runtime_error("label count does not match point count");
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto& row = points[i];
      if (!row.is_array() || static_cast<int>(row.size()) != slab.dim())
        throw std::runtime_error("point " + std::to_string(i) + " has the wrong dimension");
      std::string label = labels.empty() ? std::string() : labels[i].get<std::string>();
      if (exact) {
        ExactPoint p(slab.dim());
        for (int c = 0; c < slab.dim(); ++c) {
          if (!row[c].is_string() && !row[c].is_number_integer())
            throw std::runtime_error("exact-mode coordinates must be \"p/q\" strings");
          p[c] = row[c].is_string() ? parse_rational(row[c].get<std::string>()) : Rational(row[c].get<long>());
        }
        g.add_vertex(p, std::move(label));
      } else {
        Point p(slab.dim());
        for (int c = 0; c < slab.dim(); ++c) p[c] = row[c].get<double>();
        g.add_vertex(p, std::move(label));
      }
    }
    for (const auto& e : doc.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw std::runtime_error("edge must be a pair of indices");
      const long u = e[0].get<long>();
      const long v = e[1].get<long>();
      if (u < 0 || v < 0 || u >= g.vertex_count() || v >= g.vertex_count())
        throw std::runtime_error("edge index out of range: [" + std::to_string(u) + ", " + std::to_string(v) + "]");
      if (!g.add_edge(static_cast<int>(u), static_cast<int>(v)))
        throw std::runtime_error("duplicate edge in graph file");
    }
    if (doc.contains("metadata"))
      for (const auto& [k, v] : doc.at("metadata").items()) g.metadata()[k] = v.get<std::string>();
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed graph file: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("malformed graph file: ") + e.what());
  }
}

void save_graph(const UnitDistanceGraph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << graph_to_string(g);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

UnitDistanceGraph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return graph_from_string(ss.str());
}

void write_dimacs(const UnitDistanceGraph& g, std::ostream& out, const std::vector<std::string>& comments) {
  std::vector<Edge> edges = g.edges();
  std::sort(edges.begin(), edges.end());
  for (const auto& c : comments) out << "c " << c << '\n';
  out << "p edge " << g.vertex_count() << ' ' << edges.size() << '\n';
  for (auto [u, v] : edges) out << "e " << u + 1 << ' ' << v + 1 << '\n';
}

void export_dimacs(const UnitDistanceGraph& g, const std::filesystem::path& path,
                   const std::vector<std::string>& comments) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_dimacs(g, out, comments);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

void save_coloring(const Coloring& c, const std::filesystem::path& path,
                   const std::map<std::string, std::string>& metadata) {
  ordered_json doc;
  doc["format"] = "udcert-coloring";
  doc["version"] = kFormatVersion;
  int colors = c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
  doc["colors_used"] = colors;
  doc["colors"] = c;
  ordered_json meta = ordered_json::object();
  for (const auto& [k, v] : metadata) meta[k] = v;
  doc["metadata"] = std::move(meta);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << doc.dump(1) << '\n';
}

Coloring load_coloring(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    ordered_json doc = ordered_json::parse(in);
    return doc.at("colors").get<Coloring>();
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed coloring file: ") + e.what());
  }
}

}  // namespace udcert

#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "udcert/geometry.hpp"

namespace udcert {

enum class NumericMode { Exact, Real };

/// Vertex -> color index (0-based).
using Coloring = std::vector<int>;

using Edge = std::pair<int, int>;

/// Points with edges declared by the construction that produced them. Edges are
/// never inferred from coordinates; validate_geometry() certifies them.
class UnitDistanceGraph {
 public:
  UnitDistanceGraph() = default;
  UnitDistanceGraph(SlabSpec slab, NumericMode mode, double tol = kDefaultTol);

  const SlabSpec& slab() const { return slab_; }
  NumericMode mode() const { return mode_; }
  double tol() const { return tol_; }
  void set_tol(double tol) { tol_ = tol; }

  int vertex_count() const { return static_cast<int>(points_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  /// Real coordinates; in exact mode these are rounded copies of exact_point().
  const Point& point(int i) const { return points_.at(i); }
  const ExactPoint& exact_point(int i) const;
  const std::vector<Edge>& edges() const { return edges_; }
  const std::string& label(int i) const { return labels_.at(i); }

  /// Free-form provenance (run configuration, tool version) persisted with the graph.
  std::map<std::string, std::string>& metadata() { return metadata_; }
  const std::map<std::string, std::string>& metadata() const { return metadata_; }

  int add_vertex(const Point& p, std::string label = {});
  int add_vertex(const ExactPoint& p, std::string label = {});
  /// Adds {u, v}; throws on self-loops and out-of-range indices. Returns false
  /// when the edge was already present.
  bool add_edge(int u, int v);
  bool has_edge(int u, int v) const;

  std::vector<std::vector<int>> adjacency() const;

  friend bool operator==(const UnitDistanceGraph& a, const UnitDistanceGraph& b);

 private:
  SlabSpec slab_;
  NumericMode mode_ = NumericMode::Real;
  double tol_ = kDefaultTol;
  std::vector<Point> points_;
  std::vector<ExactPoint> exact_points_;
  std::vector<Edge> edges_;
  std::set<Edge> edge_set_;
  std::vector<std::string> labels_;
  std::map<std::string, std::string> metadata_;
};

struct ValidationReport {
  double max_residual = 0.0;
  /// Exact mode only: every edge has squared length exactly 1.
  bool exact_unit_edges = false;
  int worst_edge = -1;
  int out_of_slab = 0;
  /// Vertices whose bounded coordinates are within `boundary_band` of a slab face.
  std::vector<int> near_boundary;
  double boundary_band = kDefaultTol;
  double tol = kDefaultTol;
  bool pass = false;

  std::string to_text() const;
};

ValidationReport validate_geometry(const UnitDistanceGraph& g);

/// True iff `c` is total on the vertices and no edge is monochromatic.
/// Throws std::invalid_argument when `c` does not cover every vertex.
bool validate_coloring(const UnitDistanceGraph& g, const Coloring& c);
bool validate_coloring(int vertex_count, const std::vector<Edge>& edges, const Coloring& c);

void save_graph(const UnitDistanceGraph& g, const std::filesystem::path& path);
UnitDistanceGraph load_graph(const std::filesystem::path& path);
std::string graph_to_string(const UnitDistanceGraph& g);
UnitDistanceGraph graph_from_string(const std::string& text);

/// DIMACS "p edge V E" with 1-based "e i j" lines in lexicographic order.
/// `comments` are emitted as leading "c " lines.
void write_dimacs(const UnitDistanceGraph& g, std::ostream& out, const std::vector<std::string>& comments = {});
void export_dimacs(const UnitDistanceGraph& g, const std::filesystem::path& path,
                   const std::vector<std::string>& comments = {});

void save_coloring(const Coloring& c, const std::filesystem::path& path,
                   const std::map<std::string, std::string>& metadata = {});
Coloring load_coloring(const std::filesystem::path& path);

}  // namespace udcert

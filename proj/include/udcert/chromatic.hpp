#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "udcert/udgraph.hpp"

namespace udcert {

/// Plain undirected graph used by the solvers.
class AdjacencyGraph {
 public:
  AdjacencyGraph() = default;
  AdjacencyGraph(int vertex_count, const std::vector<Edge>& edges);
  explicit AdjacencyGraph(const UnitDistanceGraph& g) : AdjacencyGraph(g.vertex_count(), g.edges()) {}

  int vertex_count() const { return static_cast<int>(adj_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  bool adjacent(int u, int v) const;

 private:
  std::vector<std::vector<int>> adj_;
  std::vector<Edge> edges_;
};

struct SolveBudget {
  double seconds = 600.0;
  std::optional<std::uint64_t> max_decisions;
};

enum class SolveStatus { Sat, Unsat, Timeout };

std::string to_string(SolveStatus s);

struct SolveStats {
  std::uint64_t decisions = 0;
  std::uint64_t backtracks = 0;
  std::uint64_t nodes = 0;
  std::uint64_t cache_hits = 0;
  double elapsed_seconds = 0.0;
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::Timeout;
  int k = 0;
  /// Proper coloring with colors < k; empty unless status == Sat.
  Coloring coloring;
  SolveStats stats;
};

struct SolveOptions {
  SolveBudget budget;
  /// Workers over disjoint first-branch assignments; 1 = sequential.
  int threads = 1;
  /// Remember failed partial colorings keyed by (colored set, frontier colors
  /// up to renaming) and prune on revisits.
  bool failure_cache = true;
  std::size_t cache_limit = std::size_t{1} << 22;
};

/// Size of the largest clique found by greedy extension from every vertex.
int clique_lower_bound(const AdjacencyGraph& g);
std::vector<int> greedy_clique(const AdjacencyGraph& g);

/// DSATUR greedy coloring (max saturation, then max degree, then min index).
Coloring dsatur_greedy(const AdjacencyGraph& g);

/// Exact decision: is there a proper coloring with at most k colors?
/// Backtracking over the DSATUR order with canonical color introduction; an
/// Unsat answer means the symmetry-reduced search tree was exhausted.
SolveOutcome is_k_colorable(const AdjacencyGraph& g, int k, const SolveOptions& options = {});

struct ChromaticResult {
  /// Sat when the chromatic number is determined; Timeout otherwise.
  SolveStatus status = SolveStatus::Timeout;
  int chromatic_number = -1;
  int lower_bound = 0;
  int upper_bound = 0;
  Coloring coloring;
  std::vector<int> clique;
  /// Unsat record for chromatic_number - 1 (absent for chromatic_number <= 1).
  std::optional<SolveOutcome> unsat_below;
  std::vector<SolveOutcome> runs;
};

ChromaticResult chromatic_number(const AdjacencyGraph& g, const SolveOptions& options = {});

/// Exhaustive enumeration of restricted-growth color strings; |V| <= 12.
int brute_force_chromatic(const AdjacencyGraph& g);

}  // namespace udcert

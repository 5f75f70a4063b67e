#include "udcert/chromatic.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <stdexcept>
#include <thread>
#include <unordered_set>

namespace udcert {

AdjacencyGraph::AdjacencyGraph(int vertex_count, const std::vector<Edge>& edges) : adj_(vertex_count) {
  for (auto [u, v] : edges) {
    if (u == v) throw std::invalid_argument("self-loop");
    if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count) throw std::out_of_range("edge index out of range");
    Edge e = std::minmax(u, v);
    edges_.push_back(e);
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  for (auto [u, v] : edges_) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& row : adj_) std::sort(row.begin(), row.end());
}

bool AdjacencyGraph::adjacent(int u, int v) const {
  const auto& row = adj_[u];
  return std::binary_search(row.begin(), row.end(), v);
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Sat:
      return "SAT";
    case SolveStatus::Unsat:
      return "UNSAT";
    case SolveStatus::Timeout:
      return "TIMEOUT";
  }
  return "?";
}

std::vector<int> greedy_clique(const AdjacencyGraph& g) {
  std::vector<int> best;
  for (int seed = 0; seed < g.vertex_count(); ++seed) {
    std::vector<int> cand = g.neighbors(seed);
    std::stable_sort(cand.begin(), cand.end(), [&](int a, int b) { return g.degree(a) > g.degree(b); });
    std::vector<int> clique{seed};
    for (int u : cand) {
      bool all = std::all_of(clique.begin(), clique.end(), [&](int w) { return g.adjacent(u, w); });
      if (all) clique.push_back(u);
    }
    if (clique.size() > best.size()) best = std::move(clique);
  }
  std::sort(best.begin(), best.end());
  return best;
}

int clique_lower_bound(const AdjacencyGraph& g) { return static_cast<int>(greedy_clique(g).size()); }

Coloring dsatur_greedy(const AdjacencyGraph& g) {
  const int n = g.vertex_count();
  Coloring color(n, -1);
  std::vector<std::vector<char>> seen(n);
  std::vector<int> sat(n, 0);
  for (int step = 0; step < n; ++step) {
    int v = -1;
    for (int u = 0; u < n; ++u) {
      if (color[u] >= 0) continue;
      if (v < 0 || sat[u] > sat[v] || (sat[u] == sat[v] && g.degree(u) > g.degree(v))) v = u;
    }
    int c = 0;
    while (c < static_cast<int>(seen[v].size()) && seen[v][c]) ++c;
    color[v] = c;
    for (int u : g.neighbors(v)) {
      if (static_cast<int>(seen[u].size()) <= c) seen[u].resize(c + 1, 0);
      if (!seen[u][c]) {
        seen[u][c] = 1;
        ++sat[u];
      }
    }
  }
  return color;
}

namespace {

using Clock = std::chrono::steady_clock;

enum class Result { Sat, Fail, Timeout, Aborted };

/// Mutable DSATUR search state; one search per instance.
class DsaturSearch {
 public:
  DsaturSearch(const AdjacencyGraph& g, int k, const SolveOptions& opt, Clock::time_point deadline,
               const std::atomic<bool>* stop)
      : g_(g),
        n_(g.vertex_count()),
        k_(k),
        opt_(opt),
        deadline_(deadline),
        stop_(stop),
        color_(n_, -1),
        count_(static_cast<std::size_t>(n_) * k_, 0),
        sat_(n_, 0),
        udeg_(n_, 0),
        color_uses_(std::max(k, 0), 0),
        words_((n_ + 63) / 64) {
    for (int v = 0; v < n_; ++v) udeg_[v] = g.degree(v);
  }

  /// Picks the next vertex by max saturation, max uncolored degree, min index.
  int select() const {
    int best = -1;
    for (int v = 0; v < n_; ++v) {
      if (color_[v] >= 0) continue;
      if (best < 0 || sat_[v] > sat_[best] || (sat_[v] == sat_[best] && udeg_[v] > udeg_[best])) best = v;
    }
    return best;
  }

  std::vector<int> candidates(int v) const {
    std::vector<int> out;
    const int limit = std::min(used_ + 1, k_);
    for (int c = 0; c < limit; ++c)
      if (count_[idx(v, c)] == 0) out.push_back(c);
    return out;
  }

  /// Returns false when some uncolored vertex lost its last available color.
  bool assign(int v, int c) {
    color_[v] = c;
    ++colored_;
    bool ok = true;
    if (c == used_) ++used_;
    ++color_uses_[c];
    for (int u : g_.neighbors(v)) {
      --udeg_[u];
      if (color_[u] >= 0) continue;
      if (count_[idx(u, c)]++ == 0) {
        if (++sat_[u] >= k_) ok = false;
      }
    }
    return ok;
  }

  void unassign(int v) {
    const int c = color_[v];
    for (int u : g_.neighbors(v)) {
      ++udeg_[u];
      if (color_[u] >= 0) continue;
      if (--count_[idx(u, c)] == 0) --sat_[u];
    }
    color_[v] = -1;
    --colored_;
    // colors are introduced in order and undone LIFO, so a color can only
    // run out of uses when it is the newest one
    if (--color_uses_[c] == 0) --used_;
  }

  Result run() {
    if (k_ <= 0) return n_ == 0 ? Result::Sat : Result::Fail;
    return search();
  }

  const Coloring& coloring() const { return color_; }
  SolveStats stats;

 private:
  std::size_t idx(int v, int c) const { return static_cast<std::size_t>(v) * k_ + c; }

  bool out_of_budget() {
    if (opt_.budget.max_decisions && stats.decisions >= *opt_.budget.max_decisions) return true;
    if ((stats.nodes & 255u) == 0 && Clock::now() >= deadline_) {
      timed_out_ = true;
      return true;
    }
    return timed_out_;
  }

  std::string state_key() const {
    std::string key(words_ * 8, '\0');
    for (int v = 0; v < n_; ++v)
      if (color_[v] >= 0) key[v / 8] = static_cast<char>(key[v / 8] | (1 << (v % 8)));
    std::vector<int> rename(k_, -1);
    int next = 0;
    for (int v = 0; v < n_; ++v) {
      if (color_[v] < 0) continue;
      bool frontier = false;
      for (int u : g_.neighbors(v))
        if (color_[u] < 0) {
          frontier = true;
          break;
        }
      if (!frontier) continue;
      int& r = rename[color_[v]];
      if (r < 0) r = next++;
      key.push_back(static_cast<char>(r));
    }
    return key;
  }

  Result search() {
    if (colored_ == n_) return Result::Sat;
    ++stats.nodes;
    if (stop_ && stop_->load(std::memory_order_relaxed)) return Result::Aborted;
    if (out_of_budget()) return Result::Timeout;

    std::string key;
    if (opt_.failure_cache) {
      key = state_key();
      if (failed_.count(key)) {
        ++stats.cache_hits;
        return Result::Fail;
      }
    }

    const int v = select();
    for (int c : candidates(v)) {
      ++stats.decisions;
      const bool ok = assign(v, c);
      Result r = ok ? search() : Result::Fail;
      if (r == Result::Sat) return r;
      unassign(v);
      if (r != Result::Fail) return r;
    }
    ++stats.backtracks;
    if (opt_.failure_cache && failed_.size() < opt_.cache_limit) failed_.insert(std::move(key));
    return Result::Fail;
  }

  const AdjacencyGraph& g_;
  int n_;
  int k_;
  const SolveOptions& opt_;
  Clock::time_point deadline_;
  const std::atomic<bool>* stop_;
  Coloring color_;
  std::vector<int> count_;
  std::vector<int> sat_;
  std::vector<int> udeg_;
  std::vector<int> color_uses_;
  std::size_t words_;
  int colored_ = 0;
  int used_ = 0;
  bool timed_out_ = false;
  std::unordered_set<std::string> failed_;
};

Clock::time_point deadline_from(const SolveBudget& b) {
  const double secs = std::clamp(b.seconds, 0.0, 1e7);
  return Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(secs));
}

SolveOutcome finish(Result r, int k, Coloring coloring, SolveStats stats, Clock::time_point start) {
  SolveOutcome out;
  out.k = k;
  out.stats = stats;
  out.stats.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  switch (r) {
    case Result::Sat:
      out.status = SolveStatus::Sat;
      out.coloring = std::move(coloring);
      break;
    case Result::Fail:
      out.status = SolveStatus::Unsat;
      break;
    default:
      out.status = SolveStatus::Timeout;
  }
  return out;
}

void accumulate(SolveStats& into, const SolveStats& s) {
  into.decisions += s.decisions;
  into.backtracks += s.backtracks;
  into.nodes += s.nodes;
  into.cache_hits += s.cache_hits;
}

SolveOutcome solve_parallel(const AdjacencyGraph& g, int k, const SolveOptions& options) {
  const auto start = Clock::now();
  const auto deadline = deadline_from(options.budget);
  const int n = g.vertex_count();

  // forced prefix: follow the DSATUR order while there is exactly one choice
  DsaturSearch root(g, k, options, deadline, nullptr);
  std::vector<std::pair<int, int>> prefix;
  std::vector<int> choices;
  int branch_vertex = -1;
  for (int step = 0; step < n; ++step) {
    const int v = root.select();
    auto cand = root.candidates(v);
    if (cand.empty()) return finish(Result::Fail, k, {}, root.stats, start);
    if (cand.size() > 1) {
      branch_vertex = v;
      choices = std::move(cand);
      break;
    }
    ++root.stats.decisions;
    if (!root.assign(v, cand[0])) return finish(Result::Fail, k, {}, root.stats, start);
    prefix.emplace_back(v, cand[0]);
  }
  if (branch_vertex < 0) return finish(Result::Sat, k, root.coloring(), root.stats, start);

  const int workers = std::min<int>(options.threads, static_cast<int>(choices.size()));
  std::atomic<bool> stop{false};
  std::vector<Result> results(workers, Result::Fail);
  std::vector<Coloring> colorings(workers);
  std::vector<SolveStats> stats(workers);

  auto work = [&](int w) {
    for (std::size_t i = w; i < choices.size(); i += workers) {
      DsaturSearch s(g, k, options, deadline, &stop);
      for (auto [v, c] : prefix) s.assign(v, c);
      ++s.stats.decisions;
      Result r = s.assign(branch_vertex, choices[i]) ? s.run() : Result::Fail;
      accumulate(stats[w], s.stats);
      if (r == Result::Sat) {
        colorings[w] = s.coloring();
        results[w] = r;
        stop = true;
        return;
      }
      if (r != Result::Fail) {
        results[w] = r;
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
  for (auto& t : pool) t.join();

  SolveStats total = root.stats;
  for (const auto& s : stats) accumulate(total, s);
  for (int w = 0; w < workers; ++w)
    if (results[w] == Result::Sat) return finish(Result::Sat, k, colorings[w], total, start);
  for (int w = 0; w < workers; ++w)
    if (results[w] != Result::Fail) return finish(Result::Timeout, k, {}, total, start);
  return finish(Result::Fail, k, {}, total, start);
}

}  // namespace

SolveOutcome is_k_colorable(const AdjacencyGraph& g, int k, const SolveOptions& options) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (options.threads > 1) return solve_parallel(g, k, options);
  const auto start = Clock::now();
  DsaturSearch s(g, k, options, deadline_from(options.budget), nullptr);
  Result r = s.run();
  return finish(r, k, s.coloring(), s.stats, start);
}

ChromaticResult chromatic_number(const AdjacencyGraph& g, const SolveOptions& options) {
  ChromaticResult res;
  const int n = g.vertex_count();
  if (n == 0) {
    res.status = SolveStatus::Sat;
    res.chromatic_number = 0;
    return res;
  }
  const auto deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                           std::chrono::duration<double>(std::max(0.0, options.budget.seconds)));
  auto remaining = [&] {
    SolveOptions o = options;
    o.budget.seconds = std::max(0.0, std::chrono::duration<double>(deadline - Clock::now()).count());
    return o;
  };

  res.clique = greedy_clique(g);
  res.lower_bound = static_cast<int>(res.clique.size());
  Coloring greedy = dsatur_greedy(g);
  res.upper_bound = *std::max_element(greedy.begin(), greedy.end()) + 1;

  for (int k = res.lower_bound; k < res.upper_bound; ++k) {
    SolveOutcome out = is_k_colorable(g, k, remaining());
    res.runs.push_back(out);
    if (out.status == SolveStatus::Timeout) return res;
    if (out.status == SolveStatus::Sat) {
      res.status = SolveStatus::Sat;
      res.chromatic_number = k;
      res.upper_bound = k;
      res.coloring = out.coloring;
      break;
    }
    res.lower_bound = k + 1;
    res.unsat_below = out;
  }
  if (res.status != SolveStatus::Sat) {
    res.status = SolveStatus::Sat;
    res.chromatic_number = res.upper_bound;
    res.lower_bound = res.upper_bound;
    res.coloring = greedy;
  }
  const int below = res.chromatic_number - 1;
  if (below >= 1 && (!res.unsat_below || res.unsat_below->k != below)) {
    SolveOutcome out = is_k_colorable(g, below, remaining());
    res.runs.push_back(out);
    if (out.status == SolveStatus::Unsat) res.unsat_below = out;
  }
  return res;
}

int brute_force_chromatic(const AdjacencyGraph& g) {
  const int n = g.vertex_count();
  if (n > 12) throw std::invalid_argument("brute_force_chromatic supports at most 12 vertices");
  if (n == 0) return 0;
  const auto& edges = g.edges();
  for (int k = 1; k <= n; ++k) {
    // restricted growth strings: a[0] = 0, a[i] <= max(a[0..i-1]) + 1, values < k
    std::vector<int> a(n, 0), prefix_max(n, 0);
    while (true) {
      bool proper = true;
      for (auto [u, v] : edges)
        if (a[u] == a[v]) {
          proper = false;
          break;
        }
      if (proper) return k;
      // next string in lexicographic order
      int i = n - 1;
      while (i > 0 && (a[i] == k - 1 || a[i] > prefix_max[i - 1])) --i;
      if (i == 0) break;
      ++a[i];
      prefix_max[i] = std::max(prefix_max[i - 1], a[i]);
      for (int j = i + 1; j < n; ++j) {
        a[j] = 0;
        prefix_max[j] = prefix_max[j - 1];
      }
    }
  }
  return n;
}

}  // namespace udcert

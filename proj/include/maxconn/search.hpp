#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <stop_token>
#include <string>
#include <thread>
#include <vector>

#include "maxconn/bounds.hpp"
#include "maxconn/families.hpp"
#include "maxconn/graph.hpp"
#include "maxconn/graph_io.hpp"
#include "maxconn/metrics.hpp"
#include "maxconn/rng.hpp"

namespace maxconn {

enum class SeedMode { kEmpty, kVertexTree, kEdgeTree, kDoubleTree };
enum class Restriction { kNone, kCrossLeafOnly };

struct SearchConfig {
  int n = 0;
  int d = 3;
  int min_girth = 3;
  SeedMode seed_mode = SeedMode::kEmpty;
  int seed_levels = 0;  // K of the seed tree(s)
  Restriction restriction = Restriction::kNone;
  std::uint64_t rng_seed = 1;
  long long stall_window = 2000;
  int removal_count = 1;
  int k_max = 8;
  long long max_iterations = 1'000'000;
  double time_budget_seconds = 0.0;  // 0: unlimited
  long long progress_interval = 0;   // 0: silent
  std::string checkpoint_path;
  bool check_every_addition = false;

  void validate() const {
    if (n < 1) throw std::invalid_argument("search order must be positive");
    if (d < 1 || d >= n) throw std::invalid_argument("search degree must satisfy 1 <= d < n");
    if ((static_cast<long long>(n) * d) % 2 != 0) throw std::invalid_argument("n*d must be even");
    if (min_girth < 3) throw std::invalid_argument("girth floor must be >= 3");
    if (removal_count < 1 || k_max < removal_count) throw std::invalid_argument("need 1 <= k <= k_max");
    if (stall_window < 1) throw std::invalid_argument("stall window must be positive");
    if (seed_mode != SeedMode::kEmpty && (seed_levels < 1 || d < 3)) {
      throw std::invalid_argument("tree seeds need levels >= 1 and d >= 3");
    }
    if (seed_mode == SeedMode::kDoubleTree) {
      if (seed_levels < 2 || n != odd_diameter_exact_order(d, seed_levels)) {
        throw std::invalid_argument("double-tree seed needs n = 2(d(d-1)^(K-1) - 2)/(d - 2)");
      }
    } else if (seed_mode != SeedMode::kEmpty) {
      const TreeRoot root = seed_mode == SeedMode::kVertexTree ? TreeRoot::kVertex : TreeRoot::kEdge;
      if (bethe_tree(seed_levels, d, root).order() > n) throw std::invalid_argument("seed tree larger than n");
    }
    if (restriction == Restriction::kCrossLeafOnly && seed_mode != SeedMode::kDoubleTree) {
      throw std::invalid_argument("cross-leaf restriction needs the double-tree seed");
    }
  }
};

/// Mutable graph for the search loops: adjacency lists, a bit matrix and a
/// swap-remove list of removable (non-seed) edges.
class WorkingGraph {
 public:
  WorkingGraph(int n, int d)
      : n_(n), d_(d), adj_(n), bits_(static_cast<std::size_t>(n) * n, 0), slot_(static_cast<std::size_t>(n) * n, -1),
        seen_(n, 0), queue_(n) {}

  int order() const noexcept { return n_; }
  int max_degree() const noexcept { return d_; }
  int degree(int v) const noexcept { return static_cast<int>(adj_[v].size()); }
  long long edge_count() const noexcept { return edges_; }
  bool adjacent(int u, int v) const noexcept { return bits_[index(u, v)] != 0; }
  const std::vector<int>& neighbors(int v) const noexcept { return adj_[v]; }
  const std::vector<Edge>& removable_edges() const noexcept { return removable_; }

  void add_edge(int u, int v, bool seed = false) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
    bits_[index(u, v)] = bits_[index(v, u)] = 1;
    ++edges_;
    if (!seed) {
      slot_[index(u, v)] = slot_[index(v, u)] = static_cast<int>(removable_.size());
      removable_.emplace_back(std::min(u, v), std::max(u, v));
    }
  }

  /// Removes a non-seed edge.
  void remove_edge(int u, int v) {
    const int s = slot_[index(u, v)];
    if (s < 0) throw std::logic_error("attempt to remove a seed edge or a non-edge");
    const Edge last = removable_.back();
    removable_[s] = last;
    slot_[index(last.first, last.second)] = slot_[index(last.second, last.first)] = s;
    removable_.pop_back();
    slot_[index(u, v)] = slot_[index(v, u)] = -1;
    erase(adj_[u], v);
    erase(adj_[v], u);
    bits_[index(u, v)] = bits_[index(v, u)] = 0;
    --edges_;
  }

  /// True if dist(u, v) <= limit.
  bool within(int u, int v, int limit) const {
    if (u == v) return true;
    if (limit <= 0) return false;
    ++stamp_;
    int head = 0;
    int tail = 0;
    queue_[tail++] = u;
    seen_[u] = stamp_;
    int depth = 0;
    while (head < tail && depth < limit) {
      const int level_end = tail;
      ++depth;
      while (head < level_end) {
        const int x = queue_[head++];
        for (int y : adj_[x]) {
          if (seen_[y] == stamp_) continue;
          if (y == v) return true;
          seen_[y] = stamp_;
          queue_[tail++] = y;
        }
      }
    }
    return false;
  }

  Graph snapshot() const {
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(edges_));
    for (int u = 0; u < n_; ++u) {
      for (int v : adj_[u]) {
        if (u < v) edges.emplace_back(u, v);
      }
    }
    return Graph::from_edge_list(n_, edges);
  }

 private:
  std::size_t index(int u, int v) const noexcept { return static_cast<std::size_t>(u) * n_ + v; }

  static void erase(std::vector<int>& list, int x) {
    auto it = std::find(list.begin(), list.end(), x);
    *it = list.back();
    list.pop_back();
  }

  int n_;
  int d_;
  std::vector<std::vector<int>> adj_;
  std::vector<char> bits_;
  std::vector<int> slot_;
  std::vector<Edge> removable_;
  long long edges_ = 0;
  mutable std::vector<unsigned> seen_;
  mutable std::vector<int> queue_;
  mutable unsigned stamp_ = 0;
};

struct SearchState {
  WorkingGraph graph;
  std::vector<char> leaf_side;  // 1: leaf of the first seed tree, 2: of the second
  long long target = 0;
  long long best_edgecount_seen = 0;
  long long iterations_since_improvement = 0;
};

/// Graph with the configured seed edges marked permanent.
inline SearchState initial_state(const SearchConfig& cfg) {
  SearchState s{WorkingGraph(cfg.n, cfg.d), std::vector<char>(cfg.n, 0), static_cast<long long>(cfg.n) * cfg.d / 2};
  auto place = [&](const Graph& tree, int offset, char side) {
    for (auto [u, v] : tree.edges()) s.graph.add_edge(u + offset, v + offset, true);
    for (int leaf : tree_leaves(tree, cfg.d)) s.leaf_side[leaf + offset] = side;
  };
  switch (cfg.seed_mode) {
    case SeedMode::kEmpty: break;
    case SeedMode::kVertexTree: place(bethe_tree(cfg.seed_levels, cfg.d), 0, 1); break;
    case SeedMode::kEdgeTree: place(bethe_tree(cfg.seed_levels, cfg.d, TreeRoot::kEdge), 0, 1); break;
    case SeedMode::kDoubleTree: {
      const Graph tree = bethe_tree(cfg.seed_levels, cfg.d);
      place(tree, 0, 1);
      place(tree, tree.order(), 2);
      break;
    }
  }
  s.best_edgecount_seen = s.graph.edge_count();
  return s;
}

/// The single-edge feasibility test: both ends below degree d, not yet
/// adjacent, and far enough apart that the new cycle respects the floor.
inline bool edge_check(const WorkingGraph& g, int u, int v, int d, int min_girth) {
  if (u == v || g.adjacent(u, v)) return false;
  if (g.degree(u) >= d || g.degree(v) >= d) return false;
  return !g.within(u, v, min_girth - 2);
}

inline std::vector<Edge> make_feasible_list(const SearchState& s, const SearchConfig& cfg) {
  std::vector<Edge> out;
  const auto& g = s.graph;
  for (int u = 0; u < g.order(); ++u) {
    if (g.degree(u) >= cfg.d) continue;
    for (int v = u + 1; v < g.order(); ++v) {
      if (cfg.restriction == Restriction::kCrossLeafOnly &&
          !(s.leaf_side[u] != 0 && s.leaf_side[v] != 0 && s.leaf_side[u] != s.leaf_side[v])) {
        continue;
      }
      if (edge_check(g, u, v, cfg.d, cfg.min_girth)) out.emplace_back(u, v);
    }
  }
  return out;
}

/// Decreasing degree sum; equal sums end up in uniformly random order
/// (shuffle first, then a stable sort).
inline void sort_edges(std::vector<Edge>& edges, const WorkingGraph& g, SplitMix64& rng) {
  rng.shuffle(std::span<Edge>(edges));
  std::stable_sort(edges.begin(), edges.end(), [&](const Edge& a, const Edge& b) {
    return g.degree(a.first) + g.degree(a.second) > g.degree(b.first) + g.degree(b.second);
  });
}

enum class SearchStatus { kFound, kBudgetExhausted };

struct SearchStats {
  long long iterations = 0;
  long long restarts = 0;  // times the removal count wrapped from k_max back to 1
  long long removals = 0;
  long long best_edges = 0;
  double wall_seconds = 0.0;
};

struct SearchOutcome {
  SearchStatus status = SearchStatus::kBudgetExhausted;
  std::optional<Graph> graph;
  SearchStats stats;
};

namespace detail {

inline void assert_invariants(const WorkingGraph& g, const SearchConfig& cfg) {
  const Graph snap = g.snapshot();
  for (int v = 0; v < snap.order(); ++v) {
    if (snap.degree(v) > cfg.d) throw std::logic_error("degree cap violated");
  }
  const int gi = girth(snap);
  if (gi != kInfinity && gi < cfg.min_girth) throw std::logic_error("girth floor violated");
}

}  // namespace detail

/// Degree-sum-sorted edge addition with random removals: each pass adds
/// every still-feasible edge from the sorted feasible list, stops when the
/// graph is d-regular, and otherwise deletes k random non-seed edges. k grows
/// by one after stall_window passes without a new best edge count, wraps to
/// 1 after k_max, and resets to 1 on improvement.
inline SearchOutcome stochastic_search(const SearchConfig& cfg, std::stop_token stop = {}) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };
  SearchState s = initial_state(cfg);
  SplitMix64 rng(cfg.rng_seed);
  SearchOutcome out;
  int k = cfg.removal_count;
  std::ofstream checkpoint;
  if (!cfg.checkpoint_path.empty()) checkpoint.open(cfg.checkpoint_path, std::ios::app);

  while (out.stats.iterations < cfg.max_iterations) {
    if (stop.stop_requested()) break;
    if (cfg.time_budget_seconds > 0 && (out.stats.iterations & 63) == 0 && elapsed() > cfg.time_budget_seconds) break;
    ++out.stats.iterations;

    auto feasible = make_feasible_list(s, cfg);
    sort_edges(feasible, s.graph, rng);
    for (auto [u, v] : feasible) {
      if (!edge_check(s.graph, u, v, cfg.d, cfg.min_girth)) continue;
      s.graph.add_edge(u, v);
      if (cfg.check_every_addition) detail::assert_invariants(s.graph, cfg);
    }

    if (s.graph.edge_count() > s.best_edgecount_seen) {
      s.best_edgecount_seen = s.graph.edge_count();
      s.iterations_since_improvement = 0;
      k = cfg.removal_count;
      if (checkpoint) checkpoint << encode_graph6(s.graph.snapshot()) << '\n' << std::flush;
    } else if (++s.iterations_since_improvement >= cfg.stall_window) {
      s.iterations_since_improvement = 0;
      if (k < cfg.k_max) {
        ++k;
      } else {
        k = cfg.removal_count;
        ++out.stats.restarts;
      }
    }

    if (cfg.progress_interval > 0 && out.stats.iterations % cfg.progress_interval == 0) {
      std::cerr << "iter=" << out.stats.iterations << " edges=" << s.graph.edge_count() << '/' << s.target
                << " k=" << k << " restarts=" << out.stats.restarts << '\n';
    }

    if (s.graph.edge_count() == s.target) {
      out.status = SearchStatus::kFound;
      out.graph = s.graph.snapshot();
      break;
    }

    for (int i = 0; i < k && !s.graph.removable_edges().empty(); ++i) {
      const auto& pool = s.graph.removable_edges();
      const Edge e = pool[rng.below(pool.size())];
      s.graph.remove_edge(e.first, e.second);
      ++out.stats.removals;
    }
  }
  out.stats.best_edges = s.best_edgecount_seen;
  out.stats.wall_seconds = elapsed();
  return out;
}

/// Runs independent searches on `workers` threads (stream w of the seed for
/// worker w) and returns the first find; the others are stopped.
inline SearchOutcome parallel_search(const SearchConfig& cfg, int workers) {
  cfg.validate();
  if (workers <= 1) return stochastic_search(cfg);
  std::mutex mutex;
  SearchOutcome result;
  bool have = false;
  std::stop_source stop_all;
  {
    std::vector<std::jthread> pool;
    const SplitMix64 root(cfg.rng_seed);
    for (int w = 0; w < workers; ++w) {
      SearchConfig mine = cfg;
      mine.rng_seed = root.split(static_cast<std::uint64_t>(w))();
      pool.emplace_back([&, mine] {
        auto outcome = stochastic_search(mine, stop_all.get_token());
        std::lock_guard lock(mutex);
        result.stats.iterations += outcome.stats.iterations;
        result.stats.removals += outcome.stats.removals;
        result.stats.restarts += outcome.stats.restarts;
        result.stats.best_edges = std::max(result.stats.best_edges, outcome.stats.best_edges);
        result.stats.wall_seconds = std::max(result.stats.wall_seconds, outcome.stats.wall_seconds);
        if (outcome.status == SearchStatus::kFound && !have) {
          have = true;
          result.status = SearchStatus::kFound;
          result.graph = outcome.graph;
          stop_all.request_stop();
        }
      });
    }
  }
  return result;
}

/// Girth floor to search with: the requested one, or for odd diameter with
/// the conjecture heuristic on, D + 1.
inline int heuristic_girth_floor(const BoundConstraint& c, int requested, bool use_conjecture) {
  if (use_conjecture && c.kind == ConstraintKind::kOddDiameter) return std::max(requested, c.value() + 1);
  return requested;
}

}  // namespace maxconn

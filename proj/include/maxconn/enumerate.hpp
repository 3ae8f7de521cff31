#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "maxconn/graph.hpp"
#include "maxconn/iso.hpp"

namespace maxconn {

struct EnumerationOptions {
  /// Lifts the desk-scale limits (d = 3 with n <= 18, d = 4 with n <= 12).
  bool allow_beyond_budget = false;
};

struct EnumerationStats {
  long long nodes = 0;
  long long canonical_calls = 0;
  long long emitted = 0;
};

namespace detail {

/// Canonical augmentation by vertex over connected graphs of maximum degree
/// d. The parent of a graph is obtained by deleting a vertex that keeps it
/// connected, of least degree, with the greatest cheap invariant and, among
/// ties, the greatest canonical label. A child is kept only if its new vertex
/// lies in the orbit of that vertex; siblings are generated once per orbit of
/// the parent's automorphism group on neighbour sets.
class RegularEnumerator {
 public:
  RegularEnumerator(int n, int d, int min_girth, const std::function<void(const Graph&)>& emit)
      : n_(n), d_(d), girth_(min_girth), emit_(emit), adj_(n), dist_(static_cast<std::size_t>(n) * n) {}

  EnumerationStats run() {
    if (n_ <= d_ || (n_ * d_) % 2 != 0) return stats_;
    k_ = 1;
    expand();
    return stats_;
  }

 private:
  void expand() {
    ++stats_.nodes;
    if (k_ == n_) {
      ++stats_.emitted;
      emit_(current_graph(k_));
      return;
    }
    const int r_after = n_ - k_ - 1;
    std::vector<int> open;
    int def_sum = 0;
    for (int v = 0; v < k_; ++v) {
      const int def = d_ - degree(v);
      def_sum += def;
      if (def > 0) open.push_back(v);
    }
    if (girth_ > 3) all_distances();
    std::vector<std::vector<int>> gens;
    if (k_ > 1) {
      ++stats_.canonical_calls;
      gens = canonical_labeling(current_graph(k_)).generators;
    }

    std::vector<int> chosen;
    const int s_min = std::max(1, d_ - r_after);
    const int s_max = std::min<int>(d_, static_cast<int>(open.size()));
    for (int s = s_min; s <= s_max; ++s) {
      const int child_def = def_sum + d_ - 2 * s;
      if (!deficiency_feasible(child_def, r_after)) continue;
      subsets(open, 0, s, chosen, gens, r_after);
    }
  }

  bool deficiency_feasible(int total, int r) const {
    if (r == 0) return total == 0;
    if (total <= 0 || total > d_ * r) return false;
    if (total < d_ * r - r * (r - 1)) return false;
    return (d_ * r - total) % 2 == 0;
  }

  void subsets(const std::vector<int>& open, std::size_t from, int left, std::vector<int>& chosen,
               const std::vector<std::vector<int>>& gens, int r_after) {
    if (left == 0) {
      try_child(chosen, gens, r_after);
      return;
    }
    for (std::size_t i = from; i + left <= open.size(); ++i) {
      const int v = open[i];
      bool ok = true;
      if (girth_ > 3) {
        for (int u : chosen) {
          if (dist_[static_cast<std::size_t>(u) * n_ + v] < girth_ - 2) {
            ok = false;
            break;
          }
        }
      }
      if (!ok) continue;
      chosen.push_back(v);
      subsets(open, i + 1, left - 1, chosen, gens, r_after);
      chosen.pop_back();
    }
  }

  // True if no automorphism image of the set is numerically smaller as a bitmask.
  static bool least_in_orbit(std::uint64_t mask, const std::vector<std::vector<int>>& gens) {
    if (gens.empty()) return true;
    std::vector<std::uint64_t> orbit{mask};
    for (std::size_t head = 0; head < orbit.size(); ++head) {
      for (const auto& g : gens) {
        std::uint64_t image = 0;
        for (std::uint64_t m = orbit[head]; m; m &= m - 1) image |= std::uint64_t{1} << g[std::countr_zero(m)];
        if (image < mask) return false;
        if (std::find(orbit.begin(), orbit.end(), image) == orbit.end()) orbit.push_back(image);
      }
    }
    return true;
  }

  void try_child(const std::vector<int>& S, const std::vector<std::vector<int>>& gens, int r_after) {
    // Every remaining deficiency must be absorbable by the r_after vertices still to come.
    for (int v = 0; v < k_; ++v) {
      const int def = d_ - degree(v) - (std::find(S.begin(), S.end(), v) != S.end() ? 1 : 0);
      if (def > r_after) return;
    }
    std::uint64_t mask = 0;
    for (int v : S) mask |= std::uint64_t{1} << v;
    if (!least_in_orbit(mask, gens)) return;

    const int w = k_;
    for (int v : S) {
      adj_[v].push_back(w);
      adj_[w].push_back(v);
    }
    ++k_;
    if (accept(w)) expand();
    --k_;
    for (int v : S) adj_[v].pop_back();
    adj_[w].clear();
  }

  bool accept(int w) {
    const int m = k_;
    const auto cut = cut_vertices(m);
    const int s = degree(w);
    std::vector<int> cands;
    for (int v = 0; v < m; ++v) {
      if (cut[v]) continue;
      if (degree(v) < s) return false;
      if (degree(v) == s) cands.push_back(v);
    }
    if (cands.size() == 1) return true;
    std::vector<long long> inv(m, -1);
    long long best = -1;
    for (int v : cands) {
      inv[v] = invariant(v);
      best = std::max(best, inv[v]);
    }
    if (inv[w] < best) return false;
    int ties = 0;
    for (int v : cands) ties += inv[v] == best;
    if (ties == 1) return true;
    ++stats_.canonical_calls;
    const auto r = canonical_labeling(current_graph(m));
    int pick = -1;
    for (int v : cands) {
      if (inv[v] == best && (pick < 0 || r.form.labeling[v] > r.form.labeling[pick])) pick = v;
    }
    return r.orbits[pick] == r.orbits[w];
  }

  // Neighbour-degree sum and number of vertices at distance two.
  long long invariant(int v) const {
    long long nsum = 0;
    std::uint64_t ball = std::uint64_t{1} << v;
    std::uint64_t ring = 0;
    for (int u : adj_[v]) {
      nsum += degree(u);
      ball |= std::uint64_t{1} << u;
    }
    for (int u : adj_[v]) {
      for (int x : adj_[u]) ring |= std::uint64_t{1} << x;
    }
    ring &= ~ball;
    return nsum * 64 + std::popcount(ring);
  }

  std::vector<char> cut_vertices(int m) const {
    std::vector<char> cut(m, 0);
    std::vector<int> disc(m, -1);
    std::vector<int> low(m, 0);
    int timer = 0;
    // Iterative DFS from vertex 0 (the graph is connected).
    struct Frame {
      int v;
      int parent;
      std::size_t next;
      int children;
    };
    std::vector<Frame> stack;
    stack.push_back({0, -1, 0, 0});
    disc[0] = low[0] = timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.next < adj_[f.v].size()) {
        const int u = adj_[f.v][f.next++];
        if (u == f.parent) continue;
        if (disc[u] >= 0) {
          low[f.v] = std::min(low[f.v], disc[u]);
        } else {
          disc[u] = low[u] = timer++;
          ++f.children;
          stack.push_back({u, f.v, 0, 0});
        }
      } else {
        const Frame done = f;
        stack.pop_back();
        if (!stack.empty()) {
          Frame& p = stack.back();
          low[p.v] = std::min(low[p.v], low[done.v]);
          if (p.parent >= 0 && low[done.v] >= disc[p.v]) cut[p.v] = 1;
        } else if (done.children > 1) {
          cut[done.v] = 1;
        }
      }
    }
    return cut;
  }

  void all_distances() {
    std::vector<int> queue(k_);
    for (int s = 0; s < k_; ++s) {
      int* row = &dist_[static_cast<std::size_t>(s) * n_];
      std::fill(row, row + k_, 1 << 20);
      row[s] = 0;
      int head = 0;
      int tail = 0;
      queue[tail++] = s;
      while (head < tail) {
        const int x = queue[head++];
        for (int y : adj_[x]) {
          if (row[y] > row[x] + 1) {
            row[y] = row[x] + 1;
            queue[tail++] = y;
          }
        }
      }
    }
  }

  int degree(int v) const { return static_cast<int>(adj_[v].size()); }

  Graph current_graph(int m) const {
    std::vector<Edge> edges;
    for (int u = 0; u < m; ++u) {
      for (int v : adj_[u]) {
        if (u < v) edges.emplace_back(u, v);
      }
    }
    return Graph::from_edge_list(m, edges);
  }

  int n_;
  int d_;
  int girth_;
  const std::function<void(const Graph&)>& emit_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> dist_;
  int k_ = 0;
  EnumerationStats stats_;
};

}  // namespace detail

/// Every connected d-regular graph on n vertices with girth >= min_girth,
/// exactly once up to isomorphism.
inline EnumerationStats enumerate_regular(int n, int d, int min_girth, const std::function<void(const Graph&)>& emit,
                                          const EnumerationOptions& opt = {}) {
  if (d < 1 || n < 1 || min_girth < 3) throw std::invalid_argument("enumerate_regular needs n, d >= 1 and girth >= 3");
  if (n > 64) throw std::invalid_argument("enumerate_regular supports n <= 64");
  const bool in_budget = (d == 3 && n <= 18) || (d == 4 && n <= 12);
  if (!in_budget && !opt.allow_beyond_budget) {
    throw std::invalid_argument("enumerate_regular limited to d=3 with n<=18 or d=4 with n<=12 (got d=" +
                                std::to_string(d) + ", n=" + std::to_string(n) + ")");
  }
  return detail::RegularEnumerator(n, d, min_girth, emit).run();
}

inline std::vector<Graph> enumerate_regular_list(int n, int d, int min_girth, const EnumerationOptions& opt = {}) {
  std::vector<Graph> out;
  enumerate_regular(n, d, min_girth, [&](const Graph& g) { out.push_back(g); }, opt);
  return out;
}

}  // namespace maxconn

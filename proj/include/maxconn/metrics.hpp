#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "maxconn/graph.hpp"

namespace maxconn {

/// Breadth-first distances from `source`; unreachable vertices get kInfinity.
inline std::vector<int> bfs_distances(const Graph& g, int source) {
  std::vector<int> dist(g.order(), kInfinity);
  std::vector<int> queue;
  queue.reserve(g.order());
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int u = queue[head];
    for (int w : g.neighbors(u)) {
      if (dist[w] == kInfinity) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

/// Length of a shortest cycle, or kInfinity for a forest.
///
/// One BFS per root; a non-tree edge (u, w) met while scanning closes a
/// closed walk through the root of length dist[u] + dist[w] + 1, and the
/// minimum of these over all roots is exactly the girth. O(n * m).
inline int girth(const Graph& g) {
  const int n = g.order();
  int best = kInfinity;
  std::vector<int> dist(n), parent(n), queue;
  queue.reserve(n);
  for (int root = 0; root < n; ++root) {
    std::fill(dist.begin(), dist.end(), -1);
    queue.clear();
    dist[root] = 0;
    parent[root] = -1;
    queue.push_back(root);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int u = queue[head];
      // Any cycle closed from here has length >= 2 * dist[u].
      if (best != kInfinity && 2 * dist[u] >= best) break;
      for (int w : g.neighbors(u)) {
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          queue.push_back(w);
        } else if (w != parent[u]) {
          best = std::min(best, dist[u] + dist[w] + 1);
        }
      }
    }
  }
  return best;
}

/// Eccentricity of `v`, kInfinity when some vertex is unreachable.
inline int eccentricity(const Graph& g, int v) {
  const auto dist = bfs_distances(g, v);
  return *std::max_element(dist.begin(), dist.end());
}

/// Maximum BFS eccentricity; kInfinity when disconnected, 0 for n <= 1.
inline int diameter(const Graph& g) {
  int diam = 0;
  for (int v = 0; v < g.order(); ++v) {
    diam = std::max(diam, eccentricity(g, v));
    if (diam == kInfinity) break;
  }
  return diam;
}

inline bool is_connected(const Graph& g) {
  if (g.order() == 0) return true;
  const auto dist = bfs_distances(g, 0);
  return std::none_of(dist.begin(), dist.end(), [](int d) { return d == kInfinity; });
}

/// 2-colouring by BFS over every component. Colour 0/1 per vertex.
inline std::vector<int> two_coloring(const Graph& g, bool* ok) {
  std::vector<int> color(g.order(), -1);
  std::vector<int> queue;
  *ok = true;
  for (int s = 0; s < g.order(); ++s) {
    if (color[s] >= 0) continue;
    color[s] = 0;
    queue.assign(1, s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int u = queue[head];
      for (int w : g.neighbors(u)) {
        if (color[w] < 0) {
          color[w] = 1 - color[u];
          queue.push_back(w);
        } else if (color[w] == color[u]) {
          *ok = false;
        }
      }
    }
  }
  return color;
}

inline bool is_bipartite(const Graph& g) {
  bool ok = true;
  two_coloring(g, &ok);
  return ok;
}

struct GraphMetrics {
  std::vector<int> degree_sequence;  // ascending
  bool is_regular = false;
  int degree = -1;                   // valid when is_regular
  int girth = kInfinity;
  int diameter = kInfinity;
  bool is_connected = false;
  bool is_bipartite = false;
};

inline GraphMetrics metrics(const Graph& g) {
  GraphMetrics m;
  m.degree_sequence = g.degree_sequence();
  m.degree = g.regular_degree();
  m.is_regular = m.degree >= 0;
  m.girth = girth(g);
  m.diameter = diameter(g);
  m.is_connected = is_connected(g);
  m.is_bipartite = is_bipartite(g);
  return m;
}

/// "inf" for kInfinity, the decimal value otherwise.
inline std::string extent_to_string(int value) {
  return value == kInfinity ? std::string("inf") : std::to_string(value);
}

}  // namespace maxconn

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "maxconn/field.hpp"
#include "maxconn/graph.hpp"

namespace maxconn {

/// K_{d+1}.
inline Graph complete_graph(int d) {
  if (d < 2) throw std::invalid_argument("complete_graph needs d >= 2");
  std::vector<Edge> edges;
  for (int u = 0; u <= d; ++u) {
    for (int v = u + 1; v <= d; ++v) edges.emplace_back(u, v);
  }
  return Graph::from_edge_list(d + 1, edges);
}

/// K_{d,d}; sides are 0..d-1 and d..2d-1.
inline Graph complete_bipartite(int d) {
  if (d < 2) throw std::invalid_argument("complete_bipartite needs d >= 2");
  std::vector<Edge> edges;
  for (int u = 0; u < d; ++u) {
    for (int v = 0; v < d; ++v) edges.emplace_back(u, d + v);
  }
  return Graph::from_edge_list(2 * d, edges);
}

/// K_{d,d} minus the matching {i, d+i}, plus vertex 2d joined to side one
/// and vertex 2d+1 joined to side two.
inline Graph modified_bipartite(int d) {
  if (d < 3) throw std::invalid_argument("modified_bipartite needs d >= 3");
  std::vector<Edge> edges;
  for (int u = 0; u < d; ++u) {
    for (int v = 0; v < d; ++v) {
      if (u != v) edges.emplace_back(u, d + v);
    }
    edges.emplace_back(u, 2 * d);
    edges.emplace_back(d + u, 2 * d + 1);
  }
  return Graph::from_edge_list(2 * d + 2, edges);
}

enum class TreeRoot { kVertex, kEdge };

/// Bethe tree with K levels, numbered breadth first from the root (or from
/// the two ends 0 and 1 of the root edge).
inline Graph bethe_tree(int K, int d, TreeRoot root = TreeRoot::kVertex) {
  if (K < 1 || d < 3) throw std::invalid_argument("bethe_tree needs K >= 1, d >= 3");
  std::vector<Edge> edges;
  std::vector<int> frontier;
  int next = 0;
  if (root == TreeRoot::kVertex) {
    frontier.push_back(next++);
    for (int level = 1; level < K; ++level) {
      std::vector<int> grown;
      for (int v : frontier) {
        const int children = level == 1 ? d : d - 1;
        for (int c = 0; c < children; ++c) {
          edges.emplace_back(v, next);
          grown.push_back(next++);
        }
      }
      frontier = std::move(grown);
    }
  } else {
    frontier = {0, 1};
    next = 2;
    edges.emplace_back(0, 1);
    for (int level = 1; level < K; ++level) {
      std::vector<int> grown;
      for (int v : frontier) {
        for (int c = 0; c < d - 1; ++c) {
          edges.emplace_back(v, next);
          grown.push_back(next++);
        }
      }
      frontier = std::move(grown);
    }
  }
  return Graph::from_edge_list(next, edges);
}

/// Vertices of a Bethe tree that are not yet at degree d.
inline std::vector<int> tree_leaves(const Graph& tree, int d) {
  std::vector<int> out;
  for (int v = 0; v < tree.order(); ++v) {
    if (tree.degree(v) < d) out.push_back(v);
  }
  return out;
}

namespace detail {

inline Graph incidence_graph(const FiniteField& f, const std::vector<ProjectiveTriple>& lines,
                             const std::vector<ProjectiveTriple>& points) {
  const int m = static_cast<int>(lines.size());
  std::vector<Edge> edges;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < static_cast<int>(points.size()); ++j) {
      if (lines[i].dot(f, points[j]) == 0) edges.emplace_back(i, m + j);
    }
  }
  return Graph::from_edge_list(m + static_cast<int>(points.size()), edges);
}

}  // namespace detail

/// Point-line incidence graph of PG(2,q): lines first, then points, each in
/// lexicographic order of their normalized triples.
inline Graph pg_incidence_graph(int q) {
  if (!prime_power(q)) throw std::invalid_argument(std::to_string(q) + " is not a prime power");
  if (q > 32) throw std::invalid_argument("pg_incidence_graph needs q <= 32");
  const auto f = FiniteField::of_order(q);
  const auto triples = projective_triples(f);
  return detail::incidence_graph(f, triples, triples);
}

/// Triples (1,b,c) with (b,c) != (0,0), lexicographic.
inline std::vector<ProjectiveTriple> pg_minus_triples(const FiniteField& f) {
  std::vector<ProjectiveTriple> out;
  for (int b = 0; b < f.order(); ++b) {
    for (int c = 0; c < f.order(); ++c) {
      if (b != 0 || c != 0) out.push_back({{1, b, c}});
    }
  }
  return out;
}

/// Incidence graph restricted to lines and points of the form (1,b,c) with
/// (b,c) nonzero: q-regular on 2q^2 - 2 vertices, diameter 4.
inline Graph pg_minus_graph(int q) {
  if (!prime_power(q)) throw std::invalid_argument(std::to_string(q) + " is not a prime power");
  if (q < 3 || q > 32) throw std::invalid_argument("pg_minus_graph needs 3 <= q <= 32");
  const auto f = FiniteField::of_order(q);
  const auto triples = pg_minus_triples(f);
  return detail::incidence_graph(f, triples, triples);
}

}  // namespace maxconn

#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace maxconn {

/// Sentinel used by metric functions for an unbounded girth (forest) or
/// diameter (disconnected graph).
inline constexpr int kInfinity = std::numeric_limits<int>::max();

using Edge = std::pair<int, int>;

class GraphError : public std::invalid_argument {
 public:
  enum class Kind { kBadOrder, kOutOfRange, kSelfLoop, kDuplicateEdge };

  GraphError(Kind kind, const std::string& what)
      : std::invalid_argument(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Square 0/1 matrix packed in 64-bit words, one padded row per vertex.
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(int n)
      : n_(n), words_((n + 63) / 64), bits_(static_cast<std::size_t>(n) * words_, 0) {}

  int dimension() const noexcept { return n_; }
  int words_per_row() const noexcept { return words_; }

  bool test(int r, int c) const noexcept {
    return (bits_[index(r, c)] >> (c & 63)) & 1U;
  }
  void set(int r, int c) noexcept { bits_[index(r, c)] |= std::uint64_t{1} << (c & 63); }
  void reset(int r, int c) noexcept { bits_[index(r, c)] &= ~(std::uint64_t{1} << (c & 63)); }

  std::span<const std::uint64_t> row(int r) const noexcept {
    return {bits_.data() + static_cast<std::size_t>(r) * words_, static_cast<std::size_t>(words_)};
  }

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t index(int r, int c) const noexcept {
    return static_cast<std::size_t>(r) * words_ + static_cast<std::size_t>(c >> 6);
  }

  int n_ = 0;
  int words_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// Undirected simple graph on vertices 0..n-1.
///
/// Immutable once built. Neighbor lists are sorted ascending, the edge list
/// holds each edge once as (u, v) with u < v in lexicographic order, and a
/// bit matrix mirrors the adjacency for constant-time edge queries.
class Graph {
 public:
  Graph() = default;

  /// Validates and builds a graph. Rejects endpoints outside [0, n),
  /// self-loops and repeated edges (in either orientation).
  static Graph from_edge_list(int n, std::span<const Edge> edges) {
    if (n < 0) {
      throw GraphError(GraphError::Kind::kBadOrder, "vertex count must be non-negative");
    }
    Graph g(n);
    for (auto [u, v] : edges) {
      if (u < 0 || v < 0 || u >= n || v >= n) {
        throw GraphError(GraphError::Kind::kOutOfRange,
                         "edge (" + std::to_string(u) + "," + std::to_string(v) +
                             ") has an endpoint outside [0," + std::to_string(n) + ")");
      }
      if (u == v) {
        throw GraphError(GraphError::Kind::kSelfLoop,
                         "self-loop at vertex " + std::to_string(u));
      }
      if (g.matrix_.test(u, v)) {
        throw GraphError(GraphError::Kind::kDuplicateEdge,
                         "duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
      }
      g.matrix_.set(u, v);
      g.matrix_.set(v, u);
      g.adjacency_[u].push_back(v);
      g.adjacency_[v].push_back(u);
    }
    g.finish();
    return g;
  }

  static Graph from_edge_list(int n, std::initializer_list<Edge> edges) {
    return from_edge_list(n, std::span<const Edge>(edges.begin(), edges.size()));
  }

  int order() const noexcept { return n_; }
  std::size_t size() const noexcept { return edges_.size(); }

  std::span<const int> neighbors(int v) const noexcept { return adjacency_[v]; }
  int degree(int v) const noexcept { return static_cast<int>(adjacency_[v].size()); }
  bool adjacent(int u, int v) const noexcept { return matrix_.test(u, v); }

  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const BitMatrix& matrix() const noexcept { return matrix_; }

  /// Returns the isomorphic copy in which vertex v is renamed perm[v].
  Graph relabeled(std::span<const int> perm) const {
    std::vector<Edge> mapped;
    mapped.reserve(edges_.size());
    for (auto [u, v] : edges_) mapped.emplace_back(perm[u], perm[v]);
    return from_edge_list(n_, mapped);
  }

  std::vector<int> degree_sequence() const {
    std::vector<int> seq(n_);
    for (int v = 0; v < n_; ++v) seq[v] = degree(v);
    std::sort(seq.begin(), seq.end());
    return seq;
  }

  /// Degree d when every vertex has degree d, -1 otherwise (and for n == 0).
  int regular_degree() const noexcept {
    if (n_ == 0) return -1;
    const int d = degree(0);
    for (int v = 1; v < n_; ++v) {
      if (degree(v) != d) return -1;
    }
    return d;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  explicit Graph(int n) : n_(n), adjacency_(n), matrix_(n) {}

  void finish() {
    for (int v = 0; v < n_; ++v) {
      auto& list = adjacency_[v];
      std::sort(list.begin(), list.end());
      for (int w : list) {
        if (v < w) edges_.emplace_back(v, w);
      }
    }
  }

  int n_ = 0;
  std::vector<std::vector<int>> adjacency_;
  std::vector<Edge> edges_;
  BitMatrix matrix_;
};

}  // namespace maxconn

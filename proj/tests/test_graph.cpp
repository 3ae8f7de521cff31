#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "maxconn/families.hpp"
#include "maxconn/graph.hpp"
#include "maxconn/graph_io.hpp"
#include "maxconn/metrics.hpp"
#include "test_util.hpp"

using namespace maxconn;

namespace {

// All-pairs shortest paths by Floyd-Warshall.
int floyd_diameter(const Graph& g) {
  const int n = g.order();
  const int inf = 1 << 20;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (int v = 0; v < n; ++v) d[v][v] = 0;
  for (auto [u, v] : g.edges()) d[u][v] = d[v][u] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  int best = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) best = std::max(best, d[i][j]);
  return best >= inf ? kInfinity : best;
}

// Shortest cycle found by extending simple paths from their least vertex.
void extend(const Graph& g, int root, int v, std::vector<char>& on, int len, int& best) {
  for (int w : g.neighbors(v)) {
    if (w == root && len >= 3) best = std::min(best, len);
    if (w <= root || on[w] || len + 1 >= best) continue;
    on[w] = 1;
    extend(g, root, w, on, len + 1, best);
    on[w] = 0;
  }
}

int dfs_girth(const Graph& g) {
  int best = kInfinity;
  std::vector<char> on(g.order(), 0);
  for (int r = 0; r < g.order(); ++r) {
    on[r] = 1;
    extend(g, r, r, on, 1, best);
    on[r] = 0;
  }
  return best;
}

}  // namespace

TEST(GraphCore, RejectsBadEdges) {
  EXPECT_THROW(Graph::from_edge_list(3, {{0, 0}}), GraphError);
  EXPECT_THROW(Graph::from_edge_list(3, {{0, 3}}), GraphError);
  EXPECT_THROW(Graph::from_edge_list(3, {{0, 1}, {1, 0}}), GraphError);
  try {
    Graph::from_edge_list(3, {{1, 1}});
  } catch (const GraphError& e) {
    EXPECT_EQ(e.kind(), GraphError::Kind::kSelfLoop);
  }
}

TEST(GraphCore, EdgesAreSortedAndQueryable) {
  auto g = Graph::from_edge_list(4, {{3, 1}, {0, 2}, {2, 1}});
  ASSERT_EQ(g.size(), 3u);
  EXPECT_EQ(g.edges()[0], Edge(0, 2));
  EXPECT_EQ(g.edges()[2], Edge(1, 3));
  EXPECT_TRUE(g.adjacent(1, 3));
  EXPECT_FALSE(g.adjacent(0, 3));
  EXPECT_EQ(g.degree(1), 2);
  EXPECT_EQ(g.regular_degree(), -1);
}

TEST(Graph6, KnownEncodings) {
  // Standard examples of the format.
  EXPECT_EQ(encode_graph6(complete_graph(2)), "Bw");
  EXPECT_EQ(encode_graph6(complete_graph(3)), "C~");
  EXPECT_EQ(encode_graph6(Graph::from_edge_list(0, {})), "?");
  EXPECT_EQ(encode_graph6(testutil::fixture("petersen")), "IheA@GUAo");
  auto big = Graph::from_edge_list(100, {{0, 99}});
  EXPECT_EQ(encode_graph6(big).substr(0, 4), std::string("~?@c"));
}

TEST(Graph6, RoundTripRandom) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = static_cast<int>(rng() % 101);
    const double p = (rng() % 100) / 100.0;
    auto g = testutil::random_graph(n, p, rng);
    EXPECT_EQ(decode_graph6(encode_graph6(g)), g);
  }
}

TEST(Graph6, RejectsMalformed) {
  auto kind_of = [](const std::string& s) {
    try {
      decode_graph6(s);
    } catch (const FormatError& e) {
      return e.kind();
    }
    ADD_FAILURE() << "accepted '" << s << "'";
    return FormatError::Kind::kBadEdgeList;
  };
  EXPECT_EQ(kind_of(""), FormatError::Kind::kMalformedHeader);
  EXPECT_EQ(kind_of("B\x01"), FormatError::Kind::kNonPrintable);
  EXPECT_EQ(kind_of("Bww"), FormatError::Kind::kLengthMismatch);
  EXPECT_EQ(kind_of("Bx"), FormatError::Kind::kTrailingBits);
  EXPECT_EQ(decode_graph6(">>graph6<<Bw\n"), complete_graph(2));
}

TEST(EdgeList, ReadWrite) {
  std::istringstream in("# a triangle\n3 3\n0 1\n1 2\n2 0\n");
  auto g = read_edge_list(in);
  EXPECT_EQ(g, complete_graph(2));
  std::ostringstream out;
  write_edge_list(out, g);
  std::istringstream back(out.str());
  EXPECT_EQ(read_edge_list(back), g);
  std::istringstream bad("3 2\n0 1\n");
  EXPECT_THROW(read_edge_list(bad), FormatError);
}

TEST(Metrics, NamedGraphs) {
  EXPECT_EQ(girth(testutil::fixture("petersen")), 5);
  EXPECT_EQ(girth(testutil::fixture("heawood")), 6);
  EXPECT_EQ(girth(testutil::fixture("tutte_coxeter")), 8);
  EXPECT_EQ(girth(testutil::path(5)), kInfinity);
  EXPECT_EQ(diameter(modified_bipartite(3)), 3);
  EXPECT_EQ(diameter(testutil::fixture("desargues")), 5);
  EXPECT_EQ(diameter(complete_graph(5)), 1);

  for (const char* name : {"pappus", "mobius_kantor"}) {
    auto m = metrics(testutil::fixture(name));
    EXPECT_EQ(m.degree, 3) << name;
    EXPECT_EQ(m.girth, 6) << name;
    EXPECT_EQ(m.diameter, 4) << name;
    EXPECT_TRUE(m.is_bipartite) << name;
  }
  auto p2 = metrics(testutil::path(2));
  EXPECT_EQ(p2.girth, kInfinity);
  EXPECT_EQ(p2.diameter, 1);
  EXPECT_EQ(extent_to_string(p2.girth), "inf");
}

TEST(Metrics, DisconnectedIsInfinite) {
  auto g = Graph::from_edge_list(4, {{0, 1}, {2, 3}});
  EXPECT_EQ(diameter(g), kInfinity);
  EXPECT_FALSE(is_connected(g));
  EXPECT_TRUE(is_bipartite(g));
}

TEST(Metrics, DiameterMatchesFloydWarshall) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 32);
    auto g = testutil::random_graph(n, 0.05 + (rng() % 40) / 100.0, rng);
    EXPECT_EQ(diameter(g), floyd_diameter(g));
  }
}

TEST(Metrics, GirthMatchesCycleEnumeration) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 12);
    auto g = testutil::random_graph(n, 0.1 + (rng() % 40) / 100.0, rng);
    EXPECT_EQ(girth(g), dfs_girth(g)) << encode_graph6(g);
  }
}

TEST(Metrics, GirthAtMostTwiceDiameterPlusOne) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    auto g = testutil::random_graph(2 + static_cast<int>(rng() % 20), 0.3, rng);
    if (!is_connected(g) || girth(g) == kInfinity) continue;
    EXPECT_LE(girth(g), 2 * diameter(g) + 1);
  }
}

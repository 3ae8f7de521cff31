// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any
// gating criterion fails.

#include <unistd.h>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "maxconn/bounds.hpp"
#include "maxconn/catalog.hpp"
#include "maxconn/double_tree.hpp"
#include "maxconn/enumerate.hpp"
#include "maxconn/families.hpp"
#include "maxconn/graph_io.hpp"
#include "maxconn/iso.hpp"
#include "maxconn/search.hpp"
#include "maxconn/spectra.hpp"

using namespace maxconn;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("failed: " + what);
    }
  }
  void note(const std::string& what) { notes.push_back(what); }
};

std::string fmt(const char* format, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Graph fixture(const std::string& name) {
  std::ifstream in(std::string(MAXCONN_TEST_DATA) + "/" + name + ".g6");
  std::string line;
  std::getline(in, line);
  return decode_graph6(line);
}

Graph cube() {
  std::vector<Edge> edges;
  for (int v = 0; v < 8; ++v)
    for (int bit = 1; bit < 8; bit <<= 1)
      if (v < (v ^ bit)) edges.emplace_back(v, v ^ bit);
  return Graph::from_edge_list(8, edges);
}

// Odd-D attained graphs collected across criteria, for the order-formula property.
std::vector<std::pair<Graph, BoundConstraint>> g_odd_attained;

void remember_if_odd_attained(const Graph& g, const BoundConstraint& c) {
  if (c.kind == ConstraintKind::kOddDiameter && certify_maximal(g, c).attained) g_odd_attained.emplace_back(g, c);
}

// ---- 1 ----------------------------------------------------------------------

Outcome bound_tables() {
  Outcome o;
  int entries = 0;
  int mismatches = 0;
  double worst = 0;
  const auto t0 = std::chrono::steady_clock::now();
  for (bool dia : {true, false}) {
    std::ifstream in(std::string(MAXCONN_TEST_DATA) + (dia ? "/table1_diameter.txt" : "/table1_girth.txt"));
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::istringstream fields(line);
      int row = 0;
      fields >> row;
      for (int d = 3; d <= 11; ++d) {
        double printed = 0;
        fields >> printed;
        const auto c = dia ? BoundConstraint::diameter(d, row) : BoundConstraint::girth(d, row);
        const double ours = ac_upper_bound(c).lambda;
        const double err = std::abs(ours - printed);
        worst = std::max(worst, err);
        ++entries;
        if (err > 5e-5) {
          ++mismatches;
          o.note(std::string(dia ? "D=" : "g=") + std::to_string(row) + " d=" + std::to_string(d) +
                 fmt(": printed %.4f, computed %.8f (diff %.2e)", printed, ours, err));
        }
      }
    }
  }
  const double elapsed = seconds_since(t0);
  o.check(entries == 198, "expected 198 table entries, read " + std::to_string(entries));
  o.check(mismatches == 0, std::to_string(mismatches) + " of " + std::to_string(entries) + " entries off by > 5e-5");
  o.check(elapsed < 1.0, fmt("runtime %.3f s >= 1 s", elapsed));
  o.note(fmt("198 entries, max deviation %.2e, %.3f s", worst, elapsed));
  return o;
}

// ---- 2 ----------------------------------------------------------------------

Outcome method_consistency() {
  Outcome o;
  int cases = 0;
  double worst = 0;
  const auto t0 = std::chrono::steady_clock::now();
  const ConstraintKind kinds[] = {ConstraintKind::kEvenDiameter, ConstraintKind::kOddDiameter,
                                  ConstraintKind::kEvenGirth, ConstraintKind::kOddGirth};
  for (int d = 3; d <= 16; ++d) {
    for (int K = 1; K <= 40; ++K) {
      for (auto kind : kinds) {
        // K = 1 diameters are the complete and complete bipartite closed forms; g = 2 does not exist.
        if (K == 1 && kind != ConstraintKind::kOddGirth) continue;
        const BoundConstraint c{kind, K, d};
        const double root = lambda_from_theta(d, solve_theta(c));
        const double sturm = tridiag_smallest_eigenvalue(level_matrix(c));
        const double err = std::abs(root - sturm);
        worst = std::max(worst, err);
        ++cases;
        if (err > 1e-9) o.check(false, c.label() + " d=" + std::to_string(d) + fmt(" differs by %.2e", err));
      }
    }
  }
  const double elapsed = seconds_since(t0);
  o.check(elapsed < 10.0, fmt("runtime %.2f s >= 10 s", elapsed));
  o.note(std::to_string(cases) + " cases" + fmt(", max |root - sturm| %.2e, %.3f s", worst, elapsed));
  return o;
}

// ---- 3 ----------------------------------------------------------------------

Outcome closed_forms() {
  Outcome o;
  double worst = 0;
  for (int d = 3; d <= 50; ++d) {
    const double x = d;
    const std::pair<BoundConstraint, double> forms[] = {
        {BoundConstraint::diameter(d, 3), x - 1},
        {BoundConstraint::diameter(d, 4), x - std::sqrt(x)},
        {BoundConstraint::diameter(d, 5), x - 0.5 - std::sqrt(x - 0.75)},
        {BoundConstraint::diameter(d, 6), x - std::sqrt(2 * x - 1)},
        {BoundConstraint::girth(d, 3), x + 1},
        {BoundConstraint::girth(d, 4), x},
        {BoundConstraint::girth(d, 5), x + 0.5 - std::sqrt(x - 0.75)},
        {BoundConstraint::girth(d, 6), x - std::sqrt(x - 1)},
    };
    for (const auto& [c, want] : forms) {
      const double err = std::abs(ac_upper_bound(c).lambda - want);
      worst = std::max(worst, err);
      if (err > 1e-9) o.check(false, c.label() + " d=" + std::to_string(d) + fmt(" differs by %.2e", err));
    }
  }
  o.note(fmt("8 formulas x 48 degrees, max deviation %.2e", worst));
  return o;
}

// ---- 4 ----------------------------------------------------------------------

Outcome named_graphs() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  struct Case {
    const char* name;
    BoundConstraint c;
    double ac;
    const char* aut;  // empty: not asserted
  };
  const Case cases[] = {
      {"petersen", BoundConstraint::girth(3, 5), 2.0, ""},
      {"heawood", BoundConstraint::girth(3, 6), 3 - std::sqrt(2.0), ""},
      {"desargues", BoundConstraint::diameter(3, 5), 1.0, "240"},
      {"hoffman", BoundConstraint::diameter(4, 4), 2.0, "48"},
      {"tesseract", BoundConstraint::diameter(4, 4), 2.0, "384"},
      {"pappus", BoundConstraint::diameter(3, 4), 3 - std::sqrt(3.0), ""},
      {"mobius_kantor", BoundConstraint::diameter(3, 4), 3 - std::sqrt(3.0), ""},
  };
  for (const auto& k : cases) {
    const Graph g = fixture(k.name);
    const auto r = certify_maximal(g, k.c);
    remember_if_odd_attained(g, k.c);
    o.check(r.ac && std::abs(*r.ac - k.ac) < 1e-7, std::string(k.name) + " AC");
    o.check(r.attained, std::string(k.name) + " attains " + k.c.label());
    if (*k.aut) {
      const auto aut = automorphism_group_order(g).str();
      o.check(aut == k.aut, std::string(k.name) + " aut order " + aut + " != " + k.aut);
    }
  }
  const double elapsed = seconds_since(t0);
  o.check(elapsed < 5.0, fmt("runtime %.2f s >= 5 s", elapsed));
  o.note(fmt("7 goldens, %.3f s", elapsed));
  return o;
}

// ---- 5 ----------------------------------------------------------------------

Outcome families() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  for (int q : {2, 3, 4, 5, 7, 8, 9}) {
    const int d = q + 1;
    const auto r = certify_maximal(pg_incidence_graph(q), BoundConstraint::girth(d, 6));
    o.check(r.attained && r.ac && std::abs(*r.ac - (d - std::sqrt(d - 1.0))) < 1e-7,
            "pg_incidence_graph(" + std::to_string(q) + ") attains d - sqrt(d-1)");
  }
  for (int q : {3, 4, 5, 7, 8, 9}) {
    const int d = q;
    const Graph g = pg_minus_graph(q);
    const auto r = certify_maximal(g, BoundConstraint::diameter(d, 4));
    o.check(r.attained && r.ac && std::abs(*r.ac - (d - std::sqrt(double(d)))) < 1e-7,
            "pg_minus_graph(" + std::to_string(q) + ") attains d - sqrt(d)");
    // Adjacency spectrum: +-d once, +-sqrt(d) d^2-d-2 times, +-1 d times.
    std::vector<double> want{double(d), -double(d)};
    for (int i = 0; i < d * d - d - 2; ++i) {
      want.push_back(std::sqrt(double(d)));
      want.push_back(-std::sqrt(double(d)));
    }
    for (int i = 0; i < d; ++i) {
      want.push_back(1);
      want.push_back(-1);
    }
    std::sort(want.begin(), want.end());
    const auto got = adjacency_spectrum(g).eigenvalues;
    bool same = got.size() == want.size();
    for (std::size_t i = 0; same && i < got.size(); ++i) same = std::abs(got[i] - want[i]) < 1e-7;
    o.check(same, "pg_minus_graph(" + std::to_string(q) + ") spectrum multiset");
  }
  for (int d = 3; d <= 20; ++d) {
    const Graph g = modified_bipartite(d);
    const auto c = BoundConstraint::diameter(d, 3);
    const auto r = certify_maximal(g, c);
    remember_if_odd_attained(g, c);
    o.check(r.attained && r.ac && std::abs(*r.ac - (d - 1.0)) < 1e-7,
            "modified_bipartite(" + std::to_string(d) + ") attains d - 1");
  }
  const double elapsed = seconds_since(t0);
  o.check(elapsed < 60.0, fmt("runtime %.1f s >= 60 s", elapsed));
  o.note(fmt("7 planes, 6 subplanes, 18 modified bipartite graphs, %.2f s", elapsed));
  return o;
}

// ---- 6 ----------------------------------------------------------------------

Outcome exhaustive_small() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  {
    const auto c = BoundConstraint::diameter(3, 3);
    std::vector<Graph> maximal;
    enumerate_regular(8, 3, 3, [&](const Graph& g) {
      if (certify_maximal(g, c).attained) maximal.push_back(g);
    });
    o.check(maximal.size() == 1 && are_isomorphic(maximal[0], cube()), "n=8: unique D=3 maximal cubic graph is the cube");
    for (const auto& g : maximal) remember_if_odd_attained(g, c);
  }
  const auto c4 = BoundConstraint::diameter(3, 4);
  for (int n : {14, 16, 18}) {
    const auto t1 = std::chrono::steady_clock::now();
    long long total = 0;
    int maximal = 0;
    enumerate_regular(n, 3, 3, [&](const Graph& g) {
      ++total;
      if (diameter(g) == 4 && certify_maximal(g, c4).attained) ++maximal;
    });
    o.check(maximal == 1, "n=" + std::to_string(n) + ": " + std::to_string(maximal) + " maximal D=4 cubic graphs");
    o.note("n=" + std::to_string(n) + ": " + std::to_string(total) + " connected cubic graphs, " +
           std::to_string(maximal) + " D=4 maximal" + fmt(", %.1f s", seconds_since(t1)));
  }
  for (auto [n, g, want] : {std::tuple{10, 5, 2.0}, std::tuple{14, 6, 1.585786}}) {
    double best = 0;
    enumerate_regular(n, 3, g, [&](const Graph& h) { best = std::max(best, algebraic_connectivity(h)); });
    o.check(std::abs(best - want) < 1e-5, "max AC over cubic n=" + std::to_string(n) + " g>=" + std::to_string(g) +
                                              fmt(" is %.6f, expected %.6f", best, want));
  }
  const double elapsed = seconds_since(t0);
  o.check(elapsed < 1800.0, fmt("runtime %.0f s >= 30 min", elapsed));
  o.note(fmt("%.1f s total", elapsed));
  return o;
}

// ---- 7 ----------------------------------------------------------------------

Outcome double_tree_counts(int K, int min_girth, double budget_seconds) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  DoubleTreeStats stats;
  const auto graphs = maximal_double_tree_graphs(3, K, min_girth, CompletionMode::kExhaustive, {}, &stats);
  const int want = K == 3 ? 5 : 45;
  const auto c = BoundConstraint::diameter(3, 2 * K - 1);
  o.check(static_cast<int>(graphs.size()) == want,
          std::to_string(graphs.size()) + " distinct maximal graphs, expected " + std::to_string(want));
  bool girth_ok = true;
  for (const auto& g : graphs) {
    girth_ok = girth_ok && girth(g) == 2 * K;
    remember_if_odd_attained(g, c);
  }
  o.check(girth_ok, "all have girth " + std::to_string(2 * K));
  if (K == 3) {
    const Graph desargues = fixture("desargues");
    const auto spectrum = adjacency_spectrum(desargues).eigenvalues;
    int hits = 0;
    int mates = 0;
    for (const auto& g : graphs) {
      if (are_isomorphic(g, desargues)) {
        ++hits;
        continue;
      }
      const auto s = adjacency_spectrum(g).eigenvalues;
      bool same = true;
      for (std::size_t i = 0; i < s.size(); ++i) same = same && std::abs(s[i] - spectrum[i]) < 1e-7;
      if (same && canonical_form(g).graph6 != canonical_form(desargues).graph6) ++mates;
    }
    o.check(hits == 1, "Desargues graph among them");
    o.check(mates == 1, "exactly one cospectral mate of Desargues among them");
  }
  const double elapsed = seconds_since(t0);
  o.check(elapsed < budget_seconds, fmt("runtime %.0f s over budget %.0f s", elapsed, budget_seconds));
  o.note(std::to_string(stats.nodes) + " search nodes, " + std::to_string(stats.completions) + " completions" +
         fmt(", %.2f s", elapsed));
  return o;
}

// ---- 8 ----------------------------------------------------------------------

Outcome stochastic_heawood() {
  Outcome o;
  const Graph heawood = fixture("heawood");
  int found = 0;
  std::vector<double> times;
  long long max_iters = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    SearchConfig cfg;
    cfg.n = 14;
    cfg.d = 3;
    cfg.min_girth = 6;
    cfg.rng_seed = seed;
    cfg.max_iterations = 1'000'000;
    const auto out = stochastic_search(cfg);
    times.push_back(out.stats.wall_seconds);
    max_iters = std::max(max_iters, out.stats.iterations);
    if (out.graph && are_isomorphic(*out.graph, heawood)) ++found;
  }
  std::sort(times.begin(), times.end());
  const double median = 0.5 * (times[4] + times[5]);
  o.check(found >= 9, std::to_string(found) + "/10 seeds found the Heawood graph");
  o.check(median < 5.0, fmt("median %.3f s >= 5 s", median));
  o.note(std::to_string(found) + "/10 found, max " + std::to_string(max_iters) + " passes" +
         fmt(", median %.4f s", median));
  return o;
}

// ---- 9 ----------------------------------------------------------------------

Outcome properties() {
  Outcome o;
  std::mt19937_64 rng(20240601);
  auto random_graph = [&](int n, double p) {
    std::bernoulli_distribution coin(p);
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (coin(rng)) edges.emplace_back(u, v);
    return Graph::from_edge_list(n, edges);
  };
  auto permutation = [&](int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    std::shuffle(p.begin(), p.end(), rng);
    return p;
  };

  // graph6 round trip, including multi-byte size headers.
  int roundtrip_failures = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = std::uniform_int_distribution<int>(0, trial < 290 ? 40 : 120)(rng);
    const Graph g = random_graph(n, 0.3);
    if (!(decode_graph6(encode_graph6(g)) == g)) ++roundtrip_failures;
  }
  o.check(roundtrip_failures == 0, "graph6 round trip");

  // Canonical form invariance under relabeling.
  const std::vector<Graph> bases{fixture("petersen"), fixture("desargues"), fixture("hoffman"),
                                 fixture("pappus"),   pg_minus_graph(3),    bethe_tree(4, 3)};
  int invariance_failures = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Graph g = trial % 2 == 0 ? bases[trial / 2 % bases.size()] : random_graph(12 + trial % 10, 0.3);
    const Graph h = g.relabeled(permutation(g.order()));
    if (canonical_form(g).graph6 != canonical_form(h).graph6) ++invariance_failures;
  }
  o.check(invariance_failures == 0, std::to_string(invariance_failures) + " canonical-form invariance failures");

  // Laplacian null vector: the dense eigenvector of the smallest eigenvalue.
  double worst_residual = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const Graph g = random_graph(30, 0.2);
    const auto L = laplacian(g);
    Eigen::MatrixXd m(g.order(), g.order());
    for (int i = 0; i < g.order(); ++i)
      for (int j = 0; j < g.order(); ++j) m(i, j) = L(i, j);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    const Eigen::VectorXd v = solver.eigenvectors().col(0);
    worst_residual = std::max(worst_residual, (m * v).norm());
    worst_residual = std::max(worst_residual, std::abs(laplacian_spectrum(g).eigenvalues[0]));
  }
  o.check(worst_residual < 1e-8, fmt("Laplacian null residual %.2e", worst_residual));

  // Sturm bisection against the dense solver on the raw (nonsymmetric) level matrix.
  double worst_sturm = 0;
  const ConstraintKind kinds[] = {ConstraintKind::kEvenDiameter, ConstraintKind::kOddDiameter,
                                  ConstraintKind::kEvenGirth, ConstraintKind::kOddGirth};
  for (int d = 3; d <= 12; ++d) {
    for (int K = 2; K <= 30; K += 3) {
      for (auto kind : kinds) {
        const auto t = level_matrix(BoundConstraint{kind, K, d});
        Eigen::MatrixXd raw = Eigen::MatrixXd::Zero(K, K);
        const auto diag = t.diagonal();
        for (int i = 0; i < K; ++i) raw(i, i) = diag[i];
        for (int i = 0; i + 1 < K; ++i) {
          raw(i, i + 1) = i == 0 ? -t.b : -(t.d - 1);
          raw(i + 1, i) = -1;
        }
        const Eigen::VectorXcd ev = Eigen::EigenSolver<Eigen::MatrixXd>(raw, false).eigenvalues();
        double smallest = ev[0].real();
        for (int i = 1; i < K; ++i) smallest = std::min(smallest, ev[i].real());
        worst_sturm = std::max(worst_sturm, std::abs(smallest - tridiag_smallest_eigenvalue(t)));
        const double symmetric = symmetric_eigenvalues(t.symmetrized()).eigenvalues[0];
        worst_sturm = std::max(worst_sturm, std::abs(symmetric - tridiag_smallest_eigenvalue(t)));
      }
    }
  }
  o.check(worst_sturm < 1e-9, fmt("Sturm vs dense %.2e", worst_sturm));

  // Order formula for every odd-D attained graph, after a catalog round trip.
  const std::string path = (std::filesystem::temp_directory_path() /
                            ("maxconn_acceptance_" + std::to_string(::getpid()) + ".jsonl"))
                               .string();
  std::filesystem::remove(path);
  for (const auto& [g, c] : g_odd_attained) append_record(path, make_record(g, c, "acceptance"));
  int order_failures = 0;
  int checked = 0;
  for (const auto& r : read_catalog(path)) {
    if (!r.attained || r.constraint.kind != ConstraintKind::kOddDiameter) continue;
    ++checked;
    if (r.n != odd_diameter_exact_order(r.d, r.constraint.K)) ++order_failures;
  }
  std::filesystem::remove(path);
  o.check(checked > 0 && order_failures == 0,
          std::to_string(order_failures) + " of " + std::to_string(checked) + " odd-D records violate the order formula");

  // Alon-Boppana limit.
  double worst_ab = 0;
  for (auto kind : kinds) {
    const double lambda = ac_upper_bound(BoundConstraint{kind, 200, 3}).lambda;
    worst_ab = std::max(worst_ab, std::abs(lambda - (3 - 2 * std::sqrt(2.0))));
  }
  o.check(worst_ab < 1e-3, fmt("K=200 bounds within %.2e of 3 - 2 sqrt 2", worst_ab));

  o.note(std::to_string(checked) + " odd-D records checked" + fmt(", Alon-Boppana gap %.2e", worst_ab));
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    bool gating;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "bound tables reproduce the published grids to 5e-5", true, bound_tables},
      {2, "tan root-solve and Sturm eigenvalue agree to 1e-9", true, method_consistency},
      {3, "closed forms for D, g <= 6 match to 1e-9", true, closed_forms},
      {4, "named graphs attain their bounds", true, named_graphs},
      {5, "projective-plane and modified bipartite families attain", true, families},
      {6, "exhaustive small-order claims", true, exhaustive_small},
      {7, "double tree d=3 K=3 gives exactly 5 maximal graphs", true, [] { return double_tree_counts(3, 6, 600); }},
      {7, "double tree d=3 K=4 gives exactly 45 maximal graphs (stretch)", false,
       [] { return double_tree_counts(4, 8, 12 * 3600); }},
      {8, "stochastic search finds the Heawood graph", true, stochastic_heawood},
      {9, "property suites", true, properties},
  };
  int gating_failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.notes.push_back(std::string("exception: ") + e.what());
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.title << '\n';
    for (const auto& n : o.notes) std::cout << "     " << n << '\n';
    std::cout << std::flush;
    if (!o.pass && c.gating) ++gating_failures;
  }
  std::cout << (gating_failures == 0 ? "ALL GATING CRITERIA PASS" : "GATING FAILURES: " + std::to_string(gating_failures))
            << '\n';
  return gating_failures == 0 ? 0 : 1;
}

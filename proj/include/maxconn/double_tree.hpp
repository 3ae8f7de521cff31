#pragma once

#include <functional>
#include <string>
#include <unordered_set>
#include <vector>

#include "maxconn/bounds.hpp"
#include "maxconn/iso.hpp"
#include "maxconn/search.hpp"

namespace maxconn {

enum class CompletionMode { kExhaustive, kStochastic };

struct DoubleTreeOptions {
  /// Partial states up to this many completed first-tree leaves are
  /// deduplicated by their two-colored canonical form.
  int memo_depth = 1 << 30;
  // Stochastic mode only.
  std::uint64_t rng_seed = 1;
  int attempts = 20;
  long long iterations_per_attempt = 200'000;
};

struct DoubleTreeStats {
  long long nodes = 0;
  long long memo_hits = 0;
  long long completions = 0;
};

namespace detail {

class DoubleTreeCompleter {
 public:
  DoubleTreeCompleter(int d, int K, int min_girth, const DoubleTreeOptions& opt,
                      const std::function<void(const Graph&)>& emit)
      : d_(d), min_girth_(min_girth), opt_(opt), emit_(emit), cfg_(make_config(d, K, min_girth)),
        state_(initial_state(cfg_)) {
    for (int v = 0; v < cfg_.n; ++v) {
      if (state_.leaf_side[v] == 1) a_leaves_.push_back(v);
      if (state_.leaf_side[v] == 2) b_leaves_.push_back(v);
    }
    colors_.assign(cfg_.n, 0);
    for (int v = cfg_.n / 2; v < cfg_.n; ++v) colors_[v] = 1;
    seen_.resize(a_leaves_.size() + 1);
  }

  DoubleTreeStats run() {
    assign(0);
    return stats_;
  }

 private:
  static SearchConfig make_config(int d, int K, int min_girth) {
    SearchConfig cfg;
    cfg.d = d;
    cfg.n = static_cast<int>(odd_diameter_exact_order(d, K));
    cfg.min_girth = min_girth;
    cfg.seed_mode = SeedMode::kDoubleTree;
    cfg.seed_levels = K;
    cfg.restriction = Restriction::kCrossLeafOnly;
    cfg.validate();
    return cfg;
  }

  void assign(std::size_t i) {
    ++stats_.nodes;
    if (i == a_leaves_.size()) {
      ++stats_.completions;
      emit_(state_.graph.snapshot());
      return;
    }
    const int a = a_leaves_[i];
    choose(i, a, 0, d_ - state_.graph.degree(a));
  }

  // Adds the remaining `need` edges from leaf a to second-tree leaves at index >= from.
  void choose(std::size_t i, int a, std::size_t from, int need) {
    if (need == 0) {
      const int later = static_cast<int>(a_leaves_.size() - i - 1);
      for (int b : b_leaves_) {
        if (d_ - state_.graph.degree(b) > later) return;
      }
      if (static_cast<int>(i + 1) <= opt_.memo_depth) {
        const std::string key = canonical_labeling(state_.graph.snapshot(), colors_).form.graph6;
        if (!seen_[i + 1].insert(key).second) {
          ++stats_.memo_hits;
          return;
        }
      }
      assign(i + 1);
      return;
    }
    for (std::size_t j = from; j + need <= b_leaves_.size(); ++j) {
      const int b = b_leaves_[j];
      if (!edge_check(state_.graph, a, b, d_, min_girth_)) continue;
      state_.graph.add_edge(a, b);
      choose(i, a, j + 1, need - 1);
      state_.graph.remove_edge(a, b);
    }
  }

  int d_;
  int min_girth_;
  DoubleTreeOptions opt_;
  const std::function<void(const Graph&)>& emit_;
  SearchConfig cfg_;
  SearchState state_;
  std::vector<int> a_leaves_;
  std::vector<int> b_leaves_;
  std::vector<int> colors_;
  std::vector<std::unordered_set<std::string>> seen_;
  DoubleTreeStats stats_;
};

}  // namespace detail

/// Completes two disjoint K-level Bethe trees into d-regular graphs using
/// only edges between opposite leaf sets, with girth >= min_girth. Every
/// completion reached is passed to emit; exhaustive mode reaches at least one
/// representative of every isomorphism class of completions.
inline DoubleTreeStats double_tree_completion(int d, int K, int min_girth, CompletionMode mode,
                                              const std::function<void(const Graph&)>& emit,
                                              const DoubleTreeOptions& opt = {}) {
  if (mode == CompletionMode::kExhaustive) return detail::DoubleTreeCompleter(d, K, min_girth, opt, emit).run();
  DoubleTreeStats stats;
  SplitMix64 seeds(opt.rng_seed);
  for (int attempt = 0; attempt < opt.attempts; ++attempt) {
    SearchConfig cfg;
    cfg.d = d;
    cfg.n = static_cast<int>(odd_diameter_exact_order(d, K));
    cfg.min_girth = min_girth;
    cfg.seed_mode = SeedMode::kDoubleTree;
    cfg.seed_levels = K;
    cfg.restriction = Restriction::kCrossLeafOnly;
    cfg.rng_seed = seeds();
    cfg.max_iterations = opt.iterations_per_attempt;
    auto outcome = stochastic_search(cfg);
    stats.nodes += outcome.stats.iterations;
    if (outcome.graph) {
      ++stats.completions;
      emit(*outcome.graph);
    }
  }
  return stats;
}

/// Distinct completions with diameter 2K - 1 that attain the bound.
inline std::vector<Graph> maximal_double_tree_graphs(int d, int K, int min_girth, CompletionMode mode,
                                                     const DoubleTreeOptions& opt = {},
                                                     DoubleTreeStats* stats_out = nullptr) {
  const auto constraint = BoundConstraint::diameter(d, 2 * K - 1);
  IsoDedup seen;
  std::vector<Graph> out;
  auto stats = double_tree_completion(
      d, K, min_girth, mode,
      [&](const Graph& g) {
        if (diameter(g) != 2 * K - 1) return;
        if (!certify_maximal(g, constraint).attained) return;
        if (seen.insert(g)) out.push_back(g);
      },
      opt);
  if (stats_out) *stats_out = stats;
  return out;
}

}  // namespace maxconn

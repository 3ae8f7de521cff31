#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "maxconn/graph.hpp"
#include "maxconn/graph_io.hpp"
#include "maxconn/metrics.hpp"
#include "maxconn/spectra.hpp"

namespace maxconn {

inline constexpr int kMaxCanonicalOrder = 256;

/// Exact integer kept as a product of small factors; prints in decimal.
class GroupOrder {
 public:
  void multiply(std::uint64_t f) {
    if (f != 1) factors_.push_back(f);
  }

  const std::vector<std::uint64_t>& factors() const noexcept { return factors_; }

  /// The value, or nullopt if it does not fit in 64 bits.
  std::optional<std::uint64_t> value() const {
    std::uint64_t v = 1;
    for (auto f : factors_) {
      if (v > UINT64_MAX / f) return std::nullopt;
      v *= f;
    }
    return v;
  }

  std::string str() const {
    std::vector<std::uint32_t> limbs{1};  // base 1e9, little end first
    for (auto f : factors_) {
      std::uint64_t carry = 0;
      for (auto& limb : limbs) {
        const std::uint64_t cur = limb * f + carry;
        limb = static_cast<std::uint32_t>(cur % 1000000000ULL);
        carry = cur / 1000000000ULL;
      }
      while (carry) {
        limbs.push_back(static_cast<std::uint32_t>(carry % 1000000000ULL));
        carry /= 1000000000ULL;
      }
    }
    std::string out = std::to_string(limbs.back());
    for (int i = static_cast<int>(limbs.size()) - 2; i >= 0; --i) {
      std::string part = std::to_string(limbs[i]);
      out += std::string(9 - part.size(), '0') + part;
    }
    return out;
  }

 private:
  std::vector<std::uint64_t> factors_;
};

struct CanonicalForm {
  std::string graph6;
  std::vector<int> labeling;  // labeling[v] = canonical label of v
};

struct CanonicalResult {
  CanonicalForm form;
  std::vector<std::vector<int>> generators;  // automorphisms, gen[v] = image of v
  std::vector<int> orbits;                   // orbits[v] = least vertex in v's orbit
  GroupOrder group_order;
};

namespace detail {

inline std::uint64_t mix64(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= h >> 30;
  h *= 0xbf58476d1ce4e5b9ULL;
  h ^= h >> 27;
  h *= 0x94d049bb133111ebULL;
  h ^= h >> 31;
  return h;
}

/// Individualization-refinement search. Cells are contiguous ranges of lab;
/// start[p] is the first position of the cell holding position p.
class Canonizer {
 public:
  Canonizer(const Graph& g, std::span<const int> colors) : g_(g), n_(g.order()) {
    if (n_ > kMaxCanonicalOrder) {
      throw std::invalid_argument("canonical labeling limited to n <= " + std::to_string(kMaxCanonicalOrder));
    }
    if (!colors.empty() && static_cast<int>(colors.size()) != n_) {
      throw std::invalid_argument("color vector length must equal the graph order");
    }
    colors_.assign(colors.begin(), colors.end());
    if (colors_.empty()) colors_.assign(n_, 0);
    words_ = (n_ + 63) / 64;
    count_.assign(n_, 0);
    parent_.resize(n_);
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  CanonicalResult run() {
    CanonicalResult out;
    if (n_ == 0) {
      out.form.graph6 = encode_graph6(g_);
      return out;
    }
    Partition root = initial_partition();
    path_inv_.assign(1, root_hash_);
    path_.clear();
    explore(root, 0, true);

    out.form.labeling.assign(n_, 0);
    for (int p = 0; p < n_; ++p) out.form.labeling[best_.lab[p]] = p;
    out.form.graph6 = encode_graph6(g_.relabeled(out.form.labeling));
    out.generators = std::move(generators_);
    out.orbits.resize(n_);
    for (int v = 0; v < n_; ++v) out.orbits[v] = find(v);
    // find() roots are the least vertex of each orbit by construction.
    out.group_order = std::move(order_);
    return out;
  }

 private:
  struct Partition {
    std::vector<int> lab;
    std::vector<int> pos;
    std::vector<int> start;
    std::vector<int> len;  // valid at cell starts
    int cells = 0;
  };

  struct Leaf {
    std::vector<std::uint64_t> inv;
    std::vector<int> path;
    std::vector<int> lab;
    std::vector<std::uint64_t> cert;
  };

  static constexpr int kNoJump = 1 << 30;

  Partition initial_partition() {
    Partition p;
    p.lab.resize(n_);
    std::iota(p.lab.begin(), p.lab.end(), 0);
    std::stable_sort(p.lab.begin(), p.lab.end(), [&](int a, int b) { return colors_[a] < colors_[b]; });
    p.pos.resize(n_);
    p.start.resize(n_);
    p.len.assign(n_, 0);
    std::vector<int> queue;
    std::uint64_t h = mix64(0x5eed, static_cast<std::uint64_t>(n_));
    for (int i = 0; i < n_;) {
      int j = i;
      while (j < n_ && colors_[p.lab[j]] == colors_[p.lab[i]]) ++j;
      for (int k = i; k < j; ++k) p.start[k] = i;
      p.len[i] = j - i;
      ++p.cells;
      queue.push_back(i);
      h = mix64(h, static_cast<std::uint64_t>(static_cast<std::int64_t>(colors_[p.lab[i]])));
      h = mix64(h, static_cast<std::uint64_t>(j - i));
      i = j;
    }
    for (int i = 0; i < n_; ++i) p.pos[p.lab[i]] = i;
    root_hash_ = refine(p, queue, h);
    return p;
  }

  // Equitable refinement driven by the splitter queue; returns the folded trace.
  std::uint64_t refine(Partition& p, std::vector<int>& queue, std::uint64_t h) {
    in_queue_.assign(n_, 0);
    for (int s : queue) in_queue_[s] = 1;
    std::size_t head = 0;
    std::vector<int> touched_vertices;
    std::vector<int> touched_cells;
    std::vector<char> cell_touched(n_, 0);
    while (head < queue.size() && p.cells < n_) {
      const int ws = queue[head++];
      in_queue_[ws] = 0;
      const int wl = p.len[ws];
      for (int i = ws; i < ws + wl; ++i) {
        for (int x : g_.neighbors(p.lab[i])) {
          if (count_[x]++ == 0) touched_vertices.push_back(x);
          const int cs = p.start[p.pos[x]];
          if (!cell_touched[cs]) {
            cell_touched[cs] = 1;
            touched_cells.push_back(cs);
          }
        }
      }
      std::sort(touched_cells.begin(), touched_cells.end());
      h = mix64(h, static_cast<std::uint64_t>(ws));
      for (int cs : touched_cells) {
        cell_touched[cs] = 0;
        split_cell(p, cs, queue, h);
      }
      touched_cells.clear();
      for (int x : touched_vertices) count_[x] = 0;
      touched_vertices.clear();
    }
    for (int s : queue) in_queue_[s] = 0;
    queue.clear();
    return mix64(h, static_cast<std::uint64_t>(p.cells));
  }

  void split_cell(Partition& p, int cs, std::vector<int>& queue, std::uint64_t& h) {
    const int cl = p.len[cs];
    auto first = p.lab.begin() + cs;
    auto last = first + cl;
    if (cl == 1) {
      h = mix64(h, (static_cast<std::uint64_t>(cs) << 16) ^ static_cast<std::uint64_t>(count_[p.lab[cs]]));
      return;
    }
    const int c0 = count_[*first];
    bool uniform = true;
    for (auto it = first + 1; it != last; ++it) {
      if (count_[*it] != c0) {
        uniform = false;
        break;
      }
    }
    if (uniform) {
      h = mix64(h, (static_cast<std::uint64_t>(cs) << 16) ^ static_cast<std::uint64_t>(c0));
      return;
    }
    std::sort(first, last, [&](int a, int b) { return count_[a] < count_[b] || (count_[a] == count_[b] && a < b); });
    const bool was_queued = in_queue_[cs] != 0;
    int largest_start = cs;
    int largest_len = 0;
    std::vector<int> frags;
    for (int i = cs; i < cs + cl;) {
      int j = i;
      while (j < cs + cl && count_[p.lab[j]] == count_[p.lab[i]]) ++j;
      for (int k = i; k < j; ++k) {
        p.start[k] = i;
        p.pos[p.lab[k]] = k;
      }
      p.len[i] = j - i;
      h = mix64(h, (static_cast<std::uint64_t>(i) << 32) ^ (static_cast<std::uint64_t>(count_[p.lab[i]]) << 16) ^
                       static_cast<std::uint64_t>(j - i));
      if (j - i > largest_len) {
        largest_len = j - i;
        largest_start = i;
      }
      frags.push_back(i);
      i = j;
    }
    p.cells += static_cast<int>(frags.size()) - 1;
    for (int f : frags) {
      if (in_queue_[f]) continue;
      if (!was_queued && f == largest_start) continue;
      in_queue_[f] = 1;
      queue.push_back(f);
    }
  }

  int target_cell(const Partition& p) const {
    int best = -1;
    int best_len = n_ + 1;
    for (int i = 0; i < n_; i += p.len[i]) {
      if (p.len[i] > 1 && p.len[i] < best_len) {
        best = i;
        best_len = p.len[i];
      }
    }
    return best;
  }

  // Child partition with v split off to the front of its cell.
  std::uint64_t individualize(Partition& p, int v, std::uint64_t h) {
    const int cs = p.start[p.pos[v]];
    const int cl = p.len[cs];
    const int pv = p.pos[v];
    std::swap(p.lab[cs], p.lab[pv]);
    p.pos[p.lab[pv]] = pv;
    p.pos[v] = cs;
    p.len[cs] = 1;
    p.len[cs + 1] = cl - 1;
    for (int k = cs + 1; k < cs + cl; ++k) p.start[k] = cs + 1;
    ++p.cells;
    std::vector<int> queue{cs};
    return refine(p, queue, mix64(h, static_cast<std::uint64_t>(cs)));
  }

  std::vector<std::uint64_t> certificate(const Partition& p) const {
    std::vector<std::uint64_t> cert(static_cast<std::size_t>(n_) * words_, 0);
    for (int i = 0; i < n_; ++i) {
      for (int u : g_.neighbors(p.lab[i])) {
        const int j = p.pos[u];
        cert[static_cast<std::size_t>(i) * words_ + (j >> 6)] |= std::uint64_t{1} << (j & 63);
      }
    }
    return cert;
  }

  int find(int v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) {
      parent_[b] = a;
    } else {
      parent_[a] = b;
    }
  }

  // Records the automorphism sending from.lab[i] to to_lab[i].
  void record_automorphism(const std::vector<int>& from_lab, const std::vector<int>& to_lab) {
    std::vector<int> gamma(n_);
    bool identity = true;
    for (int i = 0; i < n_; ++i) {
      gamma[from_lab[i]] = to_lab[i];
      if (from_lab[i] != to_lab[i]) identity = false;
    }
    if (identity) return;
    for (int v = 0; v < n_; ++v) unite(v, gamma[v]);
    generators_.push_back(std::move(gamma));
  }

  static int common_prefix(const std::vector<int>& a, const std::vector<int>& b) {
    int k = 0;
    while (k < static_cast<int>(a.size()) && k < static_cast<int>(b.size()) && a[k] == b[k]) ++k;
    return k;
  }

  // -1, 0, 1 comparing the current invariant prefix with the leaf's.
  int compare_prefix(const Leaf& leaf, int level) const {
    for (int i = 0; i <= level; ++i) {
      if (i >= static_cast<int>(leaf.inv.size())) return 1;
      if (path_inv_[i] != leaf.inv[i]) return path_inv_[i] < leaf.inv[i] ? -1 : 1;
    }
    return 0;
  }

  int explore(Partition& p, int level, bool on_first) {
    bool eq_first = true;
    int cmp_best = 0;
    if (have_first_) {
      eq_first = compare_prefix(first_, level) == 0;
      cmp_best = compare_prefix(best_, level);
      if (!eq_first && cmp_best < 0) return kNoJump;
    }

    if (p.cells == n_) return leaf(p, eq_first, cmp_best);

    const int ts = target_cell(p);
    std::vector<int> cell(p.lab.begin() + ts, p.lab.begin() + ts + p.len[ts]);
    std::sort(cell.begin(), cell.end());
    std::vector<int> explored;
    for (int w : cell) {
      if (on_first && have_first_) {
        bool seen = false;
        for (int u : explored) {
          if (find(u) == find(w)) {
            seen = true;
            break;
          }
        }
        if (seen) continue;
      }
      explored.push_back(w);
      Partition child = p;
      path_.push_back(w);
      path_inv_.push_back(individualize(child, w, path_inv_.back()));
      const bool child_first = on_first && (!have_first_ || first_.path[level] == w);
      const int r = explore(child, level + 1, child_first);
      path_.pop_back();
      path_inv_.pop_back();
      if (r < level) return r;
    }
    if (on_first) {
      const int v = first_.path[level];
      std::uint64_t orbit = 0;
      for (int w : cell) {
        if (find(w) == find(v)) ++orbit;
      }
      order_.multiply(orbit);
    }
    return kNoJump;
  }

  int leaf(const Partition& p, bool eq_first, int cmp_best) {
    auto cert = certificate(p);
    if (!have_first_) {
      first_ = Leaf{path_inv_, path_, p.lab, std::move(cert)};
      best_ = first_;
      have_first_ = true;
      return kNoJump;
    }
    if (eq_first && cert == first_.cert) {
      record_automorphism(first_.lab, p.lab);
      return common_prefix(path_, first_.path);
    }
    if (cmp_best == 0 && cert == best_.cert) {
      record_automorphism(best_.lab, p.lab);
      return common_prefix(path_, best_.path);
    }
    if (cmp_best > 0 || (cmp_best == 0 && cert > best_.cert)) {
      best_ = Leaf{path_inv_, path_, p.lab, std::move(cert)};
    }
    return kNoJump;
  }

  const Graph& g_;
  int n_;
  int words_ = 1;
  std::vector<int> colors_;
  std::vector<int> count_;
  std::vector<char> in_queue_;
  std::vector<int> parent_;
  std::uint64_t root_hash_ = 0;
  std::vector<std::uint64_t> path_inv_;
  std::vector<int> path_;
  bool have_first_ = false;
  Leaf first_;
  Leaf best_;
  std::vector<std::vector<int>> generators_;
  GroupOrder order_;
};

}  // namespace detail

/// Canonical labeling, automorphism generators and group order. Optional
/// vertex colors must be preserved by isomorphisms; colors compare by value.
inline CanonicalResult canonical_labeling(const Graph& g, std::span<const int> colors = {}) {
  return detail::Canonizer(g, colors).run();
}

inline CanonicalForm canonical_form(const Graph& g) { return canonical_labeling(g).form; }

inline GroupOrder automorphism_group_order(const Graph& g) { return canonical_labeling(g).group_order; }

struct Fingerprint {
  int n = 0;
  std::uint64_t degree_hash = 0;
  int girth = kInfinity;
  int diameter = kInfinity;
  std::uint64_t spectrum_hash = 0;

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

/// Necessary-condition summary; the spectrum is rounded to 1e-6 before hashing.
inline Fingerprint fingerprint(const Graph& g) {
  Fingerprint f;
  f.n = g.order();
  auto degs = g.degree_sequence();
  std::sort(degs.begin(), degs.end());
  std::uint64_t h = 0x1234;
  for (int d : degs) h = detail::mix64(h, static_cast<std::uint64_t>(d));
  f.degree_hash = h;
  f.girth = girth(g);
  f.diameter = diameter(g);
  std::uint64_t s = 0x5678;
  if (g.order() > 0) {
    for (double x : adjacency_spectrum(g).eigenvalues) {
      s = detail::mix64(s, static_cast<std::uint64_t>(std::llround(x * 1e6)));
    }
  }
  f.spectrum_hash = s;
  return f;
}

inline bool are_isomorphic(const Graph& a, const Graph& b) {
  if (a.order() != b.order() || a.size() != b.size()) return false;
  if (!(fingerprint(a) == fingerprint(b))) return false;
  return canonical_form(a).graph6 == canonical_form(b).graph6;
}

/// Set of canonical strings; insert() is safe to call from several threads.
class IsoDedup {
 public:
  /// True if g's isomorphism class was not seen before.
  bool insert(const Graph& g) { return insert_canonical(canonical_form(g).graph6); }

  bool insert_canonical(const std::string& canonical) {
    std::lock_guard lock(mutex_);
    return seen_.insert(canonical).second;
  }

  std::size_t size() const {
    std::lock_guard lock(mutex_);
    return seen_.size();
  }

 private:
  mutable std::mutex mutex_;
  std::unordered_set<std::string> seen_;
};

/// First representative of each isomorphism class, in input order.
template <typename Range>
std::vector<Graph> dedup(const Range& graphs) {
  IsoDedup seen;
  std::vector<Graph> out;
  for (const Graph& g : graphs) {
    if (seen.insert(g)) out.push_back(g);
  }
  return out;
}

}  // namespace maxconn

// maxconn: bounds, constructions, analysis, searches and the graph catalog.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "maxconn/bounds.hpp"
#include "maxconn/catalog.hpp"
#include "maxconn/double_tree.hpp"
#include "maxconn/enumerate.hpp"
#include "maxconn/families.hpp"
#include "maxconn/graph_io.hpp"
#include "maxconn/iso.hpp"
#include "maxconn/metrics.hpp"
#include "maxconn/search.hpp"
#include "maxconn/spectra.hpp"

using namespace maxconn;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;
constexpr int kExitBudget = 4;

// Thrown for bad input files; maps to exit code 3.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fixed(double x, int digits) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits) << x;
  return out.str();
}

const char* yes_no(bool b) { return b ? "true" : "false"; }

// ---- bound ----------------------------------------------------------------

struct BoundArgs {
  int d = 0;
  std::optional<int> diameter;
  std::optional<int> girth;
  bool table = false;
  bool csv = false;
};

int run_bound(const BoundArgs& a) {
  if (a.table) {
    if (!a.csv) {
      std::cout << format_bound_table(true, false) << '\n' << format_bound_table(false, false);
    } else {
      std::cout << format_bound_table(true, true) << '\n' << format_bound_table(false, true);
    }
    return 0;
  }
  if (!a.diameter && !a.girth) throw CLI::ValidationError("bound", "exactly one of --diameter or --girth is required");
  const auto c = a.diameter ? BoundConstraint::diameter(a.d, *a.diameter) : BoundConstraint::girth(a.d, *a.girth);
  const auto r = ac_upper_bound(c);
  if (a.csv) {
    std::cout << "d,constraint,theta,lambda,method\n"
              << a.d << ',' << c.label() << ',' << fixed(r.theta, 12) << ',' << fixed(r.lambda, 12) << ','
              << to_string(r.method) << '\n';
    return 0;
  }
  std::cout << "d=" << a.d << ' ' << c.label() << '\n'
            << "theta: " << fixed(r.theta, 12) << '\n'
            << "lambda: " << fixed(r.lambda, 12) << '\n'
            << "bound: " << fixed(r.lambda, 4) << '\n'
            << "method: " << to_string(r.method) << " (cross-check " << std::scientific << std::setprecision(1)
            << std::abs(r.lambda - r.cross_check) << ")\n"
            << "known attainability: " << to_string(known_attainability(c)) << '\n';
  return 0;
}

// ---- shared reporting -------------------------------------------------------

void print_report(const CertificationReport& r) {
  std::cout << "n=" << r.order << " d=" << (r.regular ? std::to_string(r.degree) : std::string("irregular"))
            << " girth=" << extent_to_string(r.girth) << " diameter=" << extent_to_string(r.diameter)
            << " bipartite=" << yes_no(r.bipartite) << '\n';
  std::cout << "ac: " << (r.ac ? fixed(*r.ac, 12) : std::string("0 (disconnected)")) << '\n';
  std::cout << "bound " << r.constraint.label() << ": " << fixed(r.bound, 12) << '\n';
  std::cout << "attained: " << yes_no(r.attained) << " (" << (r.constraint.is_diameter() ? "diameter " : "girth ")
            << r.constraint.value() << ")\n";
}

// ---- construct --------------------------------------------------------------

struct ConstructArgs {
  std::string family;
  std::optional<int> q;
  std::optional<int> d;
  int levels = 3;
  std::string root = "vertex";
  std::string constraint;
  std::string out;
};

int run_construct(const ConstructArgs& a) {
  auto need = [&](const std::optional<int>& v, const char* flag) {
    if (!v) throw CLI::ValidationError("construct", "family '" + a.family + "' needs " + flag);
    return *v;
  };
  Graph g;
  std::string default_constraint;
  int d = 0;
  if (a.family == "complete") {
    d = need(a.d, "-d");
    g = complete_graph(d);
    default_constraint = "D=1";
  } else if (a.family == "bipartite") {
    d = need(a.d, "-d");
    g = complete_bipartite(d);
    default_constraint = "D=2";
  } else if (a.family == "modified-bipartite") {
    d = need(a.d, "-d");
    g = modified_bipartite(d);
    default_constraint = "D=3";
  } else if (a.family == "pg") {
    const int q = need(a.q, "-q");
    g = pg_incidence_graph(q);
    d = q + 1;
    default_constraint = "g=6";
  } else if (a.family == "pg-minus") {
    const int q = need(a.q, "-q");
    g = pg_minus_graph(q);
    d = q;
    default_constraint = "D=4";
  } else if (a.family == "bethe-tree") {
    d = need(a.d, "-d");
    g = bethe_tree(a.levels, d, a.root == "edge" ? TreeRoot::kEdge : TreeRoot::kVertex);
    default_constraint = "D=" + std::to_string(diameter(g));
  }
  const auto c = parse_constraint(a.constraint.empty() ? default_constraint : a.constraint, d);
  const std::string g6 = encode_graph6(g);
  if (!a.out.empty()) {
    std::ofstream out(a.out);
    if (!out) throw std::runtime_error("cannot write " + a.out);
    out << g6 << '\n';
  }
  std::cout << "family: " << a.family << '\n';
  std::cout << "graph6: " << g6 << '\n';
  print_report(certify_maximal(g, c));
  return 0;
}

// ---- analyze ----------------------------------------------------------------

struct AnalyzeArgs {
  std::string file;
  std::string constraint;
  bool json = false;
  bool import = false;
  std::string catalog;
};

nlohmann::json extent_json(int v) { return v == kInfinity ? nlohmann::json(nullptr) : nlohmann::json(v); }

int run_analyze(const AnalyzeArgs& a) {
  std::ifstream in(a.file);
  if (!in) throw InputError("cannot read " + a.file);
  const std::string catalog = a.catalog.empty() ? default_catalog_path() : a.catalog;
  std::string line;
  int number = 0;
  int failures = 0;
  int graphs = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    Graph g;
    try {
      g = decode_graph6(line);
    } catch (const FormatError& e) {
      std::cerr << a.file << ':' << number << ": " << e.what() << '\n';
      ++failures;
      continue;
    }
    ++graphs;
    const auto m = metrics(g);
    const int degree = g.regular_degree();
    std::optional<CertificationReport> report;
    if (degree >= 3) {
      std::optional<BoundConstraint> c;
      if (!a.constraint.empty()) {
        c = parse_constraint(a.constraint, degree);
      } else if (m.diameter != kInfinity && m.diameter >= 1) {
        c = BoundConstraint::diameter(degree, m.diameter);
      }
      if (c) report = certify_maximal(g, *c);
    }
    const auto canon = canonical_labeling(g);
    const auto lap = laplacian_spectrum(g);
    const auto spectrum = lap.grouped();
    std::optional<double> ac;
    if (g.order() >= 2) ac = m.is_connected ? lap.eigenvalues[1] : 0.0;

    if (a.json) {
      nlohmann::json j{{"line", number},
                       {"graph6", line},
                       {"n", g.order()},
                       {"m", g.size()},
                       {"d", degree >= 0 ? nlohmann::json(degree) : nlohmann::json(nullptr)},
                       {"girth", extent_json(m.girth)},
                       {"diameter", extent_json(m.diameter)},
                       {"connected", m.is_connected},
                       {"bipartite", m.is_bipartite},
                       {"ac", ac ? nlohmann::json(*ac) : nlohmann::json(nullptr)},
                       {"aut_order", canon.group_order.str()},
                       {"canonical", canon.form.graph6}};
      auto& spec = j["laplacian_spectrum"] = nlohmann::json::array();
      for (auto [value, mult] : spectrum) spec.push_back(nlohmann::json::array({value, mult}));
      if (report) {
        j["constraint"] = report->constraint.label();
        j["bound"] = report->bound;
        j["attained"] = report->attained;
      }
      std::cout << j.dump() << '\n';
    } else {
      std::cout << "line " << number << ": n=" << g.order() << " m=" << g.size()
                << " d=" << (degree >= 0 ? std::to_string(degree) : std::string("irregular"))
                << " girth=" << extent_to_string(m.girth) << " diameter=" << extent_to_string(m.diameter)
                << " connected=" << yes_no(m.is_connected) << " bipartite=" << yes_no(m.is_bipartite) << '\n';
      std::cout << "  ac: " << (ac ? fixed(*ac, 12) : std::string("-")) << '\n';
      std::cout << "  laplacian spectrum:";
      for (auto [value, mult] : spectrum) std::cout << ' ' << fixed(std::abs(value) < 5e-13 ? 0.0 : value, 6) << '^' << mult;
      std::cout << '\n';
      std::cout << "  aut_order: " << canon.group_order.str() << '\n';
      std::cout << "  canonical: " << canon.form.graph6 << '\n';
      if (report) {
        std::cout << "  constraint " << report->constraint.label() << ": bound=" << fixed(report->bound, 12)
                  << " attained=" << yes_no(report->attained) << '\n';
      }
    }
    if (a.import && report) append_record(catalog, make_record(g, report->constraint, "import:" + a.file));
  }
  if (failures > 0) {
    std::cerr << failures << " of " << (failures + graphs) << " lines failed to parse\n";
    return kExitParse;
  }
  return 0;
}

// ---- search -----------------------------------------------------------------

struct SearchArgs {
  int n = 0;
  int d = 3;
  int girth = 3;
  std::string seed_mode = "empty";
  std::optional<int> levels;
  std::string mode = "stochastic";
  std::string constraint;
  long long budget = 1'000'000;
  double time_limit = 0.0;
  std::optional<std::uint64_t> seed;
  int workers = 1;
  int attempts = 1;
  long long stall_window = 2000;
  int k_max = 8;
  bool no_conjecture = false;
  long long progress = 0;
  std::string checkpoint;
  std::string catalog;
};

std::uint64_t config_digest(const SearchArgs& a) {
  std::uint64_t h = 0x6d61786e636f6e6eULL;
  for (const std::string& part : {a.seed_mode, a.mode, a.constraint}) {
    for (unsigned char ch : part) h = detail::mix64(h, ch);
    h = detail::mix64(h, 0xff);
  }
  for (long long v : {static_cast<long long>(a.n), static_cast<long long>(a.d), static_cast<long long>(a.girth),
                      static_cast<long long>(a.levels.value_or(0))}) {
    h = detail::mix64(h, static_cast<std::uint64_t>(v));
  }
  return h;
}

std::string hex(std::uint64_t v) {
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << v;
  return out.str();
}

SeedMode parse_seed_mode(const std::string& s) {
  if (s == "vertex-tree") return SeedMode::kVertexTree;
  if (s == "edge-tree") return SeedMode::kEdgeTree;
  if (s == "double-tree") return SeedMode::kDoubleTree;
  return SeedMode::kEmpty;
}

int run_search(const SearchArgs& a) {
  const SeedMode seed_mode = parse_seed_mode(a.seed_mode);
  int levels = a.levels.value_or(0);
  if (seed_mode == SeedMode::kDoubleTree && !a.levels) {
    for (int K = 2; K < 20 && odd_diameter_exact_order(a.d, K) <= a.n; ++K) {
      if (odd_diameter_exact_order(a.d, K) == a.n) levels = K;
    }
    if (levels == 0) {
      throw std::invalid_argument("no double-tree seed has exactly " + std::to_string(a.n) + " vertices for d=" +
                                  std::to_string(a.d));
    }
  }
  if ((seed_mode == SeedMode::kVertexTree || seed_mode == SeedMode::kEdgeTree) && !a.levels) {
    throw std::invalid_argument("--levels is required for tree seeds");
  }

  BoundConstraint c;
  if (!a.constraint.empty()) {
    c = parse_constraint(a.constraint, a.d);
  } else if (seed_mode == SeedMode::kDoubleTree) {
    c = BoundConstraint::diameter(a.d, 2 * levels - 1);
  } else {
    c = BoundConstraint::girth(a.d, std::max(a.girth, 3));
  }
  const int floor = heuristic_girth_floor(c, a.girth, !a.no_conjecture);

  const std::uint64_t digest = config_digest(a);
  const std::uint64_t seed = a.seed.value_or(digest);
  std::ostringstream prov;
  prov << "search:" << hex(digest) << " n=" << a.n << " d=" << a.d << " girth>=" << floor << " seed-mode=" << a.seed_mode
       << " K=" << levels << " mode=" << a.mode << " rng_seed=" << seed;
  std::cout << "rng_seed=" << seed << '\n' << "constraint: " << c.label() << " girth floor " << floor << '\n';

  const std::string catalog = a.catalog.empty() ? default_catalog_path() : a.catalog;
  Verifier verifier(c, prov.str());
  if (std::ifstream probe(catalog); probe) {
    for (const auto& r : read_catalog(catalog)) {
      if (r.constraint == c) verifier.mark_known(r.canonical);
    }
  }
  int records = 0;
  int finds = 0;
  auto offer = [&](const Graph& g) {
    ++finds;
    if (auto r = verifier.offer(g)) {
      append_record(catalog, *r);
      ++records;
      std::cout << "record: " << r->graph6 << " ac=" << fixed(r->ac, 12) << " aut=" << r->aut_order << '\n';
    }
  };

  if (a.mode == "exhaustive") {
    if (seed_mode == SeedMode::kDoubleTree) {
      const auto stats = double_tree_completion(a.d, levels, floor, CompletionMode::kExhaustive, offer);
      std::cerr << "nodes=" << stats.nodes << " completions=" << stats.completions << '\n';
    } else if (seed_mode == SeedMode::kEmpty) {
      const auto stats = enumerate_regular(a.n, a.d, floor, offer);
      std::cerr << "nodes=" << stats.nodes << " graphs=" << stats.emitted << '\n';
    } else {
      throw std::invalid_argument("exhaustive mode supports the empty and double-tree seeds");
    }
    std::cout << "records: " << records << '\n';
    return 0;
  }

  SearchConfig cfg;
  cfg.n = a.n;
  cfg.d = a.d;
  cfg.min_girth = floor;
  cfg.seed_mode = seed_mode;
  cfg.seed_levels = levels;
  cfg.restriction = seed_mode == SeedMode::kDoubleTree ? Restriction::kCrossLeafOnly : Restriction::kNone;
  cfg.stall_window = a.stall_window;
  cfg.k_max = a.k_max;
  cfg.max_iterations = a.budget;
  cfg.time_budget_seconds = a.time_limit;
  cfg.progress_interval = a.progress;
  cfg.checkpoint_path = a.checkpoint;
  cfg.validate();
  SplitMix64 streams(seed);
  for (int attempt = 0; attempt < a.attempts; ++attempt) {
    cfg.rng_seed = attempt == 0 ? seed : streams.split(static_cast<std::uint64_t>(attempt))();
    const auto out = parallel_search(cfg, a.workers);
    std::cerr << "attempt " << attempt << ": " << (out.graph ? "found" : "budget exhausted")
              << " iterations=" << out.stats.iterations << " restarts=" << out.stats.restarts
              << " best=" << out.stats.best_edges << '/' << static_cast<long long>(cfg.n) * cfg.d / 2 << '\n';
    if (out.graph) {
      std::cout << "found: " << encode_graph6(*out.graph) << '\n';
      offer(*out.graph);
    }
  }
  std::cout << "records: " << records << '\n';
  return finds == 0 ? kExitBudget : 0;
}

// ---- catalog ----------------------------------------------------------------

struct CatalogArgs {
  std::string file;
  CatalogFilter filter;
  std::optional<std::string> attained;
  bool json = false;
};

int run_catalog(CatalogArgs a) {
  const std::string path = a.file.empty() ? default_catalog_path() : a.file;
  if (a.attained) a.filter.attained = *a.attained == "true";
  std::vector<CatalogRecord> records;
  try {
    records = read_catalog(path);
  } catch (const CatalogError& e) {
    throw InputError(e.what());
  }
  const auto hits = query(records, a.filter);
  for (const auto& r : hits) {
    if (a.json) {
      std::cout << to_json(r).dump() << '\n';
    } else {
      std::cout << "n=" << r.n << " d=" << r.d << " girth=" << extent_to_string(r.girth)
                << " diameter=" << extent_to_string(r.diameter) << ' ' << r.constraint.label()
                << " ac=" << fixed(r.ac, 12) << " attained=" << yes_no(r.attained) << " aut=" << r.aut_order << ' '
                << r.graph6 << '\n';
    }
  }
  std::cerr << hits.size() << " of " << records.size() << " records\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Algebraic connectivity bounds and maximal regular graphs"};
  app.require_subcommand(1);

  BoundArgs bound;
  auto* bound_cmd = app.add_subcommand("bound", "Upper bound on algebraic connectivity");
  bound_cmd->add_option("-d,--degree", bound.d, "Degree")->check(CLI::Range(3, 100000));
  auto* dia = bound_cmd->add_option("--diameter", bound.diameter, "Diameter D")->check(CLI::PositiveNumber);
  auto* gir = bound_cmd->add_option("--girth", bound.girth, "Girth g")->check(CLI::Range(3, 1 << 20));
  dia->excludes(gir);
  auto* table = bound_cmd->add_flag("--table", bound.table, "Print the D and g grids for d = 3..11");
  table->excludes(dia)->excludes(gir);
  bound_cmd->add_flag("--csv", bound.csv, "CSV output");
  bound_cmd->callback([&] {
    if (!bound.table && bound.d == 0) throw CLI::RequiredError("-d");
  });

  ConstructArgs construct;
  auto* construct_cmd = app.add_subcommand("construct", "Build a graph family member and certify it");
  construct_cmd->add_option("family", construct.family, "Family")
      ->required()
      ->check(CLI::IsMember({"complete", "bipartite", "modified-bipartite", "pg", "pg-minus", "bethe-tree"}));
  construct_cmd->add_option("-q", construct.q, "Field order (pg, pg-minus)");
  construct_cmd->add_option("-d,--degree", construct.d, "Degree")->check(CLI::Range(2, 4096));
  construct_cmd->add_option("-K,--levels", construct.levels, "Tree levels (bethe-tree)")->check(CLI::Range(1, 20));
  construct_cmd->add_option("--root", construct.root, "Tree root (bethe-tree)")->check(CLI::IsMember({"vertex", "edge"}));
  construct_cmd->add_option("--constraint", construct.constraint, "Constraint such as D=4 or g=6");
  construct_cmd->add_option("--out", construct.out, "graph6 output file");

  AnalyzeArgs analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Report metrics, spectrum and certification per graph6 line");
  analyze_cmd->add_option("file", analyze.file, "graph6 file")->required();
  analyze_cmd->add_option("--constraint", analyze.constraint, "Constraint such as D=5 or g=8 (default: own diameter)");
  analyze_cmd->add_flag("--json", analyze.json, "One JSON object per graph");
  analyze_cmd->add_flag("--import", analyze.import, "Append a catalog record per graph");
  analyze_cmd->add_option("--catalog", analyze.catalog, "Catalog file (default $MAXCONN_CATALOG)");

  SearchArgs search;
  auto* search_cmd = app.add_subcommand("search", "Search for d-regular graphs attaining the bound");
  search_cmd->add_option("-n,--order", search.n, "Order")->required()->check(CLI::Range(2, 4096));
  search_cmd->add_option("-d,--degree", search.d, "Degree")->check(CLI::Range(3, 4095));
  search_cmd->add_option("--girth", search.girth, "Girth floor")->check(CLI::Range(3, 4096));
  search_cmd->add_option("--seed-mode", search.seed_mode, "Seed")
      ->check(CLI::IsMember({"empty", "vertex-tree", "edge-tree", "double-tree"}));
  search_cmd->add_option("-K,--levels", search.levels, "Seed tree levels")->check(CLI::Range(1, 20));
  search_cmd->add_option("--mode", search.mode, "Search mode")->check(CLI::IsMember({"stochastic", "exhaustive"}));
  search_cmd->add_option("--constraint", search.constraint, "Constraint such as D=5 or g=6");
  search_cmd->add_option("--budget", search.budget, "Iterations per attempt")->check(CLI::NonNegativeNumber);
  search_cmd->add_option("--time", search.time_limit, "Seconds per attempt (0: unlimited)")->check(CLI::NonNegativeNumber);
  search_cmd->add_option("--seed", search.seed, "RNG seed (default: config digest)");
  search_cmd->add_option("--workers", search.workers, "Parallel workers")->check(CLI::Range(1, 256));
  search_cmd->add_option("--attempts", search.attempts, "Independent stochastic attempts")->check(CLI::Range(1, 1 << 20));
  search_cmd->add_option("--stall-window", search.stall_window, "Passes without progress before k grows")
      ->check(CLI::PositiveNumber);
  search_cmd->add_option("--k-max", search.k_max, "Removal count cap")->check(CLI::PositiveNumber);
  search_cmd->add_flag("--no-conjecture", search.no_conjecture, "Do not raise the girth floor to D+1 for odd D");
  search_cmd->add_option("--progress", search.progress, "Progress line every N passes")->check(CLI::NonNegativeNumber);
  search_cmd->add_option("--checkpoint", search.checkpoint, "graph6 file for best-so-far graphs");
  search_cmd->add_option("--catalog", search.catalog, "Catalog file (default $MAXCONN_CATALOG)");

  CatalogArgs cat;
  auto* catalog_cmd = app.add_subcommand("catalog", "Query the catalog");
  catalog_cmd->add_option("--file", cat.file, "Catalog file (default $MAXCONN_CATALOG)");
  catalog_cmd->add_option("-d,--degree", cat.filter.d, "Degree");
  catalog_cmd->add_option("--diameter", cat.filter.diameter, "Diameter");
  catalog_cmd->add_option("--girth", cat.filter.girth, "Girth");
  catalog_cmd->add_option("--attained", cat.attained, "true or false")->check(CLI::IsMember({"true", "false"}));
  catalog_cmd->add_option("--min-order", cat.filter.min_order, "Smallest order");
  catalog_cmd->add_option("--max-order", cat.filter.max_order, "Largest order");
  catalog_cmd->add_flag("--json", cat.json, "JSONL output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*bound_cmd) return run_bound(bound);
    if (*construct_cmd) return run_construct(construct);
    if (*analyze_cmd) return run_analyze(analyze);
    if (*search_cmd) return run_search(search);
    if (*catalog_cmd) return run_catalog(cat);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const CatalogError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

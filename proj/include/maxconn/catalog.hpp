#pragma once

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "maxconn/bounds.hpp"
#include "maxconn/graph_io.hpp"
#include "maxconn/iso.hpp"

namespace maxconn {

inline constexpr const char* kCatalogEnv = "MAXCONN_CATALOG";
inline constexpr const char* kDefaultCatalog = "maxconn_catalog.jsonl";

class CatalogError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CatalogRecord {
  std::string graph6;
  int n = 0;
  int d = -1;
  int girth = kInfinity;
  int diameter = kInfinity;
  double ac = 0.0;
  double bound = 0.0;
  bool attained = false;
  BoundConstraint constraint;
  std::string aut_order;
  std::string canonical;
  std::string provenance;
  std::string timestamp;
};

/// Rounds to 12 significant digits.
inline double round12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Measures g against the constraint and fills every record field.
inline CatalogRecord make_record(const Graph& g, const BoundConstraint& c, std::string provenance) {
  const auto report = certify_maximal(g, c);
  const auto canon = canonical_labeling(g);
  CatalogRecord r;
  r.graph6 = encode_graph6(g);
  r.n = g.order();
  r.d = report.degree;
  r.girth = report.girth;
  r.diameter = report.diameter;
  r.ac = round12(report.ac.value_or(0.0));
  r.bound = report.bound;
  r.attained = report.attained;
  r.constraint = c;
  r.aut_order = canon.group_order.str();
  r.canonical = canon.form.graph6;
  r.provenance = std::move(provenance);
  r.timestamp = utc_timestamp();
  return r;
}

inline nlohmann::json to_json(const CatalogRecord& r) {
  auto extent = [](int v) { return v == kInfinity ? nlohmann::json(nullptr) : nlohmann::json(v); };
  return {{"graph6", r.graph6},
          {"n", r.n},
          {"d", r.d},
          {"girth", extent(r.girth)},
          {"diameter", extent(r.diameter)},
          {"ac", r.ac},
          {"bound", r.bound},
          {"attained", r.attained},
          {"constraint", r.constraint.label()},
          {"constraint_d", r.constraint.d},
          {"aut_order", r.aut_order},
          {"canonical", r.canonical},
          {"provenance", r.provenance},
          {"timestamp", r.timestamp}};
}

inline CatalogRecord from_json(const nlohmann::json& j) {
  auto extent = [](const nlohmann::json& v) { return v.is_null() ? kInfinity : v.get<int>(); };
  CatalogRecord r;
  r.graph6 = j.at("graph6").get<std::string>();
  r.n = j.at("n").get<int>();
  r.d = j.at("d").get<int>();
  r.girth = extent(j.at("girth"));
  r.diameter = extent(j.at("diameter"));
  r.ac = j.at("ac").get<double>();
  r.bound = j.at("bound").get<double>();
  r.attained = j.at("attained").get<bool>();
  r.constraint = parse_constraint(j.at("constraint").get<std::string>(), j.at("constraint_d").get<int>());
  r.aut_order = j.at("aut_order").get<std::string>();
  r.canonical = j.at("canonical").get<std::string>();
  r.provenance = j.at("provenance").get<std::string>();
  r.timestamp = j.at("timestamp").get<std::string>();
  return r;
}

/// Path from $MAXCONN_CATALOG, else the default file name.
inline std::string default_catalog_path() {
  const char* env = std::getenv(kCatalogEnv);
  return env && *env ? std::string(env) : std::string(kDefaultCatalog);
}

/// Appends one JSONL line under an exclusive flock, in a single write, so
/// concurrent writers never interleave or tear a record.
inline void append_record(const std::string& path, const CatalogRecord& r) {
  const std::string line = to_json(r).dump() + "\n";
  const int fd = ::open(path.c_str(), O_WRONLY | O_APPEND | O_CREAT, 0644);
  if (fd < 0) throw CatalogError("cannot open catalog " + path);
  if (::flock(fd, LOCK_EX) != 0) {
    ::close(fd);
    throw CatalogError("cannot lock catalog " + path);
  }
  const ssize_t written = ::write(fd, line.data(), line.size());
  ::flock(fd, LOCK_UN);
  ::close(fd);
  if (written != static_cast<ssize_t>(line.size())) throw CatalogError("short write to catalog " + path);
}

inline std::vector<CatalogRecord> read_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CatalogError("catalog not found: " + path);
  std::vector<CatalogRecord> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    try {
      out.push_back(from_json(nlohmann::json::parse(line)));
    } catch (const std::exception& e) {
      throw CatalogError(path + ":" + std::to_string(number) + ": corrupt record: " + e.what());
    }
  }
  return out;
}

struct CatalogFilter {
  std::optional<int> d;
  std::optional<int> diameter;
  std::optional<int> girth;
  std::optional<bool> attained;
  std::optional<int> min_order;
  std::optional<int> max_order;
};

/// Records passing every set filter, in file order.
inline std::vector<CatalogRecord> query(const std::vector<CatalogRecord>& records, const CatalogFilter& f) {
  std::vector<CatalogRecord> out;
  for (const auto& r : records) {
    if (f.d && r.d != *f.d) continue;
    if (f.diameter && r.diameter != *f.diameter) continue;
    if (f.girth && r.girth != *f.girth) continue;
    if (f.attained && r.attained != *f.attained) continue;
    if (f.min_order && r.n < *f.min_order) continue;
    if (f.max_order && r.n > *f.max_order) continue;
    out.push_back(r);
  }
  return out;
}

/// Certifies each offered graph and keeps the first attaining representative
/// of every isomorphism class.
class Verifier {
 public:
  Verifier(BoundConstraint c, std::string provenance) : constraint_(c), provenance_(std::move(provenance)) {}

  std::optional<CatalogRecord> offer(const Graph& g) {
    if (g.regular_degree() != constraint_.d) return std::nullopt;
    if (!certify_maximal(g, constraint_).attained) return std::nullopt;
    auto record = make_record(g, constraint_, provenance_);
    if (!seen_.insert_canonical(record.canonical)) return std::nullopt;
    return record;
  }

  /// Treats a canonical form as already emitted, e.g. one read from an existing catalog.
  void mark_known(const std::string& canonical) { seen_.insert_canonical(canonical); }

 private:
  BoundConstraint constraint_;
  std::string provenance_;
  IsoDedup seen_;
};

template <typename Range>
std::vector<CatalogRecord> verify_and_emit(const Range& graphs, const BoundConstraint& c,
                                           const std::string& provenance) {
  Verifier v(c, provenance);
  std::vector<CatalogRecord> out;
  for (const Graph& g : graphs) {
    if (auto r = v.offer(g)) out.push_back(std::move(*r));
  }
  return out;
}

}  // namespace maxconn

#pragma once

#include <cmath>
#include <iomanip>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "maxconn/graph.hpp"
#include "maxconn/metrics.hpp"
#include "maxconn/spectra.hpp"

namespace maxconn {

enum class ConstraintKind { kEvenDiameter, kOddDiameter, kEvenGirth, kOddGirth };

/// A diameter or girth constraint on a d-regular graph, stored through its
/// level count K: D = 2K, D = 2K - 1, g = 2K or g = 2K + 1.
struct BoundConstraint {
  ConstraintKind kind = ConstraintKind::kEvenDiameter;
  int K = 1;
  int d = 3;

  static BoundConstraint diameter(int d, int D) {
    if (D < 1) throw std::invalid_argument("diameter must be >= 1");
    BoundConstraint c{D % 2 == 0 ? ConstraintKind::kEvenDiameter : ConstraintKind::kOddDiameter,
                      D % 2 == 0 ? D / 2 : (D + 1) / 2, d};
    c.validate();
    return c;
  }

  static BoundConstraint girth(int d, int g) {
    if (g < 3) throw std::invalid_argument("girth must be >= 3");
    BoundConstraint c{g % 2 == 0 ? ConstraintKind::kEvenGirth : ConstraintKind::kOddGirth,
                      g % 2 == 0 ? g / 2 : (g - 1) / 2, d};
    c.validate();
    return c;
  }

  bool is_diameter() const noexcept {
    return kind == ConstraintKind::kEvenDiameter || kind == ConstraintKind::kOddDiameter;
  }

  /// The diameter or girth this constraint stands for.
  int value() const noexcept {
    switch (kind) {
      case ConstraintKind::kEvenDiameter: return 2 * K;
      case ConstraintKind::kOddDiameter: return 2 * K - 1;
      case ConstraintKind::kEvenGirth: return 2 * K;
      case ConstraintKind::kOddGirth: return 2 * K + 1;
    }
    return 0;
  }

  void validate() const {
    if (d < 3) throw std::invalid_argument("degree must be >= 3");
    if (K < 1) throw std::invalid_argument("level count K must be >= 1");
    if (kind == ConstraintKind::kEvenGirth && K < 2) throw std::invalid_argument("even girth must be >= 4");
  }

  /// "D=5" / "g=6".
  std::string label() const { return std::string(is_diameter() ? "D=" : "g=") + std::to_string(value()); }

  friend bool operator==(const BoundConstraint&, const BoundConstraint&) = default;
};

/// Parses "D=5" or "g=6" (degree supplied separately).
inline BoundConstraint parse_constraint(const std::string& text, int d) {
  if (text.size() < 3 || text[1] != '=' || (text[0] != 'D' && text[0] != 'g')) {
    throw std::invalid_argument("constraint must look like D=<int> or g=<int>: '" + text + "'");
  }
  std::size_t used = 0;
  const int value = std::stoi(text.substr(2), &used);
  if (used != text.size() - 2) throw std::invalid_argument("bad constraint value in '" + text + "'");
  return text[0] == 'D' ? BoundConstraint::diameter(d, value) : BoundConstraint::girth(d, value);
}

enum class BoundMethod { kRootSolve, kTridiagonal, kClosedForm };

inline const char* to_string(BoundMethod m) {
  switch (m) {
    case BoundMethod::kRootSolve: return "root-solve";
    case BoundMethod::kTridiagonal: return "tridiagonal";
    case BoundMethod::kClosedForm: return "closed-form";
  }
  return "?";
}

struct BoundResult {
  double theta = 0.0;
  double lambda = 0.0;  // the bound: d - 2 sqrt(d-1) cos(theta)
  BoundMethod method = BoundMethod::kTridiagonal;
  double cross_check = 0.0;  // lambda from the independent route
};

class BoundConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kMethodAgreement = 1e-9;
inline constexpr double kThetaTolerance = 1e-12;
inline constexpr double kAttainTolerance = 1e-7;

/// d - 2 sqrt(d-1) cos(theta).
inline double lambda_from_theta(int d, double theta) {
  return d - 2.0 * std::sqrt(d - 1.0) * std::cos(theta);
}

/// Corner parameters of the level matrix whose smallest eigenvalue is the
/// bound: (d,d,d) even diameter, (d,d,2d-1) odd diameter, (d+1,d-1,2d-1)
/// even girth, (d,d-1,d+1) odd girth.
inline TridiagonalSystem level_matrix(const BoundConstraint& c) {
  const double d = c.d;
  switch (c.kind) {
    case ConstraintKind::kEvenDiameter: return {c.K, d, d, d, d};
    case ConstraintKind::kOddDiameter: return {c.K, d, d, 2 * d - 1, d};
    case ConstraintKind::kEvenGirth: return {c.K, d + 1, d - 1, 2 * d - 1, d};
    case ConstraintKind::kOddGirth: return {c.K, d, d - 1, d + 1, d};
  }
  return {};
}

/// Right-hand side N/Q of tan(theta K) = N(theta)/Q(theta), as a pair (N, Q),
/// for the three transcendental cases. The odd-diameter form here is the one
/// printed with the theorem; tan_rhs_odd_diameter_lemma gives the
/// sign-rearranged variant.
inline std::pair<double, double> tan_rhs(const BoundConstraint& c, double theta) {
  const double d = c.d;
  const double r = std::sqrt(d - 1.0);
  const double s = std::sin(theta);
  const double co = std::cos(theta);
  switch (c.kind) {
    case ConstraintKind::kEvenDiameter: return {-d * s, (d - 2.0) * co};
    case ConstraintKind::kOddDiameter: return {-(2.0 * r * co + d) * s, r * (d - 2.0 * co * co) + (d - 2.0) * co};
    case ConstraintKind::kOddGirth: return {-s, 1.0 / r + co};
    case ConstraintKind::kEvenGirth: return {0.0, 1.0};
  }
  return {0.0, 1.0};
}

inline std::pair<double, double> tan_rhs_odd_diameter_lemma(int d, double theta) {
  const double r = std::sqrt(d - 1.0);
  const double s = std::sin(theta);
  const double co = std::cos(theta);
  return {(2.0 * r * co + d) * s, r * (2.0 * co * co - d) + (2.0 - d) * co};
}

/// sin(K theta) Q - cos(K theta) N: continuous, and zero exactly where the
/// tan equation holds away from its poles.
inline double tan_residual(const BoundConstraint& c, double theta) {
  const auto [num, den] = tan_rhs(c, theta);
  return std::sin(c.K * theta) * den - std::cos(c.K * theta) * num;
}

/// Smallest root of the tan equation in (pi/(2K), pi/K]: scan for the first
/// sign change of the pole-free residual, then bisect to kThetaTolerance.
inline double solve_theta(const BoundConstraint& c) {
  const double lo = std::numbers::pi / (2.0 * c.K);
  const double hi = std::numbers::pi / c.K;
  if (c.kind == ConstraintKind::kEvenGirth) return hi;
  constexpr int kScan = 512;
  double a = lo;
  double fa = tan_residual(c, a);
  for (int i = 1; i <= kScan; ++i) {
    const double b = lo + (hi - lo) * i / kScan;
    const double fb = tan_residual(c, b);
    if (fb == 0.0) return b;
    if ((fa < 0.0) != (fb < 0.0)) {
      double left = a;
      double right = b;
      double fl = fa;
      while (right - left > kThetaTolerance) {
        const double mid = 0.5 * (left + right);
        if (mid <= left || mid >= right) break;
        const double fm = tan_residual(c, mid);
        if ((fl < 0.0) == (fm < 0.0)) {
          left = mid;
          fl = fm;
        } else {
          right = mid;
        }
      }
      return 0.5 * (left + right);
    }
    a = b;
    fa = fb;
  }
  throw BoundConsistencyError("no root of the tan equation in (pi/2K, pi/K] for " + c.label() +
                              " d=" + std::to_string(c.d));
}

/// Closed forms for D <= 6 and g <= 6; nullopt elsewhere.
inline std::optional<double> closed_form_bound(const BoundConstraint& c) {
  const double d = c.d;
  if (c.is_diameter()) {
    switch (c.value()) {
      case 1: return d + 1.0;
      case 2: return d;
      case 3: return d - 1.0;
      case 4: return d - std::sqrt(d);
      case 5: return d - 0.5 - std::sqrt(d - 0.75);
      case 6: return d - std::sqrt(2.0 * d - 1.0);
      default: return std::nullopt;
    }
  }
  switch (c.value()) {
    case 3: return d + 1.0;
    case 4: return d;
    case 5: return d + 0.5 - std::sqrt(d - 0.75);
    case 6: return d - std::sqrt(d - 1.0);
    default: return std::nullopt;
  }
}

/// Attainable upper bound on the algebraic connectivity of a d-regular graph
/// under the constraint. The level-matrix eigenvalue (Sturm bisection) is the
/// reported value; the tan-equation root is computed independently and the
/// two must agree to kMethodAgreement.
inline BoundResult ac_upper_bound(const BoundConstraint& c) {
  c.validate();
  const double d = c.d;
  if (c.is_diameter() && c.K == 1) {
    // D = 1 (complete graph) and D = 2 (complete bipartite graph).
    const double lambda = c.value() == 1 ? d + 1.0 : d;
    const double theta = std::acos((d - lambda) / (2.0 * std::sqrt(d - 1.0)));
    return {theta, lambda, BoundMethod::kClosedForm, lambda};
  }
  const double theta = solve_theta(c);
  const double from_root = lambda_from_theta(c.d, theta);
  const double from_matrix = tridiag_smallest_eigenvalue(level_matrix(c));
  if (!(std::abs(from_root - from_matrix) <= kMethodAgreement)) {
    std::ostringstream msg;
    msg << std::setprecision(17) << "bound methods disagree for " << c.label() << " d=" << c.d
        << ": root-solve " << from_root << " vs tridiagonal " << from_matrix;
    throw BoundConsistencyError(msg.str());
  }
  return {theta, from_matrix, BoundMethod::kTridiagonal, from_root};
}

inline long long int_pow(long long base, int exp) {
  long long r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

/// Order forced on every maximal graph with D = 2K - 1:
/// two K-level Bethe trees, 2 (d (d-1)^(K-1) - 2) / (d - 2).
inline long long odd_diameter_exact_order(int d, int K) {
  if (d < 3 || K < 2) throw std::invalid_argument("odd_diameter_exact_order needs d >= 3, K >= 2");
  return 2 * (d * int_pow(d - 1, K - 1) - 2) / (d - 2);
}

/// Lower bound on the order of a maximal graph with D = 2K:
/// 4 ((d-1)^K - 1) / (d - 2).
inline long long even_diameter_min_order(int d, int K) {
  if (d < 3 || K < 1) throw std::invalid_argument("even_diameter_min_order needs d >= 3, K >= 1");
  return 4 * (int_pow(d - 1, K) - 1) / (d - 2);
}

/// Moore bound for degree d and girth g.
inline long long moore_bound(int d, int g) {
  if (d < 3 || g < 3) throw std::invalid_argument("moore_bound needs d >= 3, g >= 3");
  long long sum = 0;
  if (g % 2 == 1) {
    const int K = (g - 1) / 2;
    for (int j = 0; j < K; ++j) sum += int_pow(d - 1, j);
    return 1 + d * sum;
  }
  const int K = g / 2;
  for (int j = 0; j < K; ++j) sum += int_pow(d - 1, j);
  return 2 * sum;
}

struct CertificationReport {
  BoundConstraint constraint;
  int order = 0;
  bool regular = false;
  int degree = -1;
  int girth = kInfinity;
  int diameter = kInfinity;
  bool connected = false;
  bool bipartite = false;
  std::optional<double> ac;  // nullopt when disconnected
  double bound = 0.0;
  bool constraint_satisfied = false;
  bool attained = false;
  /// Order the structure theorems force: exact for odd diameter and for
  /// girth (Moore graphs), a minimum for even diameter.
  long long required_order = 0;
  bool order_is_exact = false;
  bool structure_ok = true;
};

/// Measures the graph against the constraint. Failures are report fields.
inline CertificationReport certify_maximal(const Graph& g, const BoundConstraint& c) {
  CertificationReport r;
  r.constraint = c;
  r.order = g.order();
  r.degree = g.regular_degree();
  r.regular = r.degree >= 0;
  r.girth = girth(g);
  r.diameter = diameter(g);
  r.connected = is_connected(g);
  r.bipartite = is_bipartite(g);
  r.bound = ac_upper_bound(c).lambda;
  if (r.connected && g.order() >= 2) r.ac = algebraic_connectivity(g);
  r.constraint_satisfied = (c.is_diameter() ? r.diameter : r.girth) == c.value();

  switch (c.kind) {
    case ConstraintKind::kOddDiameter:
      if (c.K >= 2) {
        r.required_order = odd_diameter_exact_order(c.d, c.K);
        r.order_is_exact = true;
        r.structure_ok = r.bipartite && r.order == r.required_order;
      } else {
        r.required_order = c.d + 1;
        r.order_is_exact = true;
        r.structure_ok = r.order == r.required_order;
      }
      break;
    case ConstraintKind::kEvenDiameter:
      r.required_order = c.K >= 2 ? even_diameter_min_order(c.d, c.K) : 2LL * c.d;
      r.structure_ok = r.order >= r.required_order;
      break;
    case ConstraintKind::kEvenGirth:
    case ConstraintKind::kOddGirth:
      r.required_order = moore_bound(c.d, c.value());
      r.order_is_exact = true;
      r.structure_ok = r.order == r.required_order;
      break;
  }

  r.attained = r.regular && r.degree == c.d && r.constraint_satisfied && r.ac.has_value() &&
               *r.ac >= r.bound - kAttainTolerance;
  return r;
}

enum class Attainability { kAttainable, kUnattainable, kUnknown };

inline const char* to_string(Attainability a) {
  switch (a) {
    case Attainability::kAttainable: return "attainable";
    case Attainability::kUnattainable: return "unattainable";
    case Attainability::kUnknown: return "unknown";
  }
  return "?";
}

/// Known status of the bound for 3 <= d <= 11 and values 3..13, as recorded
/// by the published search results; kUnknown outside that window.
inline Attainability known_attainability(const BoundConstraint& c) {
  const int v = c.value();
  const int d = c.d;
  if (d < 3 || d > 11 || v < 3 || v > 13) return Attainability::kUnknown;
  using A = Attainability;
  if (c.is_diameter()) {
    if (v == 3) return A::kAttainable;
    if (v == 4) return d <= 10 ? A::kAttainable : A::kUnknown;
    if (v == 5) return d <= 4 ? A::kAttainable : A::kUnknown;
    if (v <= 9) return d == 3 ? A::kAttainable : A::kUnknown;
    return A::kUnknown;
  }
  switch (v) {
    case 3:
    case 4: return A::kAttainable;
    case 5: return d == 3 ? A::kAttainable : A::kUnattainable;
    case 6:
      if (d == 7) return A::kUnattainable;
      return d == 11 ? A::kUnknown : A::kAttainable;
    case 8:
    case 12: return d == 3 ? A::kAttainable : A::kUnknown;
    default: return A::kUnattainable;  // odd girth 7..13
  }
}

/// Bound grid for rows 3..13 and columns d = 3..11, four decimals, either as
/// aligned text or CSV.
inline std::string format_bound_table(bool diameter_table, bool csv) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4);
  const char* row_name = diameter_table ? "D" : "g";
  if (csv) {
    out << row_name;
    for (int d = 3; d <= 11; ++d) out << ',' << d;
    out << '\n';
  } else {
    out << "Upper bound for AC in terms of " << (diameter_table ? "diameter" : "girth") << '\n';
    out << std::setw(4) << (std::string(row_name) + "\\d");
    for (int d = 3; d <= 11; ++d) out << std::setw(9) << d;
    out << '\n';
  }
  for (int v = 3; v <= 13; ++v) {
    out << (csv ? std::setw(0) : std::setw(4)) << v;
    for (int d = 3; d <= 11; ++d) {
      const auto c = diameter_table ? BoundConstraint::diameter(d, v) : BoundConstraint::girth(d, v);
      const double lambda = ac_upper_bound(c).lambda;
      if (csv) {
        out << ',' << lambda;
      } else {
        out << std::setw(9) << lambda;
      }
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace maxconn

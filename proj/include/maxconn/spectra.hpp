#pragma once

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "maxconn/graph.hpp"
#include "maxconn/metrics.hpp"

namespace maxconn {

/// Default grouping tolerance when reading multiplicities off a spectrum.
inline constexpr double kMultiplicityTolerance = 1e-7;

/// Real symmetric n x n matrix, row-major. Symmetry is exact: the
/// constructor rejects any entry pair that differs at all.
class DenseSymmetricMatrix {
 public:
  DenseSymmetricMatrix() = default;
  explicit DenseSymmetricMatrix(int n) : n_(n), entries_(static_cast<std::size_t>(n) * n, 0.0) {}

  DenseSymmetricMatrix(int n, std::vector<double> entries) : n_(n), entries_(std::move(entries)) {
    if (entries_.size() != static_cast<std::size_t>(n) * n) {
      throw std::invalid_argument("matrix entry count does not match dimension");
    }
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if ((*this)(i, j) != (*this)(j, i)) throw std::invalid_argument("matrix is not symmetric");
      }
    }
  }

  int dimension() const noexcept { return n_; }
  double operator()(int i, int j) const noexcept { return entries_[static_cast<std::size_t>(i) * n_ + j]; }

  /// Writes both (i, j) and (j, i).
  void set(int i, int j, double value) noexcept {
    entries_[static_cast<std::size_t>(i) * n_ + j] = value;
    entries_[static_cast<std::size_t>(j) * n_ + i] = value;
  }

  const std::vector<double>& entries() const noexcept { return entries_; }

 private:
  int n_ = 0;
  std::vector<double> entries_;
};

struct SpectrumResult {
  std::vector<double> eigenvalues;  // ascending
  double multiplicity_tolerance = kMultiplicityTolerance;

  /// (value, multiplicity) pairs; a value joins the current group while it
  /// stays within the tolerance of the group's first member.
  std::vector<std::pair<double, int>> grouped() const {
    std::vector<std::pair<double, int>> groups;
    for (double x : eigenvalues) {
      if (!groups.empty() && x - groups.back().first <= multiplicity_tolerance) {
        ++groups.back().second;
      } else {
        groups.emplace_back(x, 1);
      }
    }
    return groups;
  }
};

inline DenseSymmetricMatrix laplacian(const Graph& g) {
  DenseSymmetricMatrix m(g.order());
  for (int v = 0; v < g.order(); ++v) m.set(v, v, g.degree(v));
  for (auto [u, v] : g.edges()) m.set(u, v, -1.0);
  return m;
}

inline DenseSymmetricMatrix adjacency_matrix(const Graph& g) {
  DenseSymmetricMatrix m(g.order());
  for (auto [u, v] : g.edges()) m.set(u, v, 1.0);
  return m;
}

/// All eigenvalues, ascending. Householder tridiagonalisation followed by
/// implicit symmetric QR (Eigen's SelfAdjointEigenSolver).
inline SpectrumResult symmetric_eigenvalues(const DenseSymmetricMatrix& m) {
  const int n = m.dimension();
  if (n > 2048) throw std::invalid_argument("dense eigensolver limited to n <= 2048");
  SpectrumResult result;
  if (n == 0) return result;
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> view(
      m.entries().data(), n, n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(Eigen::MatrixXd(view), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("symmetric eigensolver did not converge");
  }
  const auto& values = solver.eigenvalues();
  result.eigenvalues.assign(values.data(), values.data() + n);
  std::sort(result.eigenvalues.begin(), result.eigenvalues.end());
  return result;
}

inline SpectrumResult laplacian_spectrum(const Graph& g) { return symmetric_eigenvalues(laplacian(g)); }

inline SpectrumResult adjacency_spectrum(const Graph& g) { return symmetric_eigenvalues(adjacency_matrix(g)); }

class DisconnectedGraphError : public std::domain_error {
 public:
  DisconnectedGraphError() : std::domain_error("graph is disconnected; algebraic connectivity is 0") {}
};

/// Second-smallest Laplacian eigenvalue. Throws DisconnectedGraphError for
/// disconnected input so callers can prune instead of comparing against 0.
inline double algebraic_connectivity(const Graph& g) {
  if (g.order() < 2) throw std::invalid_argument("algebraic connectivity needs at least two vertices");
  if (!is_connected(g)) throw DisconnectedGraphError();
  return laplacian_spectrum(g).eigenvalues[1];
}

/// K x K tridiagonal matrix with diagonal (a, d, ..., d, c), superdiagonal
/// (-b, -(d-1), ..., -(d-1)) and subdiagonal all -1. For K == 1 the matrix
/// is the single entry c.
struct TridiagonalSystem {
  int K = 1;
  double a = 0.0;
  double b = 1.0;
  double c = 0.0;
  double d = 3.0;

  void validate() const {
    if (K < 1) throw std::invalid_argument("tridiagonal system needs K >= 1");
    if (!(b > 0.0)) throw std::invalid_argument("tridiagonal system needs b > 0");
    if (!(d >= 3.0)) throw std::invalid_argument("tridiagonal system needs d >= 3");
  }

  std::vector<double> diagonal() const {
    std::vector<double> diag(K, d);
    if (K == 1) {
      diag[0] = c;
    } else {
      diag.front() = a;
      diag.back() = c;
    }
    return diag;
  }

  /// Off-diagonal of the diagonally similar symmetric matrix: the geometric
  /// mean of each super/sub pair, sqrt(b) first and sqrt(d-1) after.
  std::vector<double> symmetric_offdiagonal() const {
    std::vector<double> off(K > 0 ? K - 1 : 0, std::sqrt(d - 1.0));
    if (!off.empty()) off.front() = std::sqrt(b);
    return off;
  }

  DenseSymmetricMatrix symmetrized() const {
    DenseSymmetricMatrix m(K);
    const auto diag = diagonal();
    const auto off = symmetric_offdiagonal();
    for (int i = 0; i < K; ++i) m.set(i, i, diag[i]);
    for (int i = 0; i + 1 < K; ++i) m.set(i, i + 1, off[i]);
    return m;
  }
};

/// Number of eigenvalues of the symmetric tridiagonal (diag, off) strictly
/// below x, from the signs of the LDL^T pivots of T - xI.
inline int sturm_count(const std::vector<double>& diag, const std::vector<double>& off, double x) {
  int count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    const double coupling = i == 0 ? 0.0 : off[i - 1] * off[i - 1];
    q = diag[i] - x - (i == 0 ? 0.0 : coupling / q);
    if (q == 0.0) q = -1e-300;
    if (q < 0.0) ++count;
  }
  return count;
}

/// index-th smallest eigenvalue (0-based) of a symmetric tridiagonal matrix
/// by Sturm bisection to the given absolute tolerance.
inline double tridiagonal_eigenvalue(const std::vector<double>& diag, const std::vector<double>& off,
                                     int index, double tolerance = 1e-12) {
  const int n = static_cast<int>(diag.size());
  double lo = diag[0];
  double hi = diag[0];
  for (int i = 0; i < n; ++i) {
    const double radius = (i > 0 ? std::abs(off[i - 1]) : 0.0) + (i + 1 < n ? std::abs(off[i]) : 0.0);
    lo = std::min(lo, diag[i] - radius);
    hi = std::max(hi, diag[i] + radius);
  }
  lo -= 1.0;
  hi += 1.0;
  for (int iter = 0; iter < 400 && hi - lo > tolerance; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (sturm_count(diag, off, mid) > index) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Smallest eigenvalue of the (nonsymmetric) tridiagonal system, via its
/// real symmetric similarity transform and Sturm bisection to 1e-12.
inline double tridiag_smallest_eigenvalue(const TridiagonalSystem& t) {
  t.validate();
  return tridiagonal_eigenvalue(t.diagonal(), t.symmetric_offdiagonal(), 0, 1e-12);
}

}  // namespace maxconn

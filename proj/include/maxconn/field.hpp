#pragma once

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace maxconn {

inline bool is_prime(int p) {
  if (p < 2) return false;
  for (int i = 2; i * i <= p; ++i) {
    if (p % i == 0) return false;
  }
  return true;
}

/// Writes q = p^k with p prime; false when q is not a prime power.
inline bool prime_power(int q, int* p_out = nullptr, int* k_out = nullptr) {
  if (q < 2) return false;
  int p = 2;
  while (q % p != 0) ++p;
  int k = 0;
  int rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++k;
  }
  if (rest != 1) return false;
  if (p_out) *p_out = p;
  if (k_out) *k_out = k;
  return true;
}

/// GF(p^k). Elements are the integers 0..q-1, read as base-p digit vectors
/// of polynomial coefficients (digit i = coefficient of x^i). Addition and
/// multiplication are tabulated at construction.
class FiniteField {
 public:
  static constexpr int kMaxOrder = 1024;

  FiniteField(int p, int k) : p_(p), k_(k) {
    if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
    if (k < 1) throw std::invalid_argument("extension degree must be >= 1");
    q_ = 1;
    for (int i = 0; i < k; ++i) {
      q_ *= p;
      if (q_ > kMaxOrder) throw std::invalid_argument("field order exceeds 1024");
    }
    find_irreducible();
    build_tables();
  }

  /// GF(q) for a prime power q.
  static FiniteField of_order(int q) {
    int p = 0;
    int k = 0;
    if (!prime_power(q, &p, &k)) throw std::invalid_argument(std::to_string(q) + " is not a prime power");
    return FiniteField(p, k);
  }

  int characteristic() const noexcept { return p_; }
  int degree() const noexcept { return k_; }
  int order() const noexcept { return q_; }

  /// Coefficients c_0..c_k of the monic reduction polynomial.
  const std::vector<int>& reduction_polynomial() const noexcept { return modulus_; }

  int add(int a, int b) const { return add_[a * q_ + b]; }
  int mul(int a, int b) const { return mul_[a * q_ + b]; }
  int neg(int a) const { return neg_[a]; }
  int sub(int a, int b) const { return add(a, neg(b)); }

  int inv(int a) const {
    if (a == 0) throw std::domain_error("zero has no inverse");
    return inv_[a];
  }

 private:
  std::vector<int> digits(int a) const {
    std::vector<int> out(k_);
    for (int i = 0; i < k_; ++i) {
      out[i] = a % p_;
      a /= p_;
    }
    return out;
  }

  int from_digits(const std::vector<int>& c) const {
    int a = 0;
    for (int i = k_ - 1; i >= 0; --i) a = a * p_ + c[i];
    return a;
  }

  // Remainder of a polynomial (low-to-high coefficients) by the monic modulus.
  std::vector<int> reduce(std::vector<int> c, const std::vector<int>& m) const {
    const int deg_m = static_cast<int>(m.size()) - 1;
    for (int i = static_cast<int>(c.size()) - 1; i >= deg_m; --i) {
      const int lead = c[i];
      if (lead == 0) continue;
      for (int j = 0; j <= deg_m; ++j) {
        c[i - deg_m + j] = ((c[i - deg_m + j] - lead * m[j]) % p_ + p_) % p_;
      }
    }
    c.resize(std::max(deg_m, 0));
    return c;
  }

  // Trial division by every monic polynomial of degree 1..k/2.
  bool irreducible(const std::vector<int>& m) const {
    const int deg_m = static_cast<int>(m.size()) - 1;
    for (int dd = 1; 2 * dd <= deg_m; ++dd) {
      int count = 1;
      for (int i = 0; i < dd; ++i) count *= p_;
      for (int low = 0; low < count; ++low) {
        std::vector<int> f(dd + 1);
        int t = low;
        for (int i = 0; i < dd; ++i) {
          f[i] = t % p_;
          t /= p_;
        }
        f[dd] = 1;
        const auto r = reduce(m, f);
        if (std::all_of(r.begin(), r.end(), [](int x) { return x == 0; })) return false;
      }
    }
    return true;
  }

  void find_irreducible() {
    for (int low = 0; low < q_; ++low) {
      std::vector<int> m = digits(low);
      m.push_back(1);
      if (k_ == 1 || irreducible(m)) {
        modulus_ = m;
        return;
      }
    }
    throw std::logic_error("no irreducible polynomial found");
  }

  void build_tables() {
    add_.assign(static_cast<std::size_t>(q_) * q_, 0);
    mul_.assign(static_cast<std::size_t>(q_) * q_, 0);
    neg_.assign(q_, 0);
    inv_.assign(q_, 0);
    std::vector<std::vector<int>> dig(q_);
    for (int a = 0; a < q_; ++a) dig[a] = digits(a);
    for (int a = 0; a < q_; ++a) {
      std::vector<int> n(k_);
      for (int i = 0; i < k_; ++i) n[i] = (p_ - dig[a][i]) % p_;
      neg_[a] = from_digits(n);
      for (int b = 0; b < q_; ++b) {
        std::vector<int> s(k_);
        for (int i = 0; i < k_; ++i) s[i] = (dig[a][i] + dig[b][i]) % p_;
        add_[a * q_ + b] = from_digits(s);
        std::vector<int> prod(2 * k_ - 1, 0);
        for (int i = 0; i < k_; ++i) {
          for (int j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + dig[a][i] * dig[b][j]) % p_;
        }
        mul_[a * q_ + b] = from_digits(reduce(prod, modulus_));
      }
    }
    for (int a = 1; a < q_; ++a) {
      for (int b = 1; b < q_; ++b) {
        if (mul_[a * q_ + b] == 1) {
          inv_[a] = b;
          break;
        }
      }
      if (inv_[a] == 0) throw std::logic_error("reduction polynomial is not irreducible");
    }
  }

  int p_;
  int k_;
  int q_ = 1;
  std::vector<int> modulus_;
  std::vector<int> add_;
  std::vector<int> mul_;
  std::vector<int> neg_;
  std::vector<int> inv_;
};

/// Point or line of PG(2,q), scaled so its first nonzero coordinate is 1.
struct ProjectiveTriple {
  std::array<int, 3> coords{};

  static ProjectiveTriple normalized(const FiniteField& f, std::array<int, 3> c) {
    int lead = 0;
    while (lead < 3 && c[lead] == 0) ++lead;
    if (lead == 3) throw std::invalid_argument("the zero triple is not a projective point");
    const int s = f.inv(c[lead]);
    for (auto& x : c) x = f.mul(x, s);
    return {c};
  }

  int dot(const FiniteField& f, const ProjectiveTriple& o) const {
    int s = 0;
    for (int i = 0; i < 3; ++i) s = f.add(s, f.mul(coords[i], o.coords[i]));
    return s;
  }

  auto operator<=>(const ProjectiveTriple&) const = default;
};

/// All q^2 + q + 1 normalized triples in lexicographic order.
inline std::vector<ProjectiveTriple> projective_triples(const FiniteField& f) {
  const int q = f.order();
  std::vector<ProjectiveTriple> out;
  out.reserve(static_cast<std::size_t>(q) * q + q + 1);
  out.push_back({{0, 0, 1}});
  for (int c = 0; c < q; ++c) out.push_back({{0, 1, c}});
  for (int b = 0; b < q; ++b) {
    for (int c = 0; c < q; ++c) out.push_back({{1, b, c}});
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace maxconn

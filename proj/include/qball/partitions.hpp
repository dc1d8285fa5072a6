#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <string>
#include <vector>

#include "context.hpp"
#include "linalg.hpp"

namespace qball {

class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw dimension_error("partition needs at least one part");
    for (size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] < 0) throw std::invalid_argument("partition parts must be nonnegative");
      if (i > 0 && parts_[i] > parts_[i - 1])
        throw std::invalid_argument("partition parts must be weakly decreasing");
    }
  }
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

  static Partition zero(int n) { return Partition(std::vector<int>(n, 0)); }

  int n() const { return static_cast<int>(parts_.size()); }
  int operator[](int i) const { return parts_[i]; }
  const std::vector<int>& parts() const { return parts_; }
  int weight() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

  // lambda + delta, strictly decreasing
  std::vector<int> shifted() const {
    std::vector<int> e(parts_);
    for (int i = 0; i < n(); ++i) e[i] += n() - 1 - i;
    return e;
  }

  std::string str() const {
    std::string s = "(";
    for (int i = 0; i < n(); ++i) s += (i ? "," : "") + std::to_string(parts_[i]);
    return s + ")";
  }

  friend bool operator==(const Partition& a, const Partition& b) { return a.parts_ == b.parts_; }
  friend bool operator<(const Partition& a, const Partition& b) { return a.parts_ < b.parts_; }

 private:
  std::vector<int> parts_;
};

// Partition from a strictly decreasing exponent tuple e = lambda + delta.
inline Partition from_shifted(std::vector<int> e) {
  const int n = static_cast<int>(e.size());
  for (int i = 0; i < n; ++i) e[i] -= n - 1 - i;
  return Partition(std::move(e));
}

namespace detail {
inline void fill_partitions(int n, int weight, int maxpart, std::vector<int>& cur,
                            std::vector<Partition>& out) {
  if (static_cast<int>(cur.size()) == n) {
    if (weight == 0) out.emplace_back(cur);
    return;
  }
  const int slots = n - static_cast<int>(cur.size());
  for (int v = std::min(weight, maxpart); v >= 0; --v) {
    if (v * slots < weight) break;
    cur.push_back(v);
    fill_partitions(n, weight - v, v, cur, out);
    cur.pop_back();
  }
}
}  // namespace detail

// Partitions of exactly `weight` with n parts, lexicographically decreasing.
inline std::vector<Partition> partitions_of(int n, int weight) {
  std::vector<Partition> out;
  std::vector<int> cur;
  detail::fill_partitions(n, weight, weight, cur, out);
  return out;
}

inline std::vector<Partition> enumerate_partitions(int n, int max_weight) {
  if (n < 1) throw dimension_error("n must be positive");
  std::vector<Partition> out;
  for (int w = 0; w <= max_weight; ++w) {
    auto layer = partitions_of(n, w);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

// Number of partitions of w into at most n parts.
inline long count_partitions(int n, int w) {
  std::vector<std::vector<long>> t(n + 1, std::vector<long>(w + 1, 0));
  for (int k = 0; k <= n; ++k) t[k][0] = 1;
  for (int k = 1; k <= n; ++k)
    for (int m = 1; m <= w; ++m) t[k][m] = t[k - 1][m] + (m >= k ? t[k][m - k] : 0);
  return t[n][w];
}

inline bool dominance_leq(const Partition& eta, const Partition& lambda) {
  if (eta.n() != lambda.n()) throw dimension_error("dominance_leq: length mismatch");
  long a = 0, b = 0;
  for (int k = 0; k < eta.n(); ++k) {
    a += eta[k];
    b += lambda[k];
    if (a > b) return false;
  }
  return true;
}

inline bool dominance_less(const Partition& eta, const Partition& lambda) {
  return !(eta == lambda) && dominance_leq(eta, lambda);
}

inline Partition delta_staircase(int n) {
  std::vector<int> d(n);
  for (int i = 0; i < n; ++i) d[i] = n - 1 - i;
  return Partition(d);
}

// u = q^{-2(lambda+delta)}
inline std::vector<double> grid_point(const Partition& lambda, const QContext& ctx) {
  std::vector<double> u;
  for (int e : lambda.shifted()) u.push_back(ctx.ppow(-e));
  return u;
}

template <class T>
T elementary(int k, const std::vector<T>& z) {
  const int n = static_cast<int>(z.size());
  if (k < 0 || k > n) return T(0);
  std::vector<T> e(k + 1, T(0));
  e[0] = T(1);
  for (int i = 0; i < n; ++i)
    for (int j = std::min(k, i + 1); j >= 1; --j) e[j] += z[i] * e[j - 1];
  return e[k];
}

// (e_1(u), q^2 e_2(u), ..., q^{n(n-1)} e_n(u)) at u = q^{-2(lambda+delta)}
inline std::vector<double> sigma_point(const Partition& lambda, const QContext& ctx) {
  auto u = grid_point(lambda, ctx);
  std::vector<double> s;
  for (int k = 1; k <= lambda.n(); ++k) s.push_back(ctx.qpow(double(k * (k - 1))) * elementary(k, u));
  return s;
}

template <class T>
T vandermonde(const std::vector<T>& z) {
  T r = T(1);
  for (size_t i = 0; i < z.size(); ++i)
    for (size_t j = i + 1; j < z.size(); ++j) r *= z[i] - z[j];
  return r;
}

// Sum over the distinct permutations of lambda of z^alpha.
template <class T>
T monomial(const Partition& lambda, const std::vector<T>& z) {
  if (static_cast<int>(z.size()) != lambda.n()) throw dimension_error("monomial: length mismatch");
  std::vector<int> a(lambda.parts().rbegin(), lambda.parts().rend());
  T sum = T(0);
  do {
    T t = T(1);
    for (size_t i = 0; i < z.size(); ++i)
      for (int r = 0; r < a[i]; ++r) t *= z[i];
    sum += t;
  } while (std::next_permutation(a.begin(), a.end()));
  return sum;
}

// Bialternant det(z_i^{lambda_j+n-j}) / Vandermonde(z).
template <class T>
T schur(const Partition& lambda, const std::vector<T>& z) {
  const int n = lambda.n();
  if (static_cast<int>(z.size()) != n) throw dimension_error("schur: length mismatch");
  using std::abs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      auto scale = std::max(abs(z[i]), abs(z[j]));
      if (abs(z[i] - z[j]) <= 1e-12 * scale)
        throw coincident_error("schur: coordinates coincide");
    }
  auto e = lambda.shifted();
  std::vector<T> m(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      T v = T(1);
      for (int r = 0; r < e[j]; ++r) v *= z[i];
      m[i * n + j] = v;
    }
  return determinant(m, n) / vandermonde(z);
}

enum class SymKind { monomial, elementary, schur, vandermonde };

inline cplx sym_eval(SymKind kind, const Partition& lambda, int k, const std::vector<cplx>& z) {
  switch (kind) {
    case SymKind::monomial: return monomial(lambda, z);
    case SymKind::elementary: return elementary(k, z);
    case SymKind::schur: return schur(lambda, z);
    case SymKind::vandermonde: return vandermonde(z);
  }
  return 0.0;
}

// (l1-l2, ..., l_{n-1}-l_n, 2 l_n, l_{n-1}-l_n, ..., l1-l2)
inline std::vector<int> hat_weight(const Partition& lambda) {
  const int n = lambda.n();
  std::vector<int> w;
  for (int i = 0; i + 1 < n; ++i) w.push_back(lambda[i] - lambda[i + 1]);
  w.push_back(2 * lambda[n - 1]);
  for (int i = n - 2; i >= 0; --i) w.push_back(lambda[i] - lambda[i + 1]);
  return w;
}

}  // namespace qball

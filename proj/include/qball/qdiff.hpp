#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "context.hpp"
#include "partitions.hpp"
#include "radial.hpp"

namespace qball {

struct Stencil {
  double c_minus;  // on f(q^{-2} u)
  double c_zero;   // on f(u)
  double c_plus;   // on f(q^2 u)
};

inline Stencil box_stencil(double u, const QContext& ctx) {
  if (!(u > 0.0)) throw std::domain_error("box_stencil: u must be positive");
  const double s = 1.0 / ctx.q() - ctx.q();
  const double d = s * s * u;
  const double cm = (1.0 - u / ctx.p()) / d;
  const double cp = (1.0 - u) / d;
  return {cm, -(cm + cp), cp};
}

// Stencil at u = q^{-2e}, written with 1/u = p^e so large e does not overflow.
inline Stencil box_stencil_at(int e, const QContext& ctx) {
  const double s = 1.0 / ctx.q() - ctx.q();
  const double inv_u = ctx.ppow(e);
  const double cm = (inv_u - 1.0 / ctx.p()) / (s * s);
  const double cp = e == 0 ? 0.0 : (inv_u - 1.0) / (s * s);
  return {cm, -(cm + cp), cp};
}

// Function on exponent tuples e (u_i = q^{-2 e_i}, e_i >= 0), finitely supported.
using GridFunction = std::map<std::vector<int>, cplx>;

// Single-axis application of the box operator.
inline GridFunction apply_box(const GridFunction& f, int axis, const QContext& ctx) {
  std::set<std::vector<int>> targets;
  for (auto& [e, v] : f)
    for (int d = -1; d <= 1; ++d) {
      auto t = e;
      t[axis] += d;
      if (t[axis] >= 0) targets.insert(t);
    }
  GridFunction out;
  auto get = [&](const std::vector<int>& e) {
    auto it = f.find(e);
    return it == f.end() ? cplx(0.0) : it->second;
  };
  for (const auto& t : targets) {
    Stencil s = box_stencil_at(t[axis], ctx);
    auto up = t, down = t;
    up[axis] += 1;
    down[axis] -= 1;
    cplx v = s.c_minus * get(up) + s.c_zero * get(t);
    if (t[axis] > 0) v += s.c_plus * get(down);
    if (v != cplx(0.0)) out[t] = v;
  }
  return out;
}

namespace detail {

// Sign of the permutation sorting e into strictly decreasing order; 0 on repeats.
inline int sort_sign(std::vector<int>& e) {
  int sign = 1;
  const int n = static_cast<int>(e.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j + 1 < n - i; ++j) {
      if (e[j] == e[j + 1]) return 0;
      if (e[j] < e[j + 1]) {
        std::swap(e[j], e[j + 1]);
        sign = -sign;
      }
    }
  return sign;
}

// Vandermonde(u(a)) / Vandermonde(u(b)) for exponent tuples, as a product of O(1) ratios.
inline double vandermonde_ratio(const std::vector<int>& a, const std::vector<int>& b, const QContext& ctx) {
  double r = 1.0;
  const int n = static_cast<int>(a.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      // (p^{-a_i} - p^{-a_j}) / (p^{-b_i} - p^{-b_j}), scaled by p^{b_max}
      int m = std::max(b[i], b[j]);
      double num = ctx.ppow(m - a[i]) - ctx.ppow(m - a[j]);
      double den = ctx.ppow(m - b[i]) - ctx.ppow(m - b[j]);
      r *= num / den;
    }
  return r;
}

inline void subsets(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace detail

inline std::vector<std::vector<int>> index_subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  detail::subsets(n, k, 0, cur, out);
  return out;
}

// Antisymmetric lift F(e) = sign * Vandermonde(u(e)) f(sort(e) - delta) / sqrt(n!).
inline GridFunction isometry_lift(const RadialFunction& f, const QContext& ctx) {
  const int n = f.n();
  double nf = 1;
  for (int i = 2; i <= n; ++i) nf *= i;
  GridFunction out;
  for (auto& [lam, v] : f.support()) {
    auto e = lam.shifted();
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    const double d = vandermonde(grid_point(lam, ctx)) / std::sqrt(nf);
    do {
      std::vector<int> t(n);
      for (int i = 0; i < n; ++i) t[i] = e[perm[i]];
      auto s = t;
      int sign = detail::sort_sign(s);
      out[t] = double(sign) * d * v;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return out;
}

// Inverse of isometry_lift on strictly decreasing tuples.
inline RadialFunction isometry_restrict(const GridFunction& F, int n, const QContext& ctx) {
  double nf = 1;
  for (int i = 2; i <= n; ++i) nf *= i;
  RadialFunction f(n);
  for (auto& [e, v] : F) {
    bool ordered = true;
    for (int i = 0; i + 1 < n; ++i) ordered = ordered && e[i] > e[i + 1];
    if (!ordered) continue;
    auto lam = from_shifted(e);
    f.set(lam, v * std::sqrt(nf) / vandermonde(grid_point(lam, ctx)));
  }
  return f;
}

struct LRadialResult {
  RadialFunction value;
  bool overflow = false;  // some output point needed data beyond the window
};

// L_k = Vandermonde^{-1} e_k(box_1, ..., box_n) Vandermonde on radial functions.
// With window >= 0 the input is regarded as the restriction of a function to
// |lambda| <= window; outputs are produced only where the stencil stays inside it.
inline LRadialResult l_radial(int k, const RadialFunction& f, const QContext& ctx, int window = -1) {
  const int n = f.n();
  if (k < 1 || k > n) throw std::out_of_range("l_radial: k out of range");
  auto subs = index_subsets(n, k);
  std::set<Partition> targets;
  for (auto& [lam, v] : f.support()) {
    if (v == cplx(0.0)) continue;
    auto e = lam.shifted();
    const int combos = static_cast<int>(std::pow(3, n));
    for (int c = 0; c < combos; ++c) {
      int code = c, nz = 0;
      std::vector<int> t(e);
      for (int i = 0; i < n; ++i) {
        int d = code % 3 - 1;
        code /= 3;
        t[i] += d;
        nz += d != 0;
      }
      if (nz > k) continue;
      bool ok = t[n - 1] >= 0;
      for (int i = 0; i + 1 < n; ++i) ok = ok && t[i] > t[i + 1];
      if (ok) targets.insert(from_shifted(t));
    }
  }

  LRadialResult res{RadialFunction(n), false};
  for (const auto& mu : targets) {
    if (window >= 0 && mu.weight() + k > window) {
      res.overflow = true;
      continue;
    }
    auto t = mu.shifted();
    std::vector<Stencil> st(n);
    for (int i = 0; i < n; ++i) st[i] = box_stencil_at(t[i], ctx);
    CompensatedSum<cplx> acc;
    for (const auto& S : subs) {
      const int combos = static_cast<int>(std::pow(3, k));
      for (int c = 0; c < combos; ++c) {
        int code = c;
        double coef = 1.0;
        std::vector<int> src(t);
        for (int idx : S) {
          int d = code % 3 - 1;
          code /= 3;
          // d = +1 reads f(q^{-2}u): exponent grows by one
          coef *= d == 1 ? st[idx].c_minus : d == 0 ? st[idx].c_zero : st[idx].c_plus;
          src[idx] += d;
        }
        if (coef == 0.0) continue;
        bool neg = false;
        for (int x : src) neg = neg || x < 0;
        if (neg) continue;
        auto sorted = src;
        int sign = detail::sort_sign(sorted);
        if (sign == 0) continue;
        cplx fv = f(from_shifted(sorted));
        if (fv == cplx(0.0)) continue;
        acc.add(coef * sign * detail::vandermonde_ratio(sorted, t, ctx) * fv);
      }
    }
    cplx v = acc.value();
    if (v != cplx(0.0)) res.value.set(mu, v);
  }
  return res;
}

struct Triplet {
  Partition row, col;
  double value;
};

// Matrix of L_k over the basis chi_lambda, |lambda| <= window.
class GridOperator {
 public:
  GridOperator(int n, int k, int window, const QContext& ctx) : n_(n), k_(k), window_(window) {
    basis_ = enumerate_partitions(n, window);
    for (size_t i = 0; i < basis_.size(); ++i) index_[basis_[i]] = static_cast<int>(i);
    for (const auto& lam : basis_) {
      auto r = l_radial(k, chi(lam), ctx);
      for (auto& [mu, v] : r.value.support()) {
        if (mu.weight() > window) {
          overflow_ = true;
          continue;
        }
        entries_.push_back({mu, lam, v.real()});
      }
    }
  }

  int n() const { return n_; }
  int k() const { return k_; }
  int window() const { return window_; }
  bool overflow() const { return overflow_; }
  const std::vector<Partition>& basis() const { return basis_; }
  const std::vector<Triplet>& entries() const { return entries_; }
  int index(const Partition& p) const { return index_.at(p); }

  std::vector<std::vector<double>> dense() const {
    const size_t N = basis_.size();
    std::vector<std::vector<double>> m(N, std::vector<double>(N, 0.0));
    for (auto& t : entries_) m[index_.at(t.row)][index_.at(t.col)] = t.value;
    return m;
  }

  double entry(const Partition& row, const Partition& col) const {
    for (auto& t : entries_)
      if (t.row == row && t.col == col) return t.value;
    return 0.0;
  }

 private:
  int n_, k_, window_;
  bool overflow_ = false;
  std::vector<Partition> basis_;
  std::map<Partition, int> index_;
  std::vector<Triplet> entries_;
};

inline GridOperator operator_matrix(int n, int k, int window, const QContext& ctx) {
  return GridOperator(n, k, window, ctx);
}

// Does mu - lambda lie in {-1,0,1}^n with at most k nonzero entries?
inline bool in_band(const Partition& mu, const Partition& lambda, int k) {
  int nz = 0;
  for (int i = 0; i < mu.n(); ++i) {
    int d = mu[i] - lambda[i];
    if (d < -1 || d > 1) return false;
    nz += d != 0;
  }
  return nz <= k;
}

inline double log_point_mass(const Partition& lambda, const QContext& ctx) {
  auto e = lambda.shifted();
  const int n = lambda.n();
  double s = std::log(norm_constant(n, ctx)) + n * std::log1p(-ctx.p());
  for (int i = 0; i < n; ++i) {
    s += e[i] * ctx.h();
    for (int j = i + 1; j < n; ++j)
      s += 2.0 * (e[i] * ctx.h() + std::log1p(-ctx.ppow(e[i] - e[j])));
  }
  return s;
}

// Matrix of the operator in the orthonormal basis chi_lambda / sqrt(w(lambda)).
inline Eigen::MatrixXd symmetrized(const GridOperator& op, const QContext& ctx) {
  const auto& b = op.basis();
  const int N = static_cast<int>(b.size());
  std::vector<double> lw(N);
  for (int i = 0; i < N; ++i) lw[i] = log_point_mass(b[i], ctx);
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(N, N);
  for (auto& t : op.entries()) {
    int i = op.index(t.row), j = op.index(t.col);
    S(i, j) = t.value * std::exp(0.5 * (lw[i] - lw[j]));
  }
  return S;
}

// Largest |w(mu) M[mu,lambda] - w(lambda) M[lambda,mu]| relative to the entry scale,
// over pairs whose columns are not cut by the window.
inline double self_adjoint_defect(const GridOperator& op, const QContext& ctx) {
  auto S = symmetrized(op, ctx);
  const auto& b = op.basis();
  double worst = 0;
  for (int i = 0; i < S.rows(); ++i)
    for (int j = 0; j < S.cols(); ++j) {
      if (b[i].weight() + op.k() > op.window() || b[j].weight() + op.k() > op.window()) continue;
      double scale = std::max({std::abs(S(i, j)), std::abs(S(j, i)), 1e-300});
      if (S(i, j) == 0.0 && S(j, i) == 0.0) continue;
      worst = std::max(worst, std::abs(S(i, j) - S(j, i)) / scale);
    }
  return worst;
}

// Weighted l2 operator norm of the truncated matrix.
inline double truncated_norm(const GridOperator& op, const QContext& ctx) {
  Eigen::MatrixXd S = symmetrized(op, ctx);
  Eigen::MatrixXd H = 0.5 * (S + S.transpose());
  if (op.n() == 1) {
    const int N = static_cast<int>(H.rows());
    Eigen::VectorXd d(N), e(std::max(N - 1, 1));
    for (int i = 0; i < N; ++i) d(i) = H(i, i);
    for (int i = 0; i + 1 < N; ++i) e(i) = H(i + 1, i);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(d, e.head(std::max(N - 1, 0)), Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

struct KrylovResult {
  int rank;
  int vectors;
  std::vector<double> singular_values;
};

// dim span{ L_{k_1} ... L_{k_r} f0 }. With weighted words L_k has length k and the
// span is taken over words of total length <= depth; otherwise every letter counts one.
inline KrylovResult krylov_rank(int n, int depth, const QContext& ctx, bool weighted = true,
                                double rel_tol = 1e-10) {
  std::vector<std::vector<RadialFunction>> level(depth + 1);
  level[0].push_back(f0(n));
  for (int d = 1; d <= depth; ++d)
    for (int k = 1; k <= n; ++k) {
      int from = weighted ? d - k : d - 1;
      if (from < 0) continue;
      for (const auto& v : level[from]) level[d].push_back(l_radial(k, v, ctx).value);
    }
  std::vector<RadialFunction> all;
  for (auto& l : level) all.insert(all.end(), l.begin(), l.end());
  std::set<Partition> rows;
  for (auto& v : all)
    for (auto& [lam, x] : v.support()) rows.insert(lam);
  std::vector<Partition> rv(rows.begin(), rows.end());
  Eigen::MatrixXd A(rv.size(), all.size());
  for (size_t i = 0; i < rv.size(); ++i) {
    double s = std::exp(0.5 * log_point_mass(rv[i], ctx));
    for (size_t j = 0; j < all.size(); ++j) A(i, j) = s * all[j](rv[i]).real();
  }
  for (int j = 0; j < A.cols(); ++j) {
    double nrm = A.col(j).norm();
    if (nrm > 0) A.col(j) /= nrm;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
  auto sv = svd.singularValues();
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > rel_tol * sv(0)) ++r;
  return {r, static_cast<int>(all.size()), std::vector<double>(sv.data(), sv.data() + sv.size())};
}

}  // namespace qball

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "context.hpp"
#include "linalg.hpp"
#include "partitions.hpp"
#include "qcore.hpp"

namespace qball {

// a(l) = (1 - q^{-2l})(1 - q^{2l+2}) / (1-q^2)^2
inline cplx a_eigen(cplx l, const QContext& ctx) {
  const double d = 1.0 - ctx.p();
  return (1.0 - ctx.qpow(-2.0 * l)) * (1.0 - ctx.qpow(2.0 * l + 2.0)) / (d * d);
}

inline double a_eigen(double l, const QContext& ctx) { return a_eigen(cplx(l), ctx).real(); }

// e_k(a(lambda_1+n-1), ..., a(lambda_n))
inline double eigen_tuple(const Partition& lambda, int k, const QContext& ctx) {
  if (k < 1 || k > lambda.n()) throw std::out_of_range("eigen_tuple: k out of range");
  std::vector<double> a;
  for (int e : lambda.shifted()) a.push_back(a_eigen(double(e), ctx));
  return elementary(k, a);
}

// Eigenvalue of L_k at the principal-series point rho.
inline double principal_eigen(const std::vector<double>& rho, int k, const QContext& ctx) {
  std::vector<double> a;
  for (double r : rho) a.push_back(a_eigen(cplx(-0.5, r), ctx).real());
  return elementary(k, a);
}

// psi_k on integer tuples: e_k(a(lambda_i - 1/2)).
inline double psi(const std::vector<int>& lambda, int k, const QContext& ctx) {
  std::vector<double> a;
  for (int x : lambda) a.push_back(a_eigen(x - 0.5, ctx));
  return elementary(k, a);
}

// Invariance of psi_k under permutations and sign changes of lambda.
inline bool wres_check(const std::vector<int>& lambda, int k, const QContext& ctx) {
  const double base = psi(lambda, k, ctx);
  const double tol = 1e-12 * std::max(1.0, std::abs(base));
  std::vector<int> perm(lambda);
  std::sort(perm.begin(), perm.end());
  const int n = static_cast<int>(lambda.size());
  do {
    for (int mask = 0; mask < (1 << n); ++mask) {
      std::vector<int> v(perm);
      for (int i = 0; i < n; ++i)
        if (mask & (1 << i)) v[i] = -v[i];
      if (std::abs(psi(v, k, ctx) - base) > tol) return false;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return true;
}

// Monic little q-Jacobi polynomials in base p = q^2, orthogonal for the
// moments mu_k = (1-p) p^{k+1} / (1-p^{k+1}).
class LittleQJacobi {
 public:
  explicit LittleQJacobi(const QContext& ctx) : p_(static_cast<long double>(ctx.q()) * ctx.q()) {}

  // Coefficients ascending in degree; 2phi1(p^{-m}, p^{m+1}; p; p; z) divided by its leading term.
  std::vector<double> coefficients(int m) const {
    std::vector<long double> c(m + 1);
    long double t = 1;
    c[0] = 1;
    for (int j = 0; j < m; ++j) {
      long double pj = std::pow(p_, j);
      t *= (1 - std::pow(p_, -m) * pj) * (1 - std::pow(p_, m + 1) * pj) / ((1 - p_ * pj) * (1 - p_ * pj));
      c[j + 1] = t;
    }
    std::vector<double> out(m + 1);
    for (int j = 0; j <= m; ++j) out[j] = static_cast<double>(c[j] / c[m]);
    return out;
  }

  // P_{m+1} = (z - alpha_m) P_m - beta_m P_{m-1}
  long double alpha(int m) const { return p_ * (A(m) + C(m)); }
  long double beta(int m) const { return m == 0 ? 0 : p_ * p_ * A(m - 1) * C(m); }

  template <class T>
  T evaluate(int m, T z) const {
    T prev = T(0), cur = T(1);
    for (int k = 0; k < m; ++k) {
      T next = (z - T(alpha(k))) * cur - T(beta(k)) * prev;
      prev = cur;
      cur = next;
    }
    return cur;
  }

  long double moment(int k) const { return (1 - p_) * std::pow(p_, k + 1) / (1 - std::pow(p_, k + 1)); }

  // max_j |<P_m, z^j>| / sum_i |c_i mu_{i+j}|, j < m; small means the coefficients are orthogonal.
  double orthogonality_residual(int m) const {
    auto c = coefficients(m);
    long double worst = 0;
    for (int j = 0; j < m; ++j) {
      long double s = 0, a = 0;
      for (int i = 0; i <= m; ++i) {
        s += c[i] * moment(i + j);
        a += std::abs(c[i] * moment(i + j));
      }
      worst = std::max(worst, std::abs(s) / a);
    }
    return static_cast<double>(worst);
  }

 private:
  long double A(int m) const {
    long double pm = std::pow(p_, m), a = 1 - pm * p_;
    return pm * a * a / ((1 - pm * pm * p_) * (1 - pm * pm * p_ * p_));
  }
  long double C(int m) const {
    if (m == 0) return 0;
    long double pm = std::pow(p_, m), c = 1 - pm;
    return pm * c * c / ((1 - pm * pm) * (1 - pm * pm * p_));
  }
  long double p_;
};

inline std::vector<double> little_q_jacobi(int m, const QContext& ctx) {
  return LittleQJacobi(ctx).coefficients(m);
}

// P_lambda(z) = det[P_{(lambda+delta)_j}(z_i)] / Vandermonde(z), evaluated through the
// Newton divided differences of the one-variable polynomials so that the Vandermonde
// factor is removed analytically.
template <class T>
T multivar_P_t(const Partition& lambda, const std::vector<T>& z, const QContext& ctx) {
  const int n = lambda.n();
  if (static_cast<int>(z.size()) != n) throw dimension_error("multivar_P: length mismatch");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (z[i] == z[j]) throw coincident_error("multivar_P: coincident coordinates");
  LittleQJacobi jac(ctx);
  auto s = lambda.shifted();
  const int N = s[0];
  // T[m][i] = P_m[z_0..z_i]
  std::vector<std::vector<T>> tab(N + 1, std::vector<T>(n, T(0)));
  tab[0][0] = T(1);
  for (int m = 0; m < N; ++m) {
    const T a = T(jac.alpha(m)), b = T(jac.beta(m));
    for (int i = 0; i < n; ++i) {
      T v = (z[i] - a) * tab[m][i];
      if (i > 0) v += tab[m][i - 1];
      if (m > 0) v -= b * tab[m - 1][i];
      tab[m + 1][i] = v;
    }
  }
  std::vector<T> mat(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) mat[i * n + j] = tab[s[j]][i];
  T d = determinant(mat, n);
  return (n * (n - 1) / 2) % 2 ? -d : d;
}

inline double multivar_P(const Partition& lambda, const std::vector<double>& z, const QContext& ctx) {
  std::vector<long double> zl(z.begin(), z.end());
  return static_cast<double>(multivar_P_t(lambda, zl, ctx));
}

inline cplx multivar_P(const Partition& lambda, const std::vector<cplx>& z, const QContext& ctx) {
  std::vector<std::complex<long double>> zl;
  for (auto v : z) zl.emplace_back(v.real(), v.imag());
  auto r = multivar_P_t(lambda, zl, ctx);
  return {static_cast<double>(r.real()), static_cast<double>(r.imag())};
}

// Spectral parameter l = (l_1..l_n): either lambda+delta or -1/2 + i rho_j.
struct SphericalParameter {
  std::vector<cplx> l;

  static SphericalParameter from_partition(const Partition& lambda) {
    SphericalParameter s;
    for (int e : lambda.shifted()) s.l.emplace_back(e, 0.0);
    return s;
  }
  static SphericalParameter principal(const std::vector<double>& rho) {
    SphericalParameter s;
    for (double r : rho) s.l.emplace_back(-0.5, r);
    return s;
  }
  int n() const { return static_cast<int>(l.size()); }
  bool distinct() const {
    for (int i = 0; i < n(); ++i)
      for (int j = i + 1; j < n(); ++j)
        if (std::abs(l[i] - l[j]) == 0.0) return false;
    return true;
  }
};

// det[Phi_{l_i}(u_j)] / Vandermonde(u) from a table vals[i][j] = Phi_{l_i}(u_j).
inline cplx antisymmetrize(const std::vector<std::vector<cplx>>& vals, const std::vector<double>& u) {
  const int n = static_cast<int>(u.size());
  std::vector<cplx> mat(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) mat[i * n + j] = vals[i][j];
  return determinant(mat, n) / vandermonde(u);
}

inline cplx phi_multi(const SphericalParameter& l, const std::vector<double>& u, const QContext& ctx) {
  const int n = l.n();
  if (static_cast<int>(u.size()) != n) throw dimension_error("phi_multi: length mismatch");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (u[i] == u[j]) throw coincident_error("phi_multi: coincident coordinates");
  std::vector<std::vector<cplx>> vals(n, std::vector<cplx>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) vals[i][j] = phi_one(l.l[i], u[j], ctx);
  return antisymmetrize(vals, u);
}

// Same at the grid point q^{-2(mu+delta)}, using the grid evaluators.
inline cplx phi_multi_at(const SphericalParameter& l, const Partition& mu, const QContext& ctx) {
  const int n = l.n();
  if (mu.n() != n) throw dimension_error("phi_multi_at: length mismatch");
  auto e = mu.shifted();
  std::vector<std::vector<cplx>> vals(n, std::vector<cplx>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) vals[i][j] = phi_grid(l.l[i], e[j], ctx);
  return antisymmetrize(vals, grid_point(mu, ctx));
}

}  // namespace qball

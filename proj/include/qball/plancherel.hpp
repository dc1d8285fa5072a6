#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numeric>
#include <vector>

#include "context.hpp"
#include "partitions.hpp"
#include "qcore.hpp"
#include "qdiff.hpp"
#include "radial.hpp"
#include "spherical.hpp"

namespace qball {

// 1/c(l) = Gamma_{q^2}(l+1)^2 / Gamma_{q^2}(2l+1), written with the entire reciprocal.
inline cplx c_inverse(cplx l, const QContext& ctx) {
  cplx g = qgamma(l + 1.0, ctx);
  return g * g * qgamma_reciprocal(2.0 * l + 1.0, ctx);
}

// c(l) = Gamma_{q^2}(2l+1) / Gamma_{q^2}(l+1)^2
inline cplx c_function(cplx l, const QContext& ctx) {
  cplx g = qgamma(l + 1.0, ctx);
  return qgamma(2.0 * l + 1.0, ctx) / (g * g);
}

// Density of d sigma with respect to d rho on [0, pi/h].
inline double sigma_weight(double rho, const QContext& ctx) {
  cplx ci = c_inverse(cplx(-0.5, rho), ctx);
  return ctx.h() / (2.0 * M_PI * (1.0 - ctx.p())) * std::norm(ci);
}

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  int M() const { return static_cast<int>(nodes.size()) - 1; }
};

// Composite Simpson on [0, pi/h] with M (even) subintervals.
inline QuadratureRule simpson_rule(int M, const QContext& ctx) {
  if (M < 2 || M % 2) throw std::invalid_argument("Simpson rule needs an even number of subintervals");
  QuadratureRule r;
  const double b = ctx.rho_max(), step = b / M;
  for (int j = 0; j <= M; ++j) {
    r.nodes.push_back(j == M ? b : j * step);
    double w = (j == 0 || j == M) ? 1.0 : (j % 2 ? 4.0 : 2.0);
    r.weights.push_back(w * step / 3.0);
  }
  return r;
}

inline double factorial(int n) {
  double f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// x_j = q^{2 i rho_j} + q^{-2 i rho_j} = 2 cos(h rho_j)
inline double spectral_x(double rho, const QContext& ctx) { return 2.0 * std::cos(ctx.h() * rho); }

// prod_{k<j} (x_j - x_k)
inline double x_product(const std::vector<double>& rho, const QContext& ctx) {
  double r = 1;
  for (size_t k = 0; k < rho.size(); ++k)
    for (size_t j = k + 1; j < rho.size(); ++j) r *= spectral_x(rho[j], ctx) - spectral_x(rho[k], ctx);
  return r;
}

namespace detail {
inline bool has_coincident(const std::vector<double>& rho) {
  for (size_t i = 0; i < rho.size(); ++i)
    for (size_t j = i + 1; j < rho.size(); ++j)
      if (rho[i] == rho[j]) return true;
  return false;
}

// det[col_i[e_j]] / Vandermonde(q^{-2 e})
inline double grid_det(const std::vector<const std::vector<double>*>& cols, const std::vector<int>& e,
                       const std::vector<double>& u) {
  const int n = static_cast<int>(e.size());
  if (n == 1) return (*cols[0])[e[0]];
  if (n == 2) {
    double d = (*cols[0])[e[0]] * (*cols[1])[e[1]] - (*cols[0])[e[1]] * (*cols[1])[e[0]];
    return d / (u[0] - u[1]);
  }
  std::vector<double> m(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i * n + j] = (*cols[i])[e[j]];
  return determinant(m, n) / vandermonde(u);
}
}  // namespace detail

// kappa(rho) = (U f0)(rho) = (1-q^2)^{n^2} Phi_{-1/2+i rho}(q^{-2 delta}).
inline double kappa(const std::vector<double>& rho, const QContext& ctx) {
  const int n = static_cast<int>(rho.size());
  if (detail::has_coincident(rho)) return 0.0;
  std::vector<std::vector<double>> cols;
  for (double r : rho) cols.push_back(phi_principal_column(r, n - 1, ctx));
  std::vector<const std::vector<double>*> cp;
  for (auto& c : cols) cp.push_back(&c);
  auto z = Partition::zero(n);
  return std::pow(1.0 - ctx.p(), n * n) * detail::grid_det(cp, z.shifted(), grid_point(z, ctx));
}

// The closed-form product for U f0:
// N / Vandermonde(q^{-2 delta}) * prod_j (q^{-2j};p)_j q^{(j+1)^2-1} / (p;p)_j^2 * prod_{k<j}(x_j - x_k)
inline double kappa_nominal_constant(int n, const QContext& ctx) {
  const double p = ctx.p();
  double c = norm_constant(n, ctx) / vandermonde(grid_point(Partition::zero(n), ctx));
  for (int j = 0; j < n; ++j) {
    double pj = qpochhammer(ctx.ppow(-j), p, j).real();
    double d = qpochhammer(p, p, j).real();
    c *= pj / (d * d) * std::pow(ctx.q(), (j + 1) * (j + 1) - 1);
  }
  return c;
}

inline double kappa_nominal(const std::vector<double>& rho, const QContext& ctx) {
  return kappa_nominal_constant(static_cast<int>(rho.size()), ctx) * x_product(rho, ctx);
}

// Adopted Plancherel density on the ordered region: kappa^2 / N * prod sigma.
inline double big_sigma_weight(const std::vector<double>& rho, const QContext& ctx) {
  const int n = static_cast<int>(rho.size());
  double k = kappa(rho, ctx);
  double s = k * k / norm_constant(n, ctx);
  for (double r : rho) s *= sigma_weight(r, ctx);
  return s;
}

// Nominal density: kappa_nominal^2 n! N prod sigma.
inline double big_sigma_weight_nominal(const std::vector<double>& rho, const QContext& ctx) {
  const int n = static_cast<int>(rho.size());
  double k = kappa_nominal(rho, ctx);
  double s = k * k * factorial(n) * norm_constant(n, ctx);
  for (double r : rho) s *= sigma_weight(r, ctx);
  return s;
}

// Samples of a symmetric function on the tensor grid nodes^n, first coordinate slowest.
struct SpectralFunction {
  int n = 1;
  std::vector<double> nodes;
  std::vector<cplx> values;

  int M() const { return static_cast<int>(nodes.size()) - 1; }
  size_t size() const { return values.size(); }

  std::vector<int> multi_index(size_t flat) const {
    const size_t b = nodes.size();
    std::vector<int> idx(n);
    for (int i = n - 1; i >= 0; --i) {
      idx[i] = static_cast<int>(flat % b);
      flat /= b;
    }
    return idx;
  }
  std::vector<double> point(size_t flat) const {
    auto idx = multi_index(flat);
    std::vector<double> r(n);
    for (int i = 0; i < n; ++i) r[i] = nodes[idx[i]];
    return r;
  }

  static SpectralFunction sample(int n, const QuadratureRule& rule,
                                 const std::function<cplx(const std::vector<double>&)>& fn) {
    SpectralFunction s;
    s.n = n;
    s.nodes = rule.nodes;
    size_t total = 1;
    for (int i = 0; i < n; ++i) total *= rule.nodes.size();
    s.values.resize(total);
    for (size_t f = 0; f < total; ++f) s.values[f] = fn(s.point(f));
    return s;
  }
};

// Columns Phi_{-1/2+i rho_a}(q^{-2k}), k = 0..K, for every quadrature node, plus sigma weights.
class PrincipalTable {
 public:
  PrincipalTable(const QuadratureRule& rule, int K, const QContext& ctx) : rule_(rule), K_(K) {
    for (double r : rule.nodes) {
      cols_.push_back(phi_principal_column(r, K, ctx));
      sigma_.push_back(sigma_weight(r, ctx));
    }
  }
  int K() const { return K_; }
  const QuadratureRule& rule() const { return rule_; }
  const std::vector<double>& column(int a) const { return cols_[a]; }
  double sigma(int a) const { return sigma_[a]; }

 private:
  QuadratureRule rule_;
  int K_;
  std::vector<std::vector<double>> cols_;
  std::vector<double> sigma_;
};

// Unnormalized transform U f and related node-wise quantities on the tensor grid.
class SphericalTransform {
 public:
  SphericalTransform(int n, const QuadratureRule& rule, int max_weight, const QContext& ctx)
      : n_(n), ctx_(ctx), max_weight_(max_weight), table_(rule, max_weight + n - 1, ctx) {
    total_ = 1;
    for (int i = 0; i < n; ++i) total_ *= rule.nodes.size();
    N_ = norm_constant(n, ctx);
  }

  int n() const { return n_; }
  size_t size() const { return total_; }
  const QuadratureRule& rule() const { return table_.rule(); }
  int max_weight() const { return max_weight_; }

  std::vector<int> multi_index(size_t flat) const {
    const size_t b = rule().nodes.size();
    std::vector<int> idx(n_);
    for (int i = n_ - 1; i >= 0; --i) {
      idx[i] = static_cast<int>(flat % b);
      flat /= b;
    }
    return idx;
  }
  std::vector<double> point(size_t flat) const {
    auto idx = multi_index(flat);
    std::vector<double> r(n_);
    for (int i = 0; i < n_; ++i) r[i] = rule().nodes[idx[i]];
    return r;
  }
  bool coincident(size_t flat) const {
    auto idx = multi_index(flat);
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j)
        if (idx[i] == idx[j]) return true;
    return false;
  }

  // Phi_{-1/2+i rho}(q^{-2(mu+delta)}) at node `flat`.
  double phi(size_t flat, const Partition& mu) const {
    auto idx = multi_index(flat);
    std::vector<const std::vector<double>*> cols;
    for (int a : idx) cols.push_back(&table_.column(a));
    return detail::grid_det(cols, mu.shifted(), grid_point(mu, ctx_));
  }

  // Quadrature weight of the cube node times prod sigma.
  double cube_weight(size_t flat) const {
    auto idx = multi_index(flat);
    double w = 1;
    for (int a : idx) w *= rule().weights[a] * table_.sigma(a);
    return w;
  }

  double kappa_at(size_t flat) const {
    if (coincident(flat)) return 0.0;
    return std::pow(1.0 - ctx_.p(), n_ * n_) * phi(flat, Partition::zero(n_));
  }

  void check_support(const RadialFunction& f) const {
    if (f.n() != n_) throw dimension_error("transform: dimension mismatch");
    if (f.max_weight() > max_weight_) throw window_overflow("transform: support exceeds table window");
  }

  // (U f)(rho) = sum_lambda w(lambda) Phi_{-1/2+i rho}(u_lambda) f(lambda)
  cplx U(const RadialFunction& f, size_t flat) const {
    CompensatedSum<cplx> acc;
    for (auto& [lam, v] : f.support()) acc.add(point_mass(lam, ctx_) * phi(flat, lam) * v);
    return acc.value();
  }

  std::vector<cplx> U_all(const RadialFunction& f) const {
    check_support(f);
    std::vector<std::pair<Partition, cplx>> terms;
    for (auto& [lam, v] : f.support()) terms.emplace_back(lam, point_mass(lam, ctx_) * v);
    std::vector<cplx> out(total_);
    for (size_t s = 0; s < total_; ++s) {
      CompensatedSum<cplx> acc;
      for (auto& [lam, c] : terms) acc.add(c * phi(s, lam));
      out[s] = acc.value();
    }
    return out;
  }

  // <f, g> computed on the spectral side: (1/(n! N)) int_cube Uf conj(Ug) prod d sigma.
  cplx spectral_inner(const std::vector<cplx>& Uf, const std::vector<cplx>& Ug) const {
    CompensatedSum<cplx> acc;
    for (size_t s = 0; s < total_; ++s) acc.add(cube_weight(s) * Uf[s] * std::conj(Ug[s]));
    return acc.value() / (factorial(n_) * N_);
  }

  // Same integral with the nominal normalization of the Plancherel measure.
  cplx spectral_inner_nominal(const std::vector<cplx>& Uf, const std::vector<cplx>& Ug) const {
    CompensatedSum<cplx> acc;
    for (size_t s = 0; s < total_; ++s) acc.add(cube_weight(s) * Uf[s] * std::conj(Ug[s]));
    return acc.value() * N_;
  }

  double sigma_mass() const {
    CompensatedSum<double> acc;
    for (size_t a = 0; a < rule().nodes.size(); ++a) acc.add(rule().weights[a] * table_.sigma(a));
    return acc.value();
  }

  // Total mass of the adopted Plancherel measure over the ordered region.
  double big_sigma_mass() const {
    CompensatedSum<double> acc;
    for (size_t s = 0; s < total_; ++s) {
      double k = kappa_at(s);
      acc.add(cube_weight(s) * k * k);
    }
    return acc.value() / (factorial(n_) * N_);
  }

  // F f = U f / kappa; coincident nodes are filled by extrapolating along a line that separates them.
  SpectralFunction forward(const RadialFunction& f) const {
    auto Uf = U_all(f);
    SpectralFunction out;
    out.n = n_;
    out.nodes = rule().nodes;
    out.values.resize(total_);
    for (size_t s = 0; s < total_; ++s) {
      if (!coincident(s))
        out.values[s] = Uf[s] / kappa_at(s);
      else
        out.values[s] = limit_at(f, point(s));
    }
    return out;
  }

  // f(mu) = (1/(n! N)) int_cube fhat kappa Phi(u_mu) prod d sigma, for |mu| <= window.
  RadialFunction inverse(const SpectralFunction& fhat, int window) const {
    check_spectral(fhat);
    if (window > max_weight_) throw window_overflow("inverse: window exceeds table");
    RadialFunction out(n_);
    std::vector<double> kw(total_);
    for (size_t s = 0; s < total_; ++s) kw[s] = cube_weight(s) * kappa_at(s);
    for (const auto& mu : enumerate_partitions(n_, window)) {
      CompensatedSum<cplx> acc;
      for (size_t s = 0; s < total_; ++s)
        if (kw[s] != 0.0) acc.add(kw[s] * fhat.values[s] * phi(s, mu));
      out.set(mu, acc.value() / (factorial(n_) * N_));
    }
    return out;
  }

  // Nominal inverse: int_R fhat Phi(u_mu) d Sigma_nominal.
  RadialFunction inverse_nominal(const SpectralFunction& fhat, int window, const QContext& ctx) const {
    check_spectral(fhat);
    RadialFunction out(n_);
    const double c = kappa_nominal_constant(n_, ctx);
    for (const auto& mu : enumerate_partitions(n_, window)) {
      CompensatedSum<cplx> acc;
      for (size_t s = 0; s < total_; ++s) {
        double kp = c * x_product(point(s), ctx);
        acc.add(cube_weight(s) * kp * kp * fhat.values[s] * phi(s, mu));
      }
      out.set(mu, acc.value() * N_);
    }
    return out;
  }

 private:
  void check_spectral(const SpectralFunction& fhat) const {
    if (fhat.n != n_ || fhat.values.size() != total_ || fhat.nodes != rule().nodes)
      throw schema_error("spectral function does not match the quadrature grid");
  }

  // Uf/kappa near a coincident point by polynomial extrapolation in the offset.
  cplx limit_at(const RadialFunction& f, const std::vector<double>& rho) const {
    const int m = 6;
    const double tau = 0.01 * ctx_.rho_max();
    std::vector<double> ts;
    std::vector<cplx> ys;
    for (int j = 1; j <= m; ++j) {
      double t = j * tau;
      std::vector<double> r(rho);
      for (int i = 0; i < n_; ++i) r[i] += i * t;
      ts.push_back(t);
      ys.push_back(direct_ratio(f, r));
    }
    // Neville at t = 0
    for (int k = 1; k < m; ++k)
      for (int i = 0; i + k < m; ++i) ys[i] = (ts[i + k] * ys[i] - ts[i] * ys[i + 1]) / (ts[i + k] - ts[i]);
    return ys[0];
  }

  cplx direct_ratio(const RadialFunction& f, const std::vector<double>& rho) const {
    const int K = std::max(f.max_weight(), 0) + n_ - 1;
    std::vector<std::vector<double>> cols;
    for (double r : rho) cols.push_back(phi_principal_column(r, K, ctx_));
    std::vector<const std::vector<double>*> cp;
    for (auto& c : cols) cp.push_back(&c);
    CompensatedSum<cplx> acc;
    for (auto& [lam, v] : f.support())
      acc.add(point_mass(lam, ctx_) * detail::grid_det(cp, lam.shifted(), grid_point(lam, ctx_)) * v);
    auto z = Partition::zero(n_);
    double k = std::pow(1.0 - ctx_.p(), n_ * n_) * detail::grid_det(cp, z.shifted(), grid_point(z, ctx_));
    return acc.value() / k;
  }

  int n_;
  QContext ctx_;
  int max_weight_;
  PrincipalTable table_;
  size_t total_;
  double N_;
};

inline SpectralFunction forward(const RadialFunction& f, const QuadratureRule& rule, const QContext& ctx) {
  SphericalTransform T(f.n(), rule, std::max(f.max_weight(), 0), ctx);
  return T.forward(f);
}

inline RadialFunction inverse(const SpectralFunction& fhat, const QuadratureRule& rule, int window,
                              const QContext& ctx) {
  SphericalTransform T(fhat.n, rule, window, ctx);
  return T.inverse(fhat, window);
}

inline double parseval_defect(const RadialFunction& f, const RadialFunction& g, const QuadratureRule& rule,
                              const QContext& ctx) {
  SphericalTransform T(f.n(), rule, std::max(f.max_weight(), g.max_weight()), ctx);
  return std::abs(inner_product(f, g, ctx) - T.spectral_inner(T.U_all(f), T.U_all(g)));
}

// max over non-coincident nodes of |F(L_k f) - e_k(a(-1/2+i rho)) F f|
inline double intertwine_defect(int k, const RadialFunction& f, const QuadratureRule& rule,
                                 const QContext& ctx) {
  auto Lf = l_radial(k, f, ctx).value;
  SphericalTransform T(f.n(), rule, std::max(Lf.max_weight(), f.max_weight()), ctx);
  auto Uf = T.U_all(f), ULf = T.U_all(Lf);
  double worst = 0;
  for (size_t s = 0; s < T.size(); ++s) {
    if (T.coincident(s)) continue;
    double kap = T.kappa_at(s);
    double e = principal_eigen(T.point(s), k, ctx);
    worst = std::max(worst, std::abs(ULf[s] / kap - e * Uf[s] / kap));
  }
  return worst;
}

}  // namespace qball

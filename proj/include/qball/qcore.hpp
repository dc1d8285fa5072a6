#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "context.hpp"

namespace qball {

struct ProductResult {
  cplx value;
  double rel_bound;  // |neglected tail| relative to value
  int terms;
};

// (a; base)_k as a finite product.
inline cplx qpochhammer(cplx a, double base, int k) {
  cplx r = 1.0;
  double bm = 1.0;
  for (int m = 0; m < k; ++m) {
    r *= 1.0 - a * bm;
    bm *= base;
  }
  return r;
}

// (a; base)_inf, truncated once |a| base^m < product_tol.
inline ProductResult qpochhammer_inf_bounded(cplx a, double base, const QContext& ctx) {
  cplx r = 1.0;
  double bm = 1.0;
  const double aa = std::abs(a);
  for (int m = 0; m < ctx.max_terms(); ++m) {
    double mag = aa * bm;
    if (mag < ctx.product_tol()) return {r, mag / (1.0 - base), m};
    r *= 1.0 - a * bm;
    bm *= base;
  }
  throw truncation_error("infinite q-Pochhammer did not reach product_tol within max_terms");
}

inline cplx qpochhammer_inf(cplx a, double base, const QContext& ctx) {
  return qpochhammer_inf_bounded(a, base, ctx).value;
}

namespace detail {

inline bool near_int(cplx x, long& n, double tol = 1e-12) {
  double r = std::round(x.real());
  if (std::abs(x.real() - r) > tol || std::abs(x.imag()) > tol) return false;
  n = static_cast<long>(r);
  return true;
}

inline bool is_nonneg_int(cplx x, long& n) { return near_int(x, n) && n >= 0; }

// u = p^{-k} for some k >= 0?
inline bool grid_index(cplx u, const QContext& ctx, long& k) {
  if (std::abs(u.imag()) > 1e-14 * std::abs(u) || !(u.real() >= 1.0 - 1e-14)) return false;
  double e = std::log(u.real()) / ctx.h();
  double r = std::round(e);
  if (r < 0) return false;
  double ref = std::pow(ctx.p(), -r);
  if (std::abs(u.real() - ref) > 1e-13 * ref) return false;
  k = static_cast<long>(r);
  return true;
}

}  // namespace detail

// Gamma_{q^2}(x) = (p;p)_inf / (p^x;p)_inf (1-p)^{1-x}.
inline cplx qgamma(cplx x, const QContext& ctx) {
  long n;
  if (detail::near_int(x, n) && n <= 0) throw pole_error("q-Gamma pole at nonpositive integer");
  const double p = ctx.p();
  cplx num = qpochhammer_inf(p, p, ctx);
  cplx den = qpochhammer_inf(ctx.qpow(2.0 * x), p, ctx);
  return num / den * std::exp((1.0 - x) * std::log1p(-p));
}

// 1/Gamma_{q^2}(x); entire, vanishes at the poles of qgamma.
inline cplx qgamma_reciprocal(cplx x, const QContext& ctx) {
  long k;
  if (detail::is_nonneg_int(-x, k)) return 0.0;
  const double p = ctx.p();
  cplx num = qpochhammer_inf(ctx.qpow(2.0 * x), p, ctx);
  cplx den = qpochhammer_inf(p, p, ctx);
  return num / den * std::exp((x - 1.0) * std::log1p(-p));
}

// Terminating/convergent 3phi2 sum, term by term in ascending j.
// stop < 0 means no known termination index.
inline cplx phi_one_direct(cplx l, cplx u, const QContext& ctx, long stop = -1) {
  const double p = ctx.p();
  const cplx A = ctx.qpow(-2.0 * l);
  const cplx B = ctx.qpow(2.0 * l + 2.0);
  long n;
  if (detail::is_nonneg_int(l, n) && (stop < 0 || n < stop)) stop = n;
  if (detail::is_nonneg_int(-1.0 - l, n) && (stop < 0 || n < stop)) stop = n;
  long k;
  if (detail::grid_index(u, ctx, k) && (stop < 0 || k < stop)) stop = k;

  CompensatedSum<cplx> acc;
  cplx t = 1.0;
  acc.add(t);
  double pj = 1.0;
  const long cap = stop >= 0 ? stop : ctx.max_terms();
  for (long j = 0; j < cap; ++j) {
    t *= (1.0 - A * pj) * (1.0 - B * pj) * (1.0 - u * pj) * p / ((1.0 - pj * p) * (1.0 - pj * p));
    pj *= p;
    acc.add(t);
    if (stop < 0) {
      double small = std::max({std::abs(A), std::abs(B), std::abs(u)}) * pj;
      if (small < 1.0 && std::abs(t) < ctx.series_tol() * std::max(1.0, std::abs(acc.value())))
        return acc.value();
    }
  }
  if (stop < 0) throw truncation_error("phi_one series did not converge within max_terms");
  return acc.value();
}

// Phi_{-1/2+i rho}(q^{-2k}) for k = 0..K from the generating function
//   q^k [t^k] (qt;p)_inf^2 / (t e^{i theta}, t e^{-i theta}; p)_inf,  theta = h rho,
// whose coefficients are bounded; the direct sum cancels like q^{-k^2}.
inline std::vector<double> phi_principal_column(double rho, int K, const QContext& ctx) {
  using R = long double;
  const R q = ctx.q(), p = q * q;
  const R theta = static_cast<R>(ctx.h()) * rho;
  std::vector<R> pp(K + 1, 1);
  for (int m = 1; m <= K; ++m) pp[m] = pp[m - 1] * (1 - std::pow(p, m));
  std::vector<R> c(K + 1), g(K + 1);
  for (int i = 0; i <= K; ++i) {
    CompensatedSum<R> s;
    for (int r = 0; r <= i; ++r) s.add(std::pow(q, r * r + (i - r) * (i - r)) / (pp[r] * pp[i - r]));
    c[i] = (i % 2 ? -1 : 1) * s.value();
  }
  for (int m = 0; m <= K; ++m) {
    CompensatedSum<R> s;
    for (int j = 0; j <= m; ++j) s.add(std::cos((m - 2 * j) * theta) / (pp[j] * pp[m - j]));
    g[m] = s.value();
  }
  std::vector<double> out(K + 1);
  for (int k = 0; k <= K; ++k) {
    CompensatedSum<R> s;
    for (int i = 0; i <= k; ++i) s.add(c[i] * g[k - i]);
    out[k] = static_cast<double>(std::pow(q, k) * s.value());
  }
  return out;
}

inline bool on_principal_line(cplx l) { return std::abs(l.real() + 0.5) < 1e-14; }

// Phi_l(u) with l, u arbitrary; grid points on the principal line use the bounded route.
inline cplx phi_one(cplx l, cplx u, const QContext& ctx) {
  long k;
  if (on_principal_line(l) && detail::grid_index(u, ctx, k) && k > 0)
    return phi_principal_column(l.imag(), static_cast<int>(k), ctx)[k];
  return phi_one_direct(l, u, ctx);
}

// Phi_l(q^{-2k}).
inline cplx phi_grid(cplx l, int k, const QContext& ctx) {
  if (on_principal_line(l) && k > 0) return phi_principal_column(l.imag(), k, ctx)[k];
  return phi_one_direct(l, ctx.ppow(-k), ctx, k);
}

}  // namespace qball

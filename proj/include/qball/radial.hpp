#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <mutex>
#include <vector>

#include "context.hpp"
#include "partitions.hpp"

namespace qball {

// Finitely supported function on the radial grid, indexed by partitions.
class RadialFunction {
 public:
  explicit RadialFunction(int n = 1) : n_(n) {
    if (n < 1) throw dimension_error("n must be positive");
  }

  int n() const { return n_; }
  const std::map<Partition, cplx>& support() const { return table_; }

  cplx operator()(const Partition& lambda) const {
    auto it = table_.find(lambda);
    return it == table_.end() ? cplx(0.0) : it->second;
  }

  void set(const Partition& lambda, cplx v) {
    check(lambda);
    table_[lambda] = v;
  }
  void add(const Partition& lambda, cplx v) {
    check(lambda);
    table_[lambda] += v;
  }

  // Drops exact zeros so that support() reflects the nonzero pattern.
  void prune() {
    for (auto it = table_.begin(); it != table_.end();)
      it = it->second == cplx(0.0) ? table_.erase(it) : std::next(it);
  }

  int max_weight() const {
    int w = 0;
    for (auto& [l, v] : table_) w = std::max(w, l.weight());
    return w;
  }

  RadialFunction& operator+=(const RadialFunction& o) {
    if (o.n_ != n_) throw dimension_error("RadialFunction: dimension mismatch");
    for (auto& [l, v] : o.table_) table_[l] += v;
    return *this;
  }
  RadialFunction& operator*=(cplx s) {
    for (auto& [l, v] : table_) v *= s;
    return *this;
  }
  friend RadialFunction operator+(RadialFunction a, const RadialFunction& b) { return a += b; }
  friend RadialFunction operator-(RadialFunction a, const RadialFunction& b) {
    RadialFunction nb = b;
    nb *= -1.0;
    return a += nb;
  }
  friend RadialFunction operator*(cplx s, RadialFunction a) { return a *= s; }

 private:
  void check(const Partition& lambda) const {
    if (lambda.n() != n_) throw dimension_error("RadialFunction: partition length mismatch");
  }
  int n_;
  std::map<Partition, cplx> table_;
};

inline RadialFunction chi(const Partition& lambda) {
  RadialFunction f(lambda.n());
  f.set(lambda, 1.0);
  return f;
}

// Characteristic function of the grid point q^{-2 delta}.
inline RadialFunction f0(int n) { return chi(Partition::zero(n)); }

// (1-q^2)^{n(n-1)} q^{n(n-1)} / Vandermonde(q^{-2 delta})^2
inline double norm_constant(int n, const QContext& ctx) {
  auto u = grid_point(Partition::zero(n), ctx);
  double d = vandermonde(u);
  double m = n * (n - 1);
  return std::pow(1.0 - ctx.p(), m) * std::pow(ctx.q(), m) / (d * d);
}

// w(lambda) = N Vandermonde(u)^2 (1-q^2)^n q^{-2|lambda+delta|},  u = q^{-2(lambda+delta)}
inline double point_mass(const Partition& lambda, const QContext& ctx) {
  const int n = lambda.n();
  auto u = grid_point(lambda, ctx);
  double d = vandermonde(u);
  int e = 0;
  for (int x : lambda.shifted()) e += x;
  return norm_constant(n, ctx) * d * d * std::pow(1.0 - ctx.p(), n) * ctx.ppow(-e);
}

// Per-(n, q) cache of point masses; filled lazily, read concurrently.
class MeasureWeights {
 public:
  MeasureWeights(int n, const QContext& ctx) : n_(n), ctx_(ctx) {}
  int n() const { return n_; }
  double operator()(const Partition& lambda) const {
    std::lock_guard<std::mutex> g(mu_);
    auto it = cache_.find(lambda);
    if (it != cache_.end()) return it->second;
    double w = point_mass(lambda, ctx_);
    cache_.emplace(lambda, w);
    return w;
  }

 private:
  int n_;
  QContext ctx_;
  mutable std::mutex mu_;
  mutable std::map<Partition, double> cache_;
};

struct JacksonResult {
  cplx value;
  double tail_bound;  // geometric extrapolation of the last weight shell
  int max_weight;
};

// (1-q^2)^n sum_lambda phi(z) z_1...z_n over z = q^{2(lambda+delta+1)}, |lambda| <= max_weight.
// The evaluator receives the nodes in long double and its value is accumulated in long double.
template <class F>
JacksonResult jackson_q2_integral(F&& phi, int n, const QContext& ctx, int max_weight) {
  const long double p = static_cast<long double>(ctx.q()) * ctx.q();
  CompensatedSum<std::complex<long double>> acc;
  long double last_shell = 0;
  for (int w = 0; w <= max_weight; ++w) {
    CompensatedSum<std::complex<long double>> shell;
    for (const auto& lam : partitions_of(n, w)) {
      std::vector<long double> z(n);
      long double prod = 1;
      auto e = lam.shifted();
      for (int i = 0; i < n; ++i) {
        z[i] = std::pow(p, e[i] + 1);
        prod *= z[i];
      }
      std::complex<long double> v = phi(z);
      shell.add(v * prod);
    }
    acc.add(shell.value());
    last_shell = std::abs(shell.value());
  }
  const long double scale = std::pow(1 - p, n);
  auto val = acc.value() * scale;
  double tail = static_cast<double>(last_shell * scale * p / (1 - p));
  return {cplx(static_cast<double>(val.real()), static_cast<double>(val.imag())), tail, max_weight};
}

// (1-q^2)^n sum_lambda f(lambda) q^{-2|lambda+delta|}; exact on finite support.
inline cplx jackson_qinv2_integral(const RadialFunction& f, const QContext& ctx) {
  CompensatedSum<cplx> acc;
  for (auto& [lam, v] : f.support()) {
    int e = 0;
    for (int x : lam.shifted()) e += x;
    acc.add(v * ctx.ppow(-e));
  }
  return acc.value() * std::pow(1.0 - ctx.p(), f.n());
}

// Evaluator form over a window of the grid.
inline cplx jackson_qinv2_integral(const std::function<cplx(const std::vector<double>&)>& phi, int n,
                                   const QContext& ctx, int max_weight) {
  CompensatedSum<cplx> acc;
  for (const auto& lam : enumerate_partitions(n, max_weight)) {
    int e = 0;
    for (int x : lam.shifted()) e += x;
    acc.add(phi(grid_point(lam, ctx)) * ctx.ppow(-e));
  }
  return acc.value() * std::pow(1.0 - ctx.p(), n);
}

// Integral against the radial measure: sum_lambda w(lambda) f(lambda).
inline cplx radial_integral(const RadialFunction& f, const QContext& ctx) {
  CompensatedSum<cplx> acc;
  for (auto& [lam, v] : f.support()) acc.add(point_mass(lam, ctx) * v);
  return acc.value();
}

inline cplx inner_product(const RadialFunction& f, const RadialFunction& g, const QContext& ctx) {
  if (f.n() != g.n()) throw dimension_error("inner_product: dimension mismatch");
  CompensatedSum<cplx> acc;
  for (auto& [lam, v] : f.support()) {
    cplx gv = g(lam);
    if (gv != cplx(0.0)) acc.add(point_mass(lam, ctx) * v * std::conj(gv));
  }
  return acc.value();
}

// d_lambda = q^{-2|lambda|} S_lambda(q^{-2 delta})^2
inline double trace_weight(const Partition& lambda, const QContext& ctx) {
  double s = schur(lambda, grid_point(Partition::zero(lambda.n()), ctx));
  return ctx.ppow(-lambda.weight()) * s * s;
}

// (1-q^2)^{n^2} sum_lambda d_lambda f(lambda)
inline cplx trace_side_integral(const RadialFunction& f, const QContext& ctx) {
  CompensatedSum<cplx> acc;
  for (auto& [lam, v] : f.support()) acc.add(trace_weight(lam, ctx) * v);
  return acc.value() * std::pow(1.0 - ctx.p(), f.n() * f.n());
}

}  // namespace qball

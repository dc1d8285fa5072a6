#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "io.hpp"
#include "partitions.hpp"
#include "plancherel.hpp"
#include "qdiff.hpp"
#include "radial.hpp"
#include "spherical.hpp"

namespace qball {

struct VerifyConfig {
  double q = 0.5;
  int n = 2;
  int max_weight = 8;
  int quad_nodes = 0;  // 0: 2048 for n = 1, 256 otherwise
  double tol = 0;      // > 0 overrides every check tolerance
  unsigned seed = 1729;

  int nodes() const { return quad_nodes > 0 ? quad_nodes : (n == 1 ? 2048 : 256); }
  double tolerance(double fallback) const { return tol > 0 ? tol : fallback; }
};

namespace detail {

inline CheckReport report(const std::string& check, const VerifyConfig& cfg, json params, double defect,
                          double tol) {
  CheckReport r;
  r.check = check;
  r.n = cfg.n;
  r.q = cfg.q;
  r.params = std::move(params);
  r.defect = defect;
  r.tolerance = cfg.tolerance(tol);
  r.pass = std::isfinite(defect) && defect <= r.tolerance;
  return r;
}

inline double rel_std(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m += x;
  m /= v.size();
  double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / v.size()) / std::abs(m);
}

}  // namespace detail

// Residual of box Phi_l = a(l) Phi_l at u = q^{-2k}, k <= kmax, scaled by the sum of the
// magnitudes of the stencil terms.
inline double box_eigen_defect(cplx l, int kmax, const QContext& ctx) {
  const double a = a_eigen(l, ctx).real();
  std::vector<cplx> phi(kmax + 2);
  if (on_principal_line(l)) {
    auto col = phi_principal_column(l.imag(), kmax + 1, ctx);
    for (int k = 0; k <= kmax + 1; ++k) phi[k] = col[k];
  } else {
    for (int k = 0; k <= kmax + 1; ++k) phi[k] = phi_grid(l, k, ctx);
  }
  double worst = 0;
  for (int k = 0; k <= kmax; ++k) {
    Stencil s = box_stencil_at(k, ctx);
    cplx tm = s.c_minus * phi[k + 1], t0 = s.c_zero * phi[k], tp = k > 0 ? s.c_plus * phi[k - 1] : cplx(0.0);
    cplx r = tm + t0 + tp - a * phi[k];
    double scale = std::abs(tm) + std::abs(t0) + std::abs(tp) + std::abs(a * phi[k]);
    if (scale > 0) worst = std::max(worst, std::abs(r) / scale);
  }
  return worst;
}

// phi_lambda sampled on |mu| <= window.
inline RadialFunction spherical_function(const Partition& lambda, int window, const QContext& ctx) {
  auto l = SphericalParameter::from_partition(lambda);
  RadialFunction f(lambda.n());
  for (const auto& mu : enumerate_partitions(lambda.n(), window)) f.set(mu, phi_multi_at(l, mu, ctx));
  return f;
}

// sup |L_k phi - e_k phi| / sup |phi| over |mu| <= window.
inline double radial_eigen_defect(const Partition& lambda, int k, int window, const QContext& ctx) {
  const int n = lambda.n();
  auto phi = spherical_function(lambda, window + n, ctx);
  auto r = l_radial(k, phi, ctx, window + n);
  const double e = eigen_tuple(lambda, k, ctx);
  double num = 0, den = 0;
  for (const auto& mu : enumerate_partitions(n, window)) {
    num = std::max(num, std::abs(r.value(mu) - e * phi(mu)));
    den = std::max(den, std::abs(phi(mu)));
  }
  return num / den;
}

inline std::vector<CheckReport> verify_eigen(const VerifyConfig& cfg) {
  QContext ctx(cfg.q);
  std::vector<CheckReport> out;
  if (cfg.n == 1) {
    std::vector<cplx> ls = {0.0, 1.0, 2.0, 3.0, 5.0};
    for (double f : {0.1, 0.5, 1.0}) ls.emplace_back(-0.5, f * ctx.rho_max() / 2);
    for (auto l : ls) {
      json p;
      p["l"] = json::array({l.real(), l.imag()});
      p["kmax"] = 20;
      out.push_back(detail::report("eigen.box", cfg, p, box_eigen_defect(l, 20, ctx), 1e-10));
    }
  }
  for (const auto& lam : enumerate_partitions(cfg.n, 4))
    for (int k = 1; k <= cfg.n; ++k) {
      json p;
      p["lambda"] = partition_json(lam);
      p["k"] = k;
      p["window"] = cfg.max_weight;
      p["eigenvalue"] = eigen_tuple(lam, k, ctx);
      out.push_back(detail::report("eigen.radial", cfg, p, radial_eigen_defect(lam, k, cfg.max_weight, ctx), 1e-9));
    }
  return out;
}

// Jackson window making q^{2W} negligible against double precision.
inline int jackson_window(const QContext& ctx) {
  return static_cast<int>(std::ceil(24.0 * std::log(10.0) / ctx.h()));
}

// Gram entries <a, b> = int a b Vandermonde^2 under the base-q^2 Jackson measure, from
// integrands tabulated once on the Jackson nodes.
class JacksonGram {
 public:
  JacksonGram(int n, const QContext& ctx) : n_(n), ctx_(ctx), W_(jackson_window(ctx)) {
    jackson_q2_integral(
        [&](const std::vector<long double>& z) {
          nodes_.push_back(z);
          long double d = vandermonde(z);
          weights_.push_back(d * d);
          return std::complex<long double>(0);
        },
        n, ctx, W_);
  }

  using Fn = std::function<long double(const std::vector<long double>&)>;
  std::vector<long double> tabulate(const Fn& f) const {
    std::vector<long double> v;
    for (auto& z : nodes_) v.push_back(f(z));
    return v;
  }
  double inner(const std::vector<long double>& a, const std::vector<long double>& b) const {
    size_t i = 0;
    auto r = jackson_q2_integral(
        [&](const std::vector<long double>&) {
          long double v = a[i] * b[i] * weights_[i];
          ++i;
          return std::complex<long double>(v);
        },
        n_, ctx_, W_);
    return r.value.real();
  }
  double cosine(const std::vector<long double>& a, const std::vector<long double>& b) const {
    return std::abs(inner(a, b)) / std::sqrt(inner(a, a) * inner(b, b));
  }
  int window() const { return W_; }

 private:
  int n_;
  QContext ctx_;
  int W_;
  std::vector<std::vector<long double>> nodes_;
  std::vector<long double> weights_;
};

inline std::vector<CheckReport> verify_orthogonality(const VerifyConfig& cfg) {
  QContext ctx(cfg.q);
  std::vector<CheckReport> out;
  const int n = cfg.n;
  JacksonGram gram(n, ctx);
  auto window = enumerate_partitions(n, 3);
  std::map<Partition, std::vector<long double>> P, m;
  for (const auto& lam : window) {
    P[lam] = gram.tabulate([&](const std::vector<long double>& z) { return multivar_P_t(lam, z, ctx); });
    m[lam] = gram.tabulate([&](const std::vector<long double>& z) { return monomial(lam, z); });
  }
  for (const auto& lam : window) {
    double worst = 0;
    int count = 0;
    for (const auto& eta : window)
      if (dominance_less(eta, lam)) {
        worst = std::max(worst, gram.cosine(P[lam], m[eta]));
        ++count;
      }
    if (!count) continue;
    json p;
    p["lambda"] = partition_json(lam);
    p["lower_partitions"] = count;
    p["jackson_window"] = gram.window();
    out.push_back(detail::report("orthogonality.dominance", cfg, p, worst, 1e-10));
  }
  double worst = 0;
  for (size_t a = 0; a < window.size(); ++a)
    for (size_t b = a + 1; b < window.size(); ++b)
      worst = std::max(worst, gram.cosine(P[window[a]], P[window[b]]));
  {
    json p;
    p["max_weight"] = 3;
    out.push_back(detail::report("orthogonality.pairwise", cfg, p, worst, 1e-10));
  }
  {
    LittleQJacobi jac(ctx);
    double r = 0;
    for (int mm = 1; mm <= 8; ++mm) r = std::max(r, jac.orthogonality_residual(mm));
    json p;
    p["max_degree"] = 8;
    out.push_back(detail::report("orthogonality.little_q_jacobi", cfg, p, r, 1e-12));
  }
  // phi_multi(lambda + delta, .) / P_lambda is constant on the grid
  for (const auto& lam : enumerate_partitions(n, 3)) {
    auto l = SphericalParameter::from_partition(lam);
    std::vector<double> ratios;
    int w = 0;
    while (static_cast<int>(enumerate_partitions(n, w).size()) < 10) ++w;
    for (const auto& mu : enumerate_partitions(n, w))
      ratios.push_back(phi_multi_at(l, mu, ctx).real() / multivar_P(lam, grid_point(mu, ctx), ctx));
    json p;
    p["lambda"] = partition_json(lam);
    p["points"] = ratios.size();
    p["constant"] = ratios.front();
    out.push_back(detail::report("orthogonality.proportional", cfg, p, detail::rel_std(ratios), 1e-9));
  }
  return out;
}

inline std::vector<CheckReport> verify_trace(const VerifyConfig& cfg) {
  QContext ctx(cfg.q);
  std::vector<CheckReport> out;
  const int n = cfg.n;
  auto window = enumerate_partitions(n, 6);
  {
    double worst = 0;
    for (const auto& lam : window) {
      auto f = chi(lam);
      double r = radial_integral(f, ctx).real();
      worst = std::max(worst, std::abs(trace_side_integral(f, ctx).real() - r) / r);
    }
    json p;
    p["max_weight"] = 6;
    p["N"] = norm_constant(n, ctx);
    out.push_back(detail::report("trace.basis", cfg, p, worst, 1e-12));
  }
  {
    std::mt19937 gen(cfg.seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    double worst = 0;
    for (int trial = 0; trial < 5; ++trial) {
      RadialFunction f(n);
      for (const auto& lam : window) f.set(lam, cplx(U(gen), U(gen)));
      cplx r = radial_integral(f, ctx), t = trace_side_integral(f, ctx);
      worst = std::max(worst, std::abs(t - r) / std::abs(r));
    }
    json p;
    p["trials"] = 5;
    p["max_weight"] = 6;
    out.push_back(detail::report("trace.random", cfg, p, worst, 1e-12));
  }
  {
    double expect = std::pow(1.0 - ctx.p(), n * n);
    double got = radial_integral(f0(n), ctx).real();
    json p;
    p["value"] = got;
    p["expected"] = expect;
    out.push_back(detail::report("trace.f0_mass", cfg, p, std::abs(got - expect) / expect, 1e-14));
  }
  {
    auto z = grid_point(Partition::zero(n), ctx);
    double dz = vandermonde(z), worst = 0;
    for (const auto& lam : window) {
      double s = schur(lam, z), ref = vandermonde(grid_point(lam, ctx)) / dz;
      worst = std::max(worst, std::abs(s - ref) / std::abs(ref));
    }
    json p;
    p["max_weight"] = 6;
    out.push_back(detail::report("trace.schur_specialization", cfg, p, worst, 1e-10));
  }
  {
    auto win = enumerate_partitions(n, cfg.max_weight);
    double closest = INFINITY;
    for (size_t a = 0; a < win.size(); ++a)
      for (size_t b = a + 1; b < win.size(); ++b) {
        auto x = sigma_point(win[a], ctx), y = sigma_point(win[b], ctx);
        double d = 0, s = 0;
        for (int i = 0; i < n; ++i) {
          d = std::max(d, std::abs(x[i] - y[i]));
          s = std::max({s, std::abs(x[i]), std::abs(y[i])});
        }
        closest = std::min(closest, d / s);
      }
    json p;
    p["max_weight"] = cfg.max_weight;
    p["points"] = win.size();
    p["min_relative_separation"] = closest;
    CheckReport r = detail::report("trace.sigma_injective", cfg, p, closest > 1e-12 ? 0.0 : 1.0, 0.0);
    r.tolerance = 0.0;
    r.pass = closest > 1e-12;
    out.push_back(r);
  }
  {
    auto win = enumerate_partitions(n, std::min(cfg.max_weight, 6));
    int violations = 0;
    for (auto& a : win) {
      if (!dominance_leq(a, a)) ++violations;
      for (auto& b : win) {
        if (!(a == b) && dominance_leq(a, b) && dominance_leq(b, a)) ++violations;
        if (dominance_leq(a, b))
          for (auto& c : win)
            if (dominance_leq(b, c) && !dominance_leq(a, c)) ++violations;
      }
    }
    json p;
    p["max_weight"] = std::min(cfg.max_weight, 6);
    CheckReport r = detail::report("trace.dominance_order", cfg, p, violations, 0.0);
    r.tolerance = 0.0;
    r.pass = violations == 0;
    out.push_back(r);
  }
  if (n == 1) {
    double worst = 0;
    LittleQJacobi jac(ctx);
    for (int k = 0; k <= 8; ++k) {
      auto r = jackson_q2_integral([&](const std::vector<long double>& z) { return std::complex<long double>(std::pow(z[0], k)); },
                                   1, ctx, jackson_window(ctx));
      double mu = static_cast<double>(jac.moment(k));
      worst = std::max(worst, std::abs(r.value.real() - mu) / mu);
    }
    json p;
    p["max_degree"] = 8;
    out.push_back(detail::report("trace.jackson_moments", cfg, p, worst, 1e-12));
  }
  return out;
}

inline std::vector<CheckReport> verify_kappa(const VerifyConfig& cfg) {
  QContext ctx(cfg.q);
  std::vector<CheckReport> out;
  const int n = cfg.n;
  if (n == 1) {
    double worst = 0;
    for (double r : {0.0, 0.3, 1.0, ctx.rho_max()}) worst = std::max(worst, std::abs(kappa({r}, ctx) - (1 - ctx.p())));
    json p;
    p["expected"] = 1 - ctx.p();
    out.push_back(detail::report("kappa.constant", cfg, p, worst, 1e-12));
    return out;
  }
  std::mt19937 gen(cfg.seed);
  std::uniform_real_distribution<double> U(0.0, ctx.rho_max());
  std::vector<double> reduced;
  for (int s = 0; s < 50; ++s) {
    std::vector<double> rho(n);
    for (auto& r : rho) r = U(gen);
    reduced.push_back(kappa(rho, ctx) / x_product(rho, ctx));
  }
  const double nominal = kappa_nominal_constant(n, ctx);
  double mean = 0;
  for (double r : reduced) mean += r;
  mean /= reduced.size();
  const double expected_ratio = std::pow(1 - ctx.p(), n * n) / norm_constant(n, ctx);
  {
    json p;
    p["samples"] = 50;
    p["reduced_constant"] = mean;
    p["nominal_constant"] = nominal;
    p["ratio_to_nominal"] = mean / nominal;
    p["sign_on_ordered_region"] = mean * x_product([&] {
      std::vector<double> r(n);
      for (int i = 0; i < n; ++i) r[i] = ctx.rho_max() * (n - i) / (n + 1.0);
      return r;
    }(), ctx) > 0 ? 1 : -1;
    out.push_back(detail::report("kappa.factorization", cfg, p, detail::rel_std(reduced), 1e-8));
  }
  {
    json p;
    p["ratio_to_nominal"] = mean / nominal;
    p["expected_ratio"] = expected_ratio;
    out.push_back(detail::report("kappa.nominal_ratio", cfg, p, std::abs(mean / nominal - expected_ratio) / expected_ratio, 1e-8));
  }
  {
    std::vector<double> rho(n, 0.4 * ctx.rho_max());
    json p;
    p["rho"] = rho;
    out.push_back(detail::report("kappa.coincident_zero", cfg, p, std::abs(kappa(rho, ctx)), 0.0));
  }
  return out;
}

inline std::vector<CheckReport> verify_parseval(const VerifyConfig& cfg) {
  QContext ctx(cfg.q);
  std::vector<CheckReport> out;
  const int n = cfg.n;
  const int M = cfg.nodes();
  const int maxw = n == 1 ? 10 : 2;
  const double tol = n == 1 ? 1e-6 : 1e-5;
  auto rule = simpson_rule(M, ctx);
  SphericalTransform T(n, rule, maxw + 2, ctx);
  auto basis = enumerate_partitions(n, maxw);
  std::vector<std::vector<cplx>> U;
  for (auto& lam : basis) U.push_back(T.U_all(chi(lam)));

  {
    json p;
    p["M"] = M;
    double mass = T.sigma_mass(), expect = 1.0 / (1.0 - ctx.p());
    p["mass"] = mass;
    p["expected"] = expect;
    out.push_back(detail::report("parseval.sigma_mass", cfg, p, std::abs(mass - expect), 1e-7));
  }
  {
    json p;
    p["M"] = M;
    double mass = T.big_sigma_mass(), expect = std::pow(1.0 - ctx.p(), n * n);
    p["mass"] = mass;
    p["expected"] = expect;
    out.push_back(detail::report("parseval.big_sigma_mass", cfg, p, std::abs(mass - expect), n == 1 ? 1e-7 : 1e-5));
  }
  {
    double worst = 0;
    for (size_t a = 0; a < basis.size(); ++a)
      for (size_t b = 0; b < basis.size(); ++b) {
        cplx lhs = inner_product(chi(basis[a]), chi(basis[b]), ctx);
        worst = std::max(worst, std::abs(lhs - T.spectral_inner(U[a], U[b])));
      }
    json p;
    p["M"] = M;
    p["max_weight"] = maxw;
    p["pairs"] = basis.size() * basis.size();
    out.push_back(detail::report("parseval.pairs", cfg, p, worst, tol));
  }
  {
    std::vector<double> ratios;
    for (size_t a = 0; a < basis.size(); ++a)
      ratios.push_back(T.spectral_inner_nominal(U[a], U[a]).real() / inner_product(chi(basis[a]), chi(basis[a]), ctx).real());
    json p;
    p["M"] = M;
    p["nominal_ratio"] = ratios.front();
    p["n_factorial_N_squared"] = factorial(n) * std::pow(norm_constant(n, ctx), 2);
    out.push_back(detail::report("parseval.nominal_ratio_constant", cfg, p, detail::rel_std(ratios), 1e-6));
  }
  {
    double worst = 0;
    for (auto& lam : basis) {
      if (lam.weight() > (n == 1 ? 4 : 2)) continue;
      auto back = T.inverse(T.forward(chi(lam)), lam.weight() + 2);
      for (auto& [mu, v] : back.support()) worst = std::max(worst, std::abs(v - (mu == lam ? 1.0 : 0.0)));
    }
    auto one = SpectralFunction::sample(n, rule, [](const std::vector<double>&) { return cplx(1.0); });
    auto back = T.inverse(one, 2);
    for (auto& [mu, v] : back.support())
      worst = std::max(worst, std::abs(v - (mu == Partition::zero(n) ? 1.0 : 0.0)));
    json p;
    p["M"] = M;
    out.push_back(detail::report("parseval.roundtrip", cfg, p, worst, tol));
  }
  return out;
}

inline std::vector<CheckReport> verify_intertwine(const VerifyConfig& cfg) {
  QContext ctx(cfg.q);
  std::vector<CheckReport> out;
  auto rule = simpson_rule(cfg.nodes(), ctx);
  for (int k = 1; k <= cfg.n; ++k) {
    double worst = 0;
    for (auto& lam : enumerate_partitions(cfg.n, 2)) worst = std::max(worst, intertwine_defect(k, chi(lam), rule, ctx));
    json p;
    p["k"] = k;
    p["M"] = cfg.nodes();
    p["max_weight"] = 2;
    out.push_back(detail::report("intertwine", cfg, p, worst, 1e-8));
  }
  return out;
}

// Weighted norm ||f||_nu.
inline double radial_norm(const RadialFunction& f, const QContext& ctx) {
  return std::sqrt(inner_product(f, f, ctx).real());
}

inline std::vector<CheckReport> verify_cyclicity(const VerifyConfig& cfg) {
  QContext ctx(cfg.q);
  std::vector<CheckReport> out;
  const int n = cfg.n;
  {
    auto kr = krylov_rank(n, 3, ctx);
    long expect = 0;
    for (int w = 0; w <= 3; ++w) expect += count_partitions(n, w);
    json p;
    p["depth"] = 3;
    p["rank"] = kr.rank;
    p["partitions"] = expect;
    p["words"] = kr.vectors;
    p["smallest_singular_value"] = kr.singular_values[std::max(kr.rank - 1, 0)];
    CheckReport r = detail::report("cyclicity.krylov_rank", cfg, p, std::abs(kr.rank - expect), 0.0);
    r.tolerance = 0;
    r.pass = kr.rank == expect;
    out.push_back(r);
  }
  const int W = std::min(cfg.max_weight, n <= 2 ? 8 : 6);
  for (int k = 1; k <= n; ++k) {
    auto op = operator_matrix(n, k, W, ctx);
    int bad = 0;
    for (auto& t : op.entries())
      if (!in_band(t.row, t.col, k)) ++bad;
    json p;
    p["k"] = k;
    p["window"] = W;
    p["entries"] = op.entries().size();
    CheckReport r = detail::report("cyclicity.band", cfg, p, bad, 0.0);
    r.tolerance = 0;
    r.pass = bad == 0;
    out.push_back(r);
    json p2;
    p2["k"] = k;
    p2["window"] = W;
    out.push_back(detail::report("cyclicity.self_adjoint", cfg, p2, self_adjoint_defect(op, ctx), 1e-11));
  }
  {
    std::mt19937 gen(cfg.seed);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    double worst = 0;
    for (int trial = 0; trial < 3; ++trial) {
      RadialFunction f(n);
      for (auto& lam : enumerate_partitions(n, 4)) f.set(lam, U(gen) / std::sqrt(point_mass(lam, ctx)));
      for (int j = 1; j <= n; ++j)
        for (int k = j + 1; k <= n; ++k) {
          auto a = l_radial(j, l_radial(k, f, ctx).value, ctx).value;
          auto b = l_radial(k, l_radial(j, f, ctx).value, ctx).value;
          worst = std::max(worst, radial_norm(a - b, ctx) / radial_norm(f, ctx));
        }
    }
    json p;
    p["trials"] = 3;
    out.push_back(detail::report("cyclicity.commutator", cfg, p, worst, 1e-10));
  }
  if (n == 1) {
    double a = truncated_norm(operator_matrix(1, 1, 800, ctx), ctx);
    double b = truncated_norm(operator_matrix(1, 1, 804, ctx), ctx);
    json p;
    p["window"] = 800;
    p["norm"] = b;
    p["spectral_bound"] = 1.0 / std::pow(1 - ctx.q(), 2);
    out.push_back(detail::report("cyclicity.norm_stabilizes", cfg, p, std::abs(b - a) / b, 1e-6));
  }
  for (int k = 1; k <= n; ++k) {
    // compressions of a bounded self-adjoint operator cannot exceed its norm, the sup of
    // |e_k(a(-1/2+i rho))| over the spectral cube (attained at rho = pi/h)
    std::vector<double> top(n, ctx.rho_max());
    const double bound = std::abs(principal_eigen(top, k, ctx));
    const int Wn = n == 1 ? 200 : (n == 2 ? 14 : 8);
    double nrm = truncated_norm(operator_matrix(n, k, Wn, ctx), ctx);
    json p;
    p["k"] = k;
    p["window"] = Wn;
    p["norm"] = nrm;
    p["bound"] = bound;
    out.push_back(detail::report("cyclicity.norm_bound", cfg, p, std::max(0.0, nrm - bound) / bound, 1e-12));
  }
  return out;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"eigen", "orthogonality", "trace", "kappa",
                                                 "parseval", "intertwine", "cyclicity"};
  return names;
}

inline std::vector<CheckReport> run_suite(const std::string& suite, const VerifyConfig& cfg) {
  if (suite == "eigen") return verify_eigen(cfg);
  if (suite == "orthogonality") return verify_orthogonality(cfg);
  if (suite == "trace") return verify_trace(cfg);
  if (suite == "kappa") return verify_kappa(cfg);
  if (suite == "parseval") return verify_parseval(cfg);
  if (suite == "intertwine") return verify_intertwine(cfg);
  if (suite == "cyclicity") return verify_cyclicity(cfg);
  if (suite == "all") {
    std::vector<CheckReport> all;
    for (auto& s : suite_names()) {
      auto r = run_suite(s, cfg);
      all.insert(all.end(), r.begin(), r.end());
    }
    return all;
  }
  throw std::invalid_argument("unknown suite: " + suite);
}

}  // namespace qball

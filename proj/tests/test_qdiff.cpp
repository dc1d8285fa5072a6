#include <doctest.h>

#include <random>

#include <qball/qdiff.hpp>
#include <qball/spherical.hpp>
#include <qball/verify.hpp>

using namespace qball;

TEST_CASE("box stencil") {
  for (double q : {0.3, 0.5, 0.9}) {
    QContext ctx(q);
    const double p = q * q;
    auto s = box_stencil(1.0, ctx);
    CHECK(s.c_plus == 0.0);
    // (box f0)(1) and (box f0)(q^{-2})
    CHECK(s.c_zero == doctest::Approx(1 / (1 - p)));
    CHECK(box_stencil(1 / p, ctx).c_plus == doctest::Approx(-p / (1 - p)));
    for (int e = 0; e < 30; ++e) {
      auto a = box_stencil(std::pow(p, -e), ctx), b = box_stencil_at(e, ctx);
      CHECK(a.c_minus == doctest::Approx(b.c_minus).epsilon(1e-12));
      CHECK(a.c_plus == doctest::Approx(b.c_plus).epsilon(1e-12));
    }
    CHECK_THROWS(box_stencil(0.0, ctx));
  }
}

TEST_CASE("apply_box on one variable") {
  QContext ctx(0.5);
  const double p = 0.25;
  GridFunction chi0{{{0}, 1.0}};
  auto r = apply_box(chi0, 0, ctx);
  CHECK(r.size() == 2);
  CHECK(std::abs(r[{0}] - 1 / (1 - p)) < 1e-14);
  CHECK(std::abs(r[{1}] - (-p / (1 - p))) < 1e-14);
  for (int l = 0; l <= 3; ++l) {
    GridFunction f;
    for (int k = 0; k <= 25; ++k) f[{k}] = phi_grid(double(l), k, ctx);
    auto g = apply_box(f, 0, ctx);
    double a = a_eigen(double(l), ctx);
    for (int k = 0; k <= 24; ++k) CHECK(std::abs(g[{k}] - a * f[{k}]) <= 1e-10 * std::max(1.0, std::abs(a * f[{k}])));
  }
  // commuting axes
  GridFunction h{{{0, 1}, 1.0}, {{2, 0}, -0.5}, {{3, 3}, 2.0}};
  auto x = apply_box(apply_box(h, 0, ctx), 1, ctx), y = apply_box(apply_box(h, 1, ctx), 0, ctx);
  CHECK(x.size() == y.size());
  for (auto& [e, v] : x) CHECK(std::abs(v - y[e]) <= 1e-13 * std::abs(v));
}

TEST_CASE("isometric lift") {
  QContext ctx(0.5);
  const double p = 0.25;
  RadialFunction f(2);
  f.set(Partition{0, 0}, 1.5);
  f.set(Partition{2, 1}, cplx(0.3, -0.2));
  auto F = isometry_lift(f, ctx);
  CHECK(F.size() == 4);
  double s = 0;
  for (auto& [e, v] : F) s += norm_constant(2, ctx) * (1 - p) * std::pow(p, -e[0]) * (1 - p) * std::pow(p, -e[1]) * std::norm(v);
  CHECK(s == doctest::Approx(inner_product(f, f, ctx).real()).epsilon(1e-13));
  auto back = isometry_restrict(F, 2, ctx);
  for (auto& [lam, v] : f.support()) CHECK(std::abs(back(lam) - v) < 1e-14);
}

TEST_CASE("l_radial agrees with conjugating e_k of axis operators by hand") {
  QContext ctx(0.6);
  std::mt19937 gen(3);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int n = 1; n <= 3; ++n) {
    RadialFunction f(n);
    for (auto& lam : enumerate_partitions(n, 3)) f.set(lam, U(gen));
    auto F = isometry_lift(f, ctx);
    for (int k = 1; k <= n; ++k) {
      GridFunction sum;
      for (auto& S : index_subsets(n, k)) {
        GridFunction g = F;
        for (int axis : S) g = apply_box(g, axis, ctx);
        for (auto& [e, v] : g) sum[e] += v;
      }
      auto ref = isometry_restrict(sum, n, ctx);
      auto got = l_radial(k, f, ctx).value;
      for (auto& [mu, v] : ref.support()) CHECK(std::abs(got(mu) - v) <= 1e-11 * std::max(1.0, std::abs(v)));
      for (auto& [mu, v] : got.support()) CHECK(std::abs(ref(mu) - v) <= 1e-11 * std::max(1.0, std::abs(v)));
    }
  }
}

TEST_CASE("l_radial basics") {
  QContext ctx(0.5);
  auto r = l_radial(1, f0(2), ctx).value;
  CHECK(r.support().size() == 2);
  CHECK(std::abs(r(Partition{0, 0})) > 0);
  CHECK(std::abs(r(Partition{1, 0})) > 0);
  // n = 1 is the box operator itself
  RadialFunction f(1);
  f.set(Partition{2}, 1.0);
  f.set(Partition{0}, -3.0);
  auto a = l_radial(1, f, ctx).value;
  GridFunction g{{{2}, 1.0}, {{0}, -3.0}};
  auto b = apply_box(g, 0, ctx);
  for (auto& [e, v] : b) CHECK(std::abs(a(Partition{e[0]}) - v) < 1e-13 * std::max(1.0, std::abs(v)));
  CHECK_THROWS_AS(l_radial(3, f0(2), ctx), std::out_of_range);
  // window overflow is flagged
  auto w = l_radial(1, chi(Partition{3, 0}), ctx, 3);
  CHECK(w.overflow);
  CHECK_FALSE(l_radial(1, chi(Partition{1, 0}), ctx, 4).overflow);
}

TEST_CASE("radial eigenfunctions") {
  QContext ctx(0.5);
  for (int k = 1; k <= 2; ++k) CHECK(radial_eigen_defect(Partition{1, 0}, k, 8, ctx) <= 1e-9);
  for (int n = 2; n <= 3; ++n) {
    VerifyConfig cfg;
    cfg.n = n;
    for (auto& r : verify_eigen(cfg)) {
      INFO(r.params.dump() << " defect " << r.defect);
      CHECK(r.pass);
    }
  }
}

TEST_CASE("operator matrices") {
  QContext ctx(0.5);
  auto op = operator_matrix(1, 1, 5, ctx);
  for (auto& t : op.entries()) CHECK(std::abs(t.row[0] - t.col[0]) <= 1);
  CHECK(op.entries().size() == 3 * 6 - 2);
  for (int n = 1; n <= 3; ++n)
    for (int k = 1; k <= n; ++k) {
      auto m = operator_matrix(n, k, 6, ctx);
      CHECK(m.overflow());
      for (auto& t : m.entries()) CHECK(in_band(t.row, t.col, k));
      CHECK(self_adjoint_defect(m, ctx) <= 1e-11);
    }
  auto m = operator_matrix(2, 1, 4, ctx);
  auto d = m.dense();
  CHECK(d.size() == enumerate_partitions(2, 4).size());
  CHECK(d[m.index(Partition{0, 0})][m.index(Partition{0, 0})] == doctest::Approx(m.entry(Partition{0, 0}, Partition{0, 0})));
}

TEST_CASE("Krylov rank and norms") {
  QContext ctx(0.5);
  CHECK(krylov_rank(2, 3, ctx).rank == 6);
  CHECK(krylov_rank(3, 3, ctx).rank == 7);
  CHECK(krylov_rank(1, 5, ctx).rank == 6);
  // unweighted words of length <= 3 reach |lambda| <= 6
  CHECK(krylov_rank(2, 3, ctx, false).rank == 10);
  for (int n = 1; n <= 3; ++n) {
    VerifyConfig cfg;
    cfg.n = n;
    cfg.max_weight = 6;
    for (auto& r : verify_cyclicity(cfg)) {
      INFO(r.check << " " << r.params.dump() << " defect " << r.defect);
      CHECK(r.pass);
    }
  }
}

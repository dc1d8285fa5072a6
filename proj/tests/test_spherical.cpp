#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include <qball/spherical.hpp>
#include <qball/verify.hpp>

#include "oracles.hpp"

using namespace qball;

TEST_CASE("eigenvalue function") {
  for (double q : {0.4, 0.5, 0.8}) {
    QContext ctx(q);
    const double p = q * q;
    CHECK(std::abs(a_eigen(0.0, ctx)) < 1e-16);
    CHECK(std::abs(a_eigen(-1.0, ctx)) < 1e-16);
    CHECK(a_eigen(1.0, ctx) == doctest::Approx(-(1 + p) / p));
    // a is invariant under l -> -1-l, real on the principal line, within [1/(1+q)^2, 1/(1-q)^2]
    for (double r : {0.0, 0.3, 1.7, ctx.rho_max()}) {
      cplx a = a_eigen(cplx(-0.5, r), ctx);
      CHECK(std::abs(a.imag()) < 1e-15);
      CHECK(a.real() >= 1 / std::pow(1 + q, 2) - 1e-14);
      CHECK(a.real() <= 1 / std::pow(1 - q, 2) + 1e-14);
      CHECK(std::abs(a - a_eigen(cplx(-0.5, -r), ctx)) < 1e-14);
    }
    CHECK(eigen_tuple(Partition{0}, 1, ctx) == 0.0);
    CHECK(std::abs(eigen_tuple(Partition{0, 0}, 2, ctx)) < 1e-15);
    CHECK(eigen_tuple(Partition{0, 0}, 1, ctx) == doctest::Approx(-(1 + p) / p));
    CHECK_THROWS_AS(eigen_tuple(Partition{0, 0}, 3, ctx), std::out_of_range);
  }
}

TEST_CASE("invariance of psi under permutations and sign changes") {
  QContext ctx(0.5);
  CHECK(wres_check({1, 0}, 1, ctx));
  CHECK(wres_check({0}, 1, ctx));
  CHECK(wres_check({3, 1, -2}, 2, ctx));
  CHECK(psi({1, 0}, 1, ctx) == doctest::Approx(psi({0, -1}, 1, ctx)));
  for (int l = -3; l <= 3; ++l) {
    double q = 0.5;
    double a = (1 - std::pow(q, 1 - 2 * l)) * (1 - std::pow(q, 1 + 2 * l));
    double b = (1 - std::pow(q, 1 + 2 * l)) * (1 - std::pow(q, 1 - 2 * l));
    CHECK(a == doctest::Approx(b));
    CHECK(psi({l}, 1, ctx) == doctest::Approx(a / std::pow(1 - q * q, 2)));
  }
}

TEST_CASE("little q-Jacobi polynomials against the Hankel oracle") {
  for (double q : {0.4, 0.5, 0.7}) {
    QContext ctx(q);
    LittleQJacobi jac(ctx);
    const double p = q * q;
    CHECK(little_q_jacobi(0, ctx) == std::vector<double>{1.0});
    auto c1 = little_q_jacobi(1, ctx);
    CHECK(c1[0] == doctest::Approx(-p / (1 + p)));
    CHECK(c1[1] == 1.0);
    for (int m = 0; m <= 6; ++m) {
      auto c = little_q_jacobi(m, ctx);
      auto ref = oracle::little_q_jacobi(m, q);
      for (int j = 0; j <= m; ++j)
        CHECK(std::abs(c[j] - static_cast<double>(ref[j])) <= 1e-12 * std::max(1.0, std::abs(c[j])));
      CHECK(jac.orthogonality_residual(m) < 1e-13);
      // recurrence and coefficient forms agree
      for (double z : {0.05, 0.3, 0.9, 2.0}) {
        long double s = 0;
        for (int j = m; j >= 0; --j) s = s * z + c[j];
        CHECK(std::abs(jac.evaluate(m, (long double)z) - s) <= 1e-12L * std::max(1.0L, std::abs(s)));
      }
    }
    // Phi_m(u) = const * P_m(u)
    for (int m = 0; m <= 4; ++m) {
      std::vector<double> r;
      for (double u : {1.0, 3.0, 1 / p, 17.0, std::pow(p, -3)}) r.push_back(phi_one(double(m), u, ctx).real() / jac.evaluate(m, u));
      for (double x : r) CHECK(x == doctest::Approx(r[0]).epsilon(1e-12));
      if (m == 1) CHECK(r[0] == doctest::Approx(1 + p));
    }
  }
}

TEST_CASE("multivariate P: simple cases") {
  QContext ctx(0.5);
  LittleQJacobi jac(ctx);
  for (int n = 1; n <= 4; ++n) {
    std::vector<double> z;
    for (int i = 0; i < n; ++i) z.push_back(0.1 + 0.27 * i);
    CHECK(multivar_P(Partition::zero(n), z, ctx) == doctest::Approx(1.0).epsilon(1e-14));
  }
  std::vector<double> z{0.3, 0.2};
  double ref = (jac.evaluate(2, 0.3L) - jac.evaluate(2, 0.2L)) / (0.3L - 0.2L);
  CHECK(multivar_P(Partition{1, 0}, z, ctx) == doctest::Approx(ref).epsilon(1e-13));
  CHECK_THROWS_AS(multivar_P(Partition{1, 0}, std::vector<double>{0.3, 0.3}, ctx), coincident_error);
  // complex arguments
  cplx v = multivar_P(Partition{2, 1}, std::vector<cplx>{cplx(0.2, 0.1), cplx(-0.4, 0.3)}, ctx);
  cplx w = multivar_P(Partition{2, 1}, std::vector<cplx>{cplx(-0.4, 0.3), cplx(0.2, 0.1)}, ctx);
  CHECK(std::abs(v - w) < 1e-14);
}

TEST_CASE("multivariate P against Gram-Schmidt over monomials") {
  for (double q : {0.5, 0.7}) {
    QContext ctx(q);
    for (int n = 1; n <= 3; ++n) {
      oracle::MultiGS gs(n, 3, q);
      std::mt19937 gen(11 * n);
      std::uniform_real_distribution<double> U(0.02, 1.0);
      for (auto& lam : enumerate_partitions(n, 3)) {
        for (int trial = 0; trial < 6; ++trial) {
          std::vector<double> z(n);
          for (auto& x : z) x = U(gen);
          std::vector<oracle::mp> zm(z.begin(), z.end());
          double ref = static_cast<double>(gs.evaluate(lam, zm));
          double scale = static_cast<double>(qball::monomial(lam, zm)) + std::abs(ref);
          CHECK(std::abs(multivar_P(lam, z, ctx) - ref) <= 1e-9 * std::max(scale, 1e-3));
        }
      }
    }
  }
}

TEST_CASE("multivariate P is monic with only dominated lower terms") {
  QContext ctx(0.5);
  const int n = 3;
  auto basis = enumerate_partitions(n, 3);
  const int N = static_cast<int>(basis.size());
  std::mt19937 gen(5);
  std::uniform_real_distribution<double> U(0.2, 1.5);
  std::vector<std::vector<double>> pts;
  for (int i = 0; i < 3 * N; ++i) {
    std::vector<double> z(n);
    for (auto& x : z) x = U(gen);
    pts.push_back(z);
  }
  Eigen::MatrixXd A(pts.size(), N);
  for (size_t i = 0; i < pts.size(); ++i)
    for (int j = 0; j < N; ++j) A(i, j) = monomial(basis[j], pts[i]);
  for (auto& lam : basis) {
    Eigen::VectorXd b(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) b(i) = multivar_P(lam, pts[i], ctx);
    Eigen::VectorXd c = A.colPivHouseholderQr().solve(b);
    for (int j = 0; j < N; ++j) {
      if (basis[j] == lam)
        CHECK(c(j) == doctest::Approx(1.0).epsilon(1e-9));
      else if (!dominance_less(basis[j], lam))
        CHECK(std::abs(c(j)) < 1e-9);
    }
  }
}

TEST_CASE("orthogonality under the Jackson measure") {
  for (int n = 1; n <= 3; ++n) {
    VerifyConfig cfg;
    cfg.n = n;
    for (auto& r : verify_orthogonality(cfg)) {
      INFO(r.check << " " << r.params.dump() << " defect " << r.defect);
      CHECK(r.pass);
    }
  }
}

TEST_CASE("multivariate Phi") {
  QContext ctx(0.5);
  const double p = 0.25;
  SphericalParameter l{{1.0, 0.0}};
  for (auto u : {std::vector<double>{5.0, 2.0}, std::vector<double>{16.0, 1.0}, std::vector<double>{0.3, 0.2}})
    CHECK(std::abs(phi_multi(l, u, ctx) - (1 + p)) < 1e-13);
  auto triv = SphericalParameter::from_partition(Partition::zero(3));
  cplx c0 = phi_multi_at(triv, Partition::zero(3), ctx);
  for (auto& mu : enumerate_partitions(3, 4)) CHECK(std::abs(phi_multi_at(triv, mu, ctx) - c0) <= 1e-10 * std::abs(c0));
  auto pr = SphericalParameter::principal({1.1, 0.4});
  for (auto& mu : enumerate_partitions(2, 5)) {
    cplx v = phi_multi_at(pr, mu, ctx);
    CHECK(std::abs(v.imag()) <= 1e-12 * std::max(1.0, std::abs(v)));
    cplx w = phi_multi(pr, grid_point(mu, ctx), ctx);
    CHECK(std::abs(v - w) <= 1e-9 * std::max(1.0, std::abs(v)));
  }
  CHECK_THROWS_AS(phi_multi(l, {2.0, 2.0}, ctx), coincident_error);
  CHECK(pr.distinct());
  CHECK_FALSE(SphericalParameter::principal({0.3, 0.3}).distinct());
}

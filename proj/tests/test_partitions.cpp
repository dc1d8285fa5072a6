#include <doctest.h>

#include <set>

#include <qball/partitions.hpp>

using namespace qball;

TEST_CASE("partition validation") {
  CHECK_THROWS(Partition({1, 2}));
  CHECK_THROWS(Partition({-1}));
  CHECK_THROWS(Partition(std::vector<int>{}));
  Partition p{3, 1, 0};
  CHECK(p.weight() == 4);
  CHECK(p.shifted() == std::vector<int>{5, 2, 0});
  CHECK(from_shifted({5, 2, 0}) == p);
}

TEST_CASE("enumeration order and counts") {
  auto a = enumerate_partitions(1, 3);
  CHECK(a == std::vector<Partition>{Partition{0}, Partition{1}, Partition{2}, Partition{3}});
  auto b = enumerate_partitions(2, 2);
  CHECK(b == std::vector<Partition>{Partition{0, 0}, Partition{1, 0}, Partition{2, 0}, Partition{1, 1}});
  auto c = enumerate_partitions(3, 1);
  CHECK(c == std::vector<Partition>{Partition{0, 0, 0}, Partition{1, 0, 0}});
  for (int n = 1; n <= 4; ++n)
    for (int w = 0; w <= 12; ++w) CHECK(static_cast<long>(partitions_of(n, w).size()) == count_partitions(n, w));
  CHECK(count_partitions(2, 3) == 2);
  CHECK(count_partitions(3, 3) == 3);
}

TEST_CASE("dominance") {
  CHECK(dominance_leq(Partition{1, 1}, Partition{2, 0}));
  CHECK_FALSE(dominance_leq(Partition{2, 0}, Partition{1, 1}));
  CHECK_FALSE(dominance_leq(Partition{3, 0, 0}, Partition{2, 2, 1}));
  CHECK_FALSE(dominance_leq(Partition{2, 2, 1}, Partition{3, 0, 0}));
  // unequal weights are compared literally
  CHECK(dominance_leq(Partition{1, 0}, Partition{2, 0}));
  CHECK_THROWS_AS(dominance_leq(Partition{1}, Partition{1, 0}), dimension_error);
  auto win = enumerate_partitions(3, 5);
  for (auto& a : win) {
    CHECK(dominance_leq(a, a));
    for (auto& b : win) {
      if (dominance_leq(a, b) && dominance_leq(b, a)) CHECK(a == b);
      for (auto& c : win)
        if (dominance_leq(a, b) && dominance_leq(b, c)) CHECK(dominance_leq(a, c));
    }
  }
}

TEST_CASE("grid and sigma points") {
  QContext ctx(0.5);
  const double q = 0.5;
  CHECK(delta_staircase(3) == Partition{2, 1, 0});
  auto u = grid_point(Partition{0, 0}, ctx);
  CHECK(u[0] == doctest::Approx(1 / (q * q)));
  CHECK(u[1] == 1.0);
  CHECK(grid_point(Partition{4}, ctx)[0] == doctest::Approx(std::pow(q, -8)));
  auto v = grid_point(Partition{1, 1, 0}, ctx);
  CHECK(v[0] == doctest::Approx(std::pow(q, -6)));
  CHECK(v[1] == doctest::Approx(std::pow(q, -4)));
  CHECK(v[2] == 1.0);
  for (auto& lam : enumerate_partitions(3, 6)) {
    auto g = grid_point(lam, ctx);
    CHECK(g[0] > g[1]);
    CHECK(g[1] > g[2]);
    CHECK(g[2] >= 1.0);
  }
  CHECK(sigma_point(Partition{0}, ctx)[0] == 1.0);
  auto s = sigma_point(Partition{0, 0}, ctx);
  CHECK(s[0] == doctest::Approx(1 + 1 / (q * q)));
  CHECK(s[1] == doctest::Approx(1.0));
  std::set<std::vector<double>> seen;
  for (auto& lam : enumerate_partitions(2, 4)) seen.insert(sigma_point(lam, ctx));
  CHECK(seen.size() == enumerate_partitions(2, 4).size());
}

TEST_CASE("symmetric polynomials") {
  std::vector<double> z{0.7, -1.3};
  CHECK(schur(Partition{1, 0}, z) == doctest::Approx(z[0] + z[1]));
  CHECK(monomial(Partition{2, 1}, z) == doctest::Approx(z[0] * z[0] * z[1] + z[1] * z[1] * z[0]));
  CHECK(vandermonde(std::vector<double>{4.0, 1.0}) == 3.0);
  std::vector<double> w{0.5, 2.0, -1.0};
  CHECK(elementary(2, w) == doctest::Approx(0.5 * 2 - 0.5 - 2));
  CHECK(elementary(0, w) == 1.0);
  CHECK(elementary(4, w) == 0.0);
  // s_(1,1) = e_2, s_(2,0) = h_2
  std::vector<double> z3{0.3, 1.1, -0.4};
  CHECK(schur(Partition{1, 1, 0}, z3) == doctest::Approx(elementary(2, z3)));
  double h2 = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) h2 += z3[i] * z3[j];
  CHECK(schur(Partition{2, 0, 0}, z3) == doctest::Approx(h2));
  CHECK(monomial(Partition{1, 1, 1}, z3) == doctest::Approx(z3[0] * z3[1] * z3[2]));
  CHECK_THROWS_AS(schur(Partition{1, 0}, std::vector<double>{1.0, 1.0}), coincident_error);
  auto c = sym_eval(SymKind::vandermonde, Partition{0, 0}, 0, {cplx(2.0), cplx(1.0)});
  CHECK(c == cplx(1.0));
}

TEST_CASE("Schur specialization at the staircase point") {
  for (double q : {0.3, 0.5, 0.8}) {
    QContext ctx(q);
    for (int n = 1; n <= 3; ++n) {
      auto z = grid_point(Partition::zero(n), ctx);
      for (auto& lam : enumerate_partitions(n, 6)) {
        double ref = vandermonde(grid_point(lam, ctx)) / vandermonde(z);
        CHECK(std::abs(schur(lam, z) - ref) <= 1e-10 * std::abs(ref));
      }
    }
  }
}

TEST_CASE("hat weight") {
  CHECK(hat_weight(Partition{2, 1}) == std::vector<int>{1, 2, 1});
  CHECK(hat_weight(Partition{3}) == std::vector<int>{6});
  CHECK(hat_weight(Partition{1, 1, 1}) == std::vector<int>{0, 0, 2, 0, 0});
}

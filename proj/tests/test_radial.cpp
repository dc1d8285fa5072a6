#include <doctest.h>

#include <random>

#include <qball/radial.hpp>

#include "oracles.hpp"

using namespace qball;

TEST_CASE("radial function container") {
  RadialFunction f(2);
  f.set(Partition{1, 0}, 2.0);
  CHECK(f(Partition{1, 0}) == cplx(2.0));
  CHECK(f(Partition{0, 0}) == cplx(0.0));
  CHECK_THROWS_AS(f.set(Partition{1}, 1.0), dimension_error);
  auto g = f + chi(Partition{0, 0});
  CHECK(g.support().size() == 2);
  auto h = cplx(0, 1) * g - g;
  CHECK(h(Partition{0, 0}) == cplx(-1, 1));
  CHECK_THROWS_AS(f += f0(3), dimension_error);
}

TEST_CASE("Jackson integrals") {
  const double q = 0.6, p = q * q;
  QContext ctx(q);
  auto one = jackson_q2_integral([](const std::vector<long double>&) { return std::complex<long double>(1); }, 1, ctx, 120);
  CHECK(std::abs(one.value.real() - p) < 1e-15);
  for (int k = 0; k < 6; ++k) {
    auto r = jackson_q2_integral(
        [&](const std::vector<long double>& z) { return std::complex<long double>(std::pow(z[0], k)); }, 1, ctx, 120);
    double mu = (1 - p) * std::pow(p, k + 1) / (1 - std::pow(p, k + 1));
    CHECK(std::abs(r.value.real() - mu) < 1e-15);
  }
  auto zero = jackson_q2_integral(
      [](const std::vector<long double>& z) { return std::complex<long double>((z[0] - z[1]) * (z[1] - z[0]) * 0); }, 2, ctx, 20);
  CHECK(zero.value == cplx(0.0));
  // truncated window: the reported tail bound covers the error
  auto t = jackson_q2_integral([](const std::vector<long double>&) { return std::complex<long double>(1); }, 1, ctx, 10);
  CHECK(std::abs(t.value.real() - p) <= t.tail_bound * 1.0001);

  CHECK(jackson_qinv2_integral(chi(Partition{0}), ctx) == cplx(1 - p));
  CHECK(std::abs(jackson_qinv2_integral(chi(Partition{1}), ctx) - (1 - p) / p) < 1e-15);
  CHECK(std::abs(jackson_qinv2_integral(chi(Partition{0, 0}), ctx) - (1 - p) * (1 - p) / p) < 1e-15);
}

TEST_CASE("polynomial integrands reproduce the moment expansion") {
  QContext ctx(0.5);
  oracle::mp P = oracle::mp(0.5) * oracle::mp(0.5);
  for (int n = 1; n <= 3; ++n) {
    auto d2 = oracle::vandermonde_squared(n);
    for (auto& lam : enumerate_partitions(n, 3)) {
      auto poly = oracle::mul(oracle::monomial_poly(lam), d2);
      double ref = static_cast<double>(oracle::integrate(poly, n, P));
      auto r = jackson_q2_integral(
          [&](const std::vector<long double>& z) {
            long double d = vandermonde(z);
            return std::complex<long double>(monomial(lam, z) * d * d);
          },
          n, ctx, 60);
      CHECK(std::abs(r.value.real() - ref) <= 1e-12 * std::abs(ref));
    }
  }
}

TEST_CASE("normalization constant and point masses") {
  for (double q : {0.5, 0.7}) {
    QContext ctx(q);
    const double p = q * q;
    CHECK(norm_constant(1, ctx) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(norm_constant(2, ctx) - std::pow(q, 6)) < 1e-15);
    CHECK(std::abs(point_mass(Partition{0}, ctx) - (1 - p)) < 1e-15);
    CHECK(std::abs(point_mass(Partition{0, 0}, ctx) - std::pow(1 - p, 4)) < 1e-15);
    for (int k = 0; k < 8; ++k) CHECK(point_mass(Partition{k}, ctx) == doctest::Approx((1 - p) * std::pow(p, -k)));
    MeasureWeights w(3, ctx);
    for (auto& lam : enumerate_partitions(3, 5)) {
      CHECK(w(lam) > 0);
      CHECK(w(lam) == point_mass(lam, ctx));
    }
  }
  QContext half(0.5);
  CHECK(norm_constant(2, half) == 0.015625);
}

TEST_CASE("integral of f0 and inner products") {
  QContext ctx(0.5);
  for (int n = 1; n <= 4; ++n) {
    double expect = std::pow(0.75, n * n);
    CHECK(std::abs(radial_integral(f0(n), ctx).real() - expect) <= 1e-14 * expect);
    CHECK(std::abs(inner_product(f0(n), f0(n), ctx).real() - expect) <= 1e-14 * expect);
  }
  CHECK(inner_product(chi(Partition{1, 0}), chi(Partition{1, 1}), ctx) == cplx(0.0));
  auto f = chi(Partition{1, 0}) + cplx(0, 2) * chi(Partition{0, 0});
  auto g = chi(Partition{1, 0}) + cplx(1, 1) * chi(Partition{0, 0});
  CHECK(std::abs(inner_product(f, g, ctx) - std::conj(inner_product(g, f, ctx))) < 1e-15);
}

TEST_CASE("trace-side integral equals the radial integral") {
  for (double q : {0.3, 0.5, 0.7}) {
    QContext ctx(q);
    const double p = q * q;
    for (int k = 0; k < 6; ++k)
      CHECK(std::abs(trace_side_integral(chi(Partition{k}), ctx).real() - (1 - p) * std::pow(p, -k)) <=
            1e-13 * (1 - p) * std::pow(p, -k));
    std::mt19937 gen(7);
    std::uniform_real_distribution<double> U(-1, 1);
    for (int n = 1; n <= 3; ++n) {
      RadialFunction f(n);
      for (auto& lam : enumerate_partitions(n, 6)) {
        auto c = chi(lam);
        double r = radial_integral(c, ctx).real();
        CHECK(std::abs(trace_side_integral(c, ctx).real() - r) <= 1e-12 * r);
        f.set(lam, cplx(U(gen), U(gen)));
      }
      double scale = 0;
      for (auto& [lam, v] : f.support()) scale += point_mass(lam, ctx) * std::abs(v);
      CHECK(std::abs(trace_side_integral(f, ctx) - radial_integral(f, ctx)) <= 1e-12 * scale);
    }
  }
}

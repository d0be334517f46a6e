#include <doctest.h>

#include <random>

#include "fenchel/lp.hpp"

using namespace fenchel;

TEST_CASE("lp: small optimum") {
  // min -x - y  s.t. x + 2y <= 4, 3x + y <= 6, x, y >= 0  -> (1.6, 1.2)
  lp::Problem p(2);
  p.set_lower(0, 0);
  p.set_lower(1, 0);
  p.add_le(make_vec({1, 2}), 4);
  p.add_le(make_vec({3, 1}), 6);
  p.minimize(make_vec({-1, -1}));
  const auto r = p.solve();
  REQUIRE(r.optimal());
  CHECK(r.value == doctest::Approx(-2.8));
  CHECK(r.x(0) == doctest::Approx(1.6));
  CHECK(r.x(1) == doctest::Approx(1.2));
}

TEST_CASE("lp: maximize reports the caller's sign") {
  lp::Problem p(1);
  p.set_bounds(0, -3, 5);
  p.maximize(make_vec({2}));
  const auto r = p.solve();
  REQUIRE(r.optimal());
  CHECK(r.value == doctest::Approx(10));
}

TEST_CASE("lp: free variables and equalities") {
  lp::Problem p(3);
  p.add_eq(make_vec({1, 1, 1}), 1);
  p.add_ge(make_vec({1, 0, 0}), -2);
  p.add_le(make_vec({0, 1, -1}), 0.5);
  p.add_ge(make_vec({0, 1, -1}), -0.5);
  p.add_le(make_vec({0, 0, 1}), 3);
  p.minimize(make_vec({1, 0, 0}));
  const auto r = p.solve();
  REQUIRE(r.optimal());
  CHECK(r.value == doctest::Approx(-2));
  CHECK(r.x.sum() == doctest::Approx(1));
}

TEST_CASE("lp: infeasible and unbounded") {
  lp::Problem a(1);
  a.add_le(make_vec({1}), 0);
  a.add_ge(make_vec({1}), 1);
  a.minimize(make_vec({0}));
  CHECK(a.solve().status == lp::Status::Infeasible);

  lp::Problem b(2);
  b.add_le(make_vec({1, -1}), 0);
  b.minimize(make_vec({1, 0}));
  CHECK(b.solve().status == lp::Status::Unbounded);
}

TEST_CASE("lp: degenerate vertex does not cycle") {
  // many constraints through the optimum
  lp::Problem p(2);
  for (int k = 0; k < 12; ++k) {
    const double t = k / 11.0;
    p.add_le(make_vec({t, 1 - t}), 1);
  }
  p.add_le(make_vec({1, 1}), 2);
  p.maximize(make_vec({1, 1}));
  const auto r = p.solve();
  REQUIRE(r.optimal());
  CHECK(r.value == doctest::Approx(2));
}

TEST_CASE("lp: random boxes agree with the corner rule") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 4;
    lp::Problem p(n);
    Vec c(n);
    double expect = 0;
    for (int j = 0; j < n; ++j) {
      double lo = u(rng), hi = u(rng);
      if (lo > hi) std::swap(lo, hi);
      p.set_bounds(j, lo, hi);
      c(j) = u(rng);
      expect += c(j) > 0 ? c(j) * lo : c(j) * hi;
    }
    p.minimize(c);
    const auto r = p.solve();
    REQUIRE(r.optimal());
    CHECK(r.value == doctest::Approx(expect).epsilon(1e-9));
  }
}

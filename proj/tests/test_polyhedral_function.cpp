#include <doctest.h>

#include <random>

#include "fenchel/calculus.hpp"
#include "fenchel/errors.hpp"
#include "fenchel/polyhedral_function.hpp"
#include "oracles.hpp"

using namespace fenchel;

namespace {

ConvexPolyhedralFunction abs1(double shift = 0.0) {
  return {{{make_vec({1}), -shift}, {make_vec({-1}), shift}}, Polyhedron::whole(1)};
}

ConvexPolyhedralFunction interval(double lo, double hi) { return build_indicator(Polyhedron::box(make_vec({lo}), make_vec({hi}))); }

PiecewiseMinFunction neg_abs_on_unit() {
  const auto dom = Polyhedron::box(make_vec({-1}), make_vec({1}));
  return PiecewiseMinFunction({ConvexPolyhedralFunction({{make_vec({-1}), 0}}, dom),
                               ConvexPolyhedralFunction({{make_vec({1}), 0}}, dom)});
}

double val(const ExtReal& x) { return x.value(); }

}  // namespace

TEST_CASE("eval: indicator and affine maximum") {
  const auto f = interval(-1, 1);
  CHECK(val(eval(f, make_vec({0}))) == 0);
  CHECK(eval(f, make_vec({2})).is_pos_inf());
  const ConvexPolyhedralFunction g({{make_vec({1}), 0}, {make_vec({2}), -1}}, Polyhedron::whole(1));
  CHECK(val(eval(g, make_vec({2}))) == 3);
  CHECK_THROWS_AS((void)eval(g, make_vec({1, 2})), DimensionError);
}

TEST_CASE("conjugate: interval indicator is the absolute value") {
  const auto fs = conjugate(interval(-1, 1));
  CHECK(fs.pieces().size() == 2);
  CHECK(fs.domain().halfspaces().empty());
  CHECK(equivalent(fs, abs1()));
  for (double s : {-3.0, -0.5, 0.0, 2.0}) CHECK(val(fs(make_vec({s}))) == doctest::Approx(std::abs(s)));
}

TEST_CASE("conjugate: two-point indicator") {
  const auto f = build_indicator(std::vector<Vec>{make_vec({0}), make_vec({2})});
  CHECK(f.branches().size() == 2);
  const auto fs = conjugate(f);
  for (double s : {-2.0, -0.1, 0.0, 0.7, 3.0}) CHECK(val(fs(make_vec({s}))) == doctest::Approx(std::max(0.0, 2 * s)));
}

TEST_CASE("conjugate: l1 ball indicator is the max norm") {
  std::vector<Halfspace> hs;
  for (double a : {1.0, -1.0}) {
    for (double b : {1.0, -1.0}) hs.push_back({make_vec({a, b}), 1, false});
  }
  const auto fs = conjugate(build_indicator(Polyhedron(2, hs)));
  CHECK(fs.pieces().size() == 4);
  std::mt19937_64 rng(3);
  for (int k = 0; k < 50; ++k) {
    const Vec s = oracle::random_vec(rng, 2, -3, 3, 0.25);
    CHECK(val(fs(s)) == doctest::Approx(s.lpNorm<Eigen::Infinity>()));
  }
}

TEST_CASE("conjugate: improper inputs") {
  const ConvexPolyhedralFunction empty({{make_vec({0}), 0}}, Polyhedron::empty(1));
  CHECK_THROWS_AS((void)conjugate(empty), ImproperFunctionError);
}

TEST_CASE("envelope: worked examples") {
  const auto two = build_indicator(std::vector<Vec>{make_vec({0}), make_vec({1})});
  CHECK(equivalent(convex_envelope(two), interval(0, 1)));

  const auto env = convex_envelope(neg_abs_on_unit());
  for (double x : {-1.0, -0.3, 0.0, 0.8, 1.0}) CHECK(val(env(make_vec({x}))) == doctest::Approx(-1));
  CHECK(env(make_vec({1.5})).is_pos_inf());

  const ConvexPolyhedralFunction g({{make_vec({1}), 0}, {make_vec({2}), -1}}, Polyhedron::box(make_vec({-1}), make_vec({3})));
  CHECK(equivalent(convex_envelope(g), g));
}

TEST_CASE("envelope: no affine minorant") {
  // min(x, -x) on the whole line has no affine minorant
  const PiecewiseMinFunction f({ConvexPolyhedralFunction::affine(make_vec({1}), 0),
                                ConvexPolyhedralFunction::affine(make_vec({-1}), 0)});
  CHECK_FALSE(affine_minorant(f).has_value());
  CHECK_THROWS_AS((void)convex_envelope(f), EnvelopeImproperError);
  CHECK_FALSE(conjugate(f).is_proper());
}

TEST_CASE("inf-convolution: worked examples") {
  CHECK(equivalent(inf_convolution(interval(0, 1), interval(0, 1)), interval(0, 2)));
  CHECK(equivalent(inf_convolution(abs1(), abs1()), abs1()));
  const ConvexPolyhedralFunction g({{make_vec({1, 0}), 0}, {make_vec({-1, 2}), 1}}, Polyhedron::whole(2));
  CHECK(equivalent(inf_convolution(g, build_indicator(Polyhedron::point(make_vec({0, 0})))), g));
}

TEST_CASE("build_indicator") {
  const Polyhedron p(1, {{make_vec({1}), 1, false}, {make_vec({-1}), 1, false}});
  CHECK(equivalent(build_indicator(p), interval(-1, 1)));
  CHECK_THROWS_AS((void)build_indicator(Polyhedron::empty(1)), EmptyDomainError);
  CHECK_THROWS_AS((void)build_indicator(std::vector<Vec>{}), EmptyDomainError);
}

TEST_CASE("affine_minorant: convex functions use a piece") {
  const ConvexPolyhedralFunction g({{make_vec({1}), 0}, {make_vec({2}), -1}}, Polyhedron::whole(1));
  const auto m = affine_minorant(g);
  REQUIRE(m);
  CHECK(m->slope(0) == 1);
  CHECK(m->intercept == 0);
  const auto n = affine_minorant(neg_abs_on_unit());
  REQUIRE(n);
  for (double x = -1; x <= 1; x += 0.125) CHECK(n->at(make_vec({x})) <= val(neg_abs_on_unit()(make_vec({x}))) + 1e-12);
}

TEST_CASE("sum and minimize") {
  const auto s = sum(abs1(), abs1(1.0));
  for (double x : {-1.0, 0.0, 0.4, 1.0, 2.0}) CHECK(val(s(make_vec({x}))) == doctest::Approx(std::abs(x) + std::abs(x - 1)));
  const auto m = minimize(s);
  CHECK(val(m.value) == doctest::Approx(1));
  CHECK_THROWS_AS((void)sum(PiecewiseMinFunction(interval(0, 1)), PiecewiseMinFunction(interval(2, 3))), EmptyDomainError);
  CHECK(minimize(ConvexPolyhedralFunction::affine(make_vec({1}), 0)).value.is_neg_inf());
}

TEST_CASE("property: biconjugate against the epigraph hull oracle") {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 30; ++t) {
    const int d = 1 + t % 2;
    const auto f = oracle::random_bounded_pmf(rng, d);
    const auto env = convex_envelope(f);
    const auto lifted = oracle::lifted_cell_vertices(f);
    for (int k = 0; k < 20; ++k) {
      const Vec x = oracle::random_vec(rng, d, -2.5, 2.5, 0.125);
      const double want = oracle::lower_hull_at(lifted, x);
      const double got = val(env(x));
      if (std::isinf(want)) {
        CHECK(std::isinf(got));
      } else {
        CHECK(got == doctest::Approx(want).epsilon(1e-9).scale(1));
      }
    }
  }
}

TEST_CASE("property: conjugate matches the brute-force supremum") {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 30; ++t) {
    const int d = 1 + t % 2;
    const auto f = oracle::random_bounded_pmf(rng, d);
    const auto fs = conjugate(f);
    const auto lifted = oracle::lifted_cell_vertices(f);
    for (int k = 0; k < 20; ++k) {
      const Vec s = oracle::random_vec(rng, d, -3, 3, 0.25);
      CHECK(val(fs(s)) == doctest::Approx(oracle::conjugate_at(lifted, s)).epsilon(1e-9).scale(1));
    }
  }
}

TEST_CASE("property: conjugate involution") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 30; ++t) {
    const auto f = oracle::random_convex(rng, 1 + t % 2);
    const auto fs = conjugate(f);
    CHECK(equivalent(conjugate(conjugate(fs)), fs));
    CHECK(equivalent(conjugate(fs), f));
  }
}

TEST_CASE("property: Young-Fenchel inequality") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 20; ++t) {
    const int d = 1 + t % 2;
    const auto f = oracle::random_bounded_pmf(rng, d);
    const auto fs = conjugate(f);
    for (int k = 0; k < 30; ++k) {
      const Vec x = oracle::random_vec(rng, d, -2, 2, 0.25);
      const Vec s = oracle::random_vec(rng, d, -3, 3, 0.25);
      CHECK((f(x) + fs(s)).value() >= s.dot(x) - 1e-9);
    }
  }
}

TEST_CASE("property: inf-convolution conjugate identity") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 20; ++t) {
    const int d = 1 + t % 2;
    const auto f = oracle::random_bounded_convex(rng, d);
    const auto g = oracle::random_bounded_convex(rng, d);
    const auto lhs = conjugate(inf_convolution(f, g));
    const auto rhs = sum(conjugate(f), conjugate(g));
    for (int k = 0; k < 20; ++k) {
      const Vec s = oracle::random_vec(rng, d, -3, 3, 0.25);
      CHECK(std::abs(val(lhs(s)) - val(rhs(s))) <= 1e-9);
    }
  }
}

TEST_CASE("property: monotonicity of the conjugate") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 20; ++t) {
    const int d = 1 + t % 2;
    const auto f = oracle::random_bounded_convex(rng, d);
    // g >= f: shrink the domain and lift by a nonnegative constant
    auto pieces = f.pieces();
    for (auto& p : pieces) p.intercept += 0.5;
    auto hs = f.domain().halfspaces();
    const Vec c = f.domain().feasible_point().value();
    hs.push_back({Vec::Ones(d), Vec::Ones(d).dot(c) + 0.25, false});
    const ConvexPolyhedralFunction g(pieces, Polyhedron(d, hs));
    CHECK(dominated_by(f, g));
    CHECK(dominated_by(conjugate(g), conjugate(f)));
  }
}

#include <doctest.h>

#include <random>

#include "fenchel/calculus.hpp"
#include "fenchel/errors.hpp"
#include "fenchel/subdiff.hpp"
#include "oracles.hpp"

using namespace fenchel;

namespace {

ConvexPolyhedralFunction abs1(double shift = 0.0) {
  return {{{make_vec({1}), -shift}, {make_vec({-1}), shift}}, Polyhedron::whole(1)};
}

ConvexPolyhedralFunction interval(double lo, double hi) {
  return build_indicator(Polyhedron::box(make_vec({lo}), make_vec({hi})));
}

PiecewiseMinFunction points(std::initializer_list<double> xs) {
  std::vector<Vec> v;
  for (double x : xs) v.push_back(make_vec({x}));
  return build_indicator(v);
}

// x + indicator of {0, 2}
PiecewiseMinFunction tilted_two_points() {
  return PiecewiseMinFunction({ConvexPolyhedralFunction({{make_vec({1}), 0}}, Polyhedron::point(make_vec({0}))),
                               ConvexPolyhedralFunction({{make_vec({1}), 0}}, Polyhedron::point(make_vec({2})))});
}

// indicator of the unit l1 ball centred at (cx, 0)
ConvexPolyhedralFunction l1_ball(double cx) {
  std::vector<Halfspace> hs;
  for (double a : {1.0, -1.0}) {
    for (double b : {1.0, -1.0}) hs.push_back({make_vec({a, b}), 1 + a * cx, false});
  }
  return build_indicator(Polyhedron(2, hs));
}

const Grid kProbe1(make_vec({-3}), make_vec({3}), {61});
const Grid kDual1(make_vec({-4}), make_vec({4}), {81});

}  // namespace

TEST_CASE("set_compare: worked examples") {
  const auto sq = Polyhedron::box(make_vec({0, 0}), make_vec({1, 1}));
  auto r = set_compare(sq, sq, 10, 64);
  CHECK(r.hausdorff_truncated == doctest::Approx(0));
  CHECK(r.containment_ab);
  CHECK(r.containment_ba);

  r = set_compare(Polyhedron::box(make_vec({-1}), make_vec({1})), Polyhedron::box(make_vec({-1}), make_vec({2})), 10, 2);
  CHECK(r.hausdorff_truncated == doctest::Approx(1));
  CHECK(r.containment_ab);
  CHECK_FALSE(r.containment_ba);

  const Polyhedron cone(1, {{make_vec({-1}), 0, false}});
  const Polyhedron shifted(1, {{make_vec({-1}), 0.1, false}});
  r = set_compare(cone, shifted, 10, 2);
  CHECK(r.hausdorff_truncated == doctest::Approx(0.1));

  r = set_compare(Polyhedron::empty(2), sq, 10, 16);
  CHECK(r.containment_ab);
  CHECK_FALSE(r.containment_ba);
  CHECK(std::isinf(r.hausdorff_truncated));
}

TEST_CASE("set_compare: csv export of gaps") {
  const auto r = set_compare(Polyhedron::box(make_vec({-1}), make_vec({1})), Polyhedron::box(make_vec({-1}), make_vec({2})), 10, 2);
  const std::string csv = r.to_csv();
  CHECK(csv.rfind("u1,gap\n", 0) == 0);
  CHECK(csv.find("1,-1\n") != std::string::npos);
}

TEST_CASE("directions: unit and quasi-uniform") {
  for (int d = 1; d <= 3; ++d) {
    const auto dirs = directions(d, 64);
    CHECK(!dirs.empty());
    for (const auto& u : dirs) CHECK(u.norm() == doctest::Approx(1));
  }
  CHECK(directions(1, 64).size() == 2);
  CHECK(directions(2, 64).size() == 64);
}

TEST_CASE("sum rules: opposite half-lines") {
  const ConvexPolyhedralFunction f = build_indicator(Polyhedron(1, {{make_vec({1}), 0, false}}));
  const ConvexPolyhedralFunction g = build_indicator(Polyhedron(1, {{make_vec({-1}), 0, false}}));
  const auto r = check_sum_rules(f, g, make_vec({0}), 0.1, CompareParams{});
  CHECK(r.closed_union.holds);
  CHECK(r.intersected_unions.holds);
  CHECK(r.doubled_epsilon.holds);
}

TEST_CASE("sum rules: touching l1 balls") {
  const auto r = check_sum_rules(l1_ball(1), l1_ball(-1), make_vec({0, 0}), 0.1, CompareParams{});
  CHECK(r.closed_union.holds);
  CHECK(r.doubled_epsilon.holds);
  REQUIRE(r.split_residuals.size() >= 2);
  for (size_t k = 1; k < r.split_residuals.size(); ++k) {
    CHECK(r.split_residuals[k].first > r.split_residuals[k - 1].first);
    CHECK(r.split_residuals[k].second <= r.split_residuals[k - 1].second + 1e-12);
  }
}

TEST_CASE("sum rules: two-point counterexample") {
  const auto r = check_sum_rules(points({0, 1}), tilted_two_points(), make_vec({0}), 0.1, CompareParams{});
  CHECK_FALSE(r.doubled_epsilon.holds);
  CHECK_FALSE(r.closed_union.holds);
  CHECK_FALSE(r.intersected_unions.holds);
}

TEST_CASE("sum rules: scope and domain errors") {
  const auto dom = Polyhedron::box(make_vec({-1}), make_vec({1}));
  const PiecewiseMinFunction tent({ConvexPolyhedralFunction({{make_vec({-1}), 0}}, dom),
                                   ConvexPolyhedralFunction({{make_vec({1}), 0}}, dom)});
  const PiecewiseMinFunction inner = interval(-0.5, 0.5);
  // threshold of the sum at 0 is 0.5
  CHECK_THROWS_AS((void)check_sum_rules(tent, inner, make_vec({0}), 0.5, CompareParams{}), ScopeError);
  CHECK_THROWS_AS((void)check_sum_rules(tent, inner, make_vec({0}), 0.0, CompareParams{}), ScopeError);
  CHECK_NOTHROW((void)check_sum_rules(tent, inner, make_vec({0}), 0.6, CompareParams{}));
  const auto relaxed = check_sum_rules(tent, inner, make_vec({0}), 0.5, CompareParams{}, false);
  CHECK_FALSE(relaxed.closed_union.applicable);
  CHECK_THROWS_AS((void)check_sum_rules(tent, inner, make_vec({0.75}), 0.6, CompareParams{}), DomainError);
}

TEST_CASE("regularization equality: worked examples") {
  const CompareParams p;
  const auto f = ConvexPolyhedralFunction({{make_vec({1}), 0}, {make_vec({-2}), 1}}, Polyhedron::box(make_vec({-2}), make_vec({1})));
  const auto g = ConvexPolyhedralFunction({{make_vec({0.5}), 0}}, Polyhedron::box(make_vec({-1}), make_vec({2})));
  auto s = check_regularization_equality(f, g, kProbe1, p);
  CHECK(s.holds);
  CHECK(s.residual <= 1e-12);
  CHECK(s.exact == std::optional<bool>(true));

  s = check_regularization_equality(points({0, 1}), tilted_two_points(), kProbe1, p);
  CHECK_FALSE(s.holds);
  CHECK(s.exact == std::optional<bool>(false));
  CHECK(s.detail.find("above") != std::string::npos);  // envelope of the sum is +inf at 0.5

  s = check_regularization_equality(points({0, 1}), points({0, 1}), kProbe1, p);
  CHECK(s.holds);

  const PiecewiseMinFunction wild({ConvexPolyhedralFunction::affine(make_vec({1}), 0),
                                   ConvexPolyhedralFunction::affine(make_vec({-1}), 0)});
  CHECK_THROWS_AS((void)check_regularization_equality(wild, interval(0, 1), kProbe1, p), HypothesisError);
  CHECK_THROWS_AS((void)check_regularization_equality(interval(0, 1), interval(2, 3), kProbe1, p), HypothesisError);
}

TEST_CASE("conjugate identity: worked examples") {
  const CompareParams p;
  CHECK(check_conjugate_identity(abs1(), abs1(1), kDual1, p).holds);
  CHECK_FALSE(check_conjugate_identity(points({0, 1}), tilted_two_points(), kDual1, p).holds);
  const auto tent = PiecewiseMinFunction(
      {ConvexPolyhedralFunction({{make_vec({-1}), 0}}, Polyhedron::box(make_vec({-1}), make_vec({1}))),
       ConvexPolyhedralFunction({{make_vec({1}), 0}}, Polyhedron::box(make_vec({-1}), make_vec({1})))});
  const auto s = check_conjugate_identity(tent, ConvexPolyhedralFunction::zero(1), kDual1, p);
  CHECK(s.holds);
  CHECK(s.exact == std::optional<bool>(true));
}

TEST_CASE("equivalence harness: worked examples") {
  const CompareParams p;
  auto r = equivalence_harness(abs1(), abs1(1), {{make_vec({0}), 0.1}, {make_vec({0.5}), 0.2}}, kProbe1, p);
  for (const auto& s : r.statuses) CHECK(s.holds);
  CHECK(r.consistent);

  r = equivalence_harness(points({0, 1}), tilted_two_points(), {{make_vec({0}), 0.1}}, kProbe1, p);
  for (const auto& s : r.statuses) CHECK_FALSE(s.holds);
  CHECK(r.consistent);

  const Grid g2(make_vec({-2, -2}), make_vec({2, 2}), {21, 21});
  r = equivalence_harness(l1_ball(1), l1_ball(-1), {{make_vec({0, 0}), 0.1}}, g2, p);
  for (const auto& s : r.statuses) CHECK(s.holds);
  CHECK(r.consistent);
}

TEST_CASE("qualification: worked examples") {
  CHECK(qualification_check(interval(-1, 1), interval(0, 2)) == Qualification::CONTINUITY_POINT);
  const auto seg = [](double lo, double hi) {
    return build_indicator(Polyhedron(2, {{make_vec({1, 0}), 0, false},
                                          {make_vec({-1, 0}), 0, false},
                                          {make_vec({0, 1}), hi, false},
                                          {make_vec({0, -1}), -lo, false}}));
  };
  CHECK(qualification_check(seg(0, 2), seg(1, 3)) == Qualification::RI_OVERLAP);
  CHECK(qualification_check(l1_ball(1), l1_ball(-1)) == Qualification::NONE);
  CHECK(qualification_check(interval(0, 1), interval(1, 2)) == Qualification::NONE);
}

TEST_CASE("exact sum rule: worked examples") {
  CompareParams p;
  auto s = exact_sum_rule_check(abs1(), abs1(1), make_vec({0.5}), 0, p);
  CHECK(s.holds);
  s = exact_sum_rule_check(abs1(), abs1(1), make_vec({0}), 0, p);
  CHECK(s.holds);
  const auto lhs = subdifferential(sum(abs1(), abs1(1)), make_vec({0}));
  CHECK(-lhs.support(make_vec({-1})).value() == doctest::Approx(-2));
  CHECK(lhs.support(make_vec({1})).value() == doctest::Approx(0));

  p.splits = 20;
  const ConvexPolyhedralFunction f({{make_vec({1, 0}), 0}, {make_vec({0, 1}), 0}, {make_vec({-1, -1}), 0}},
                                   Polyhedron::whole(2));
  const auto g = build_indicator(Polyhedron::box(make_vec({-1, -1}), make_vec({1, 1})));
  s = exact_sum_rule_check(f, g, make_vec({1, 0}), 0.2, p);
  CHECK(s.holds);
  CHECK(s.residual <= 1e-6);
  CHECK_THROWS_AS((void)exact_sum_rule_check(l1_ball(1), l1_ball(-1), make_vec({0, 0}), 0.1, p), ScopeError);
}

TEST_CASE("exact sum rule at zero matches the Minkowski sum") {
  std::mt19937_64 rng(55);
  for (int t = 0; t < 15; ++t) {
    const int d = 1 + t % 2;
    const auto f = oracle::random_convex(rng, d);
    const auto g = oracle::random_convex(rng, d);
    if (qualification_check(f, g) == Qualification::NONE) continue;
    const auto x = f.domain().intersect(g.domain()).feasible_point();
    if (!x) continue;
    const auto lhs = subdifferential(sum(f, g), *x);
    const auto a = subdifferential(f, *x), b = subdifferential(g, *x);
    for (const auto& u : directions(d, 32)) {
      // truncating each summand is not truncating the sum, so compare exact supports
      const auto want = a.support(u) + b.support(u);
      const auto got = lhs.support(u);
      CHECK(want.is_pos_inf() == got.is_pos_inf());
      if (want.is_finite() && got.is_finite()) CHECK(std::abs(want.value() - got.value()) <= 1e-9 * std::max(1.0, std::abs(want.value())));
    }
    CHECK(exact_sum_rule_check(f, g, *x, 0, CompareParams{}).holds);
  }
}

TEST_CASE("property: doubled epsilon inclusion follows the intersected unions") {
  std::mt19937_64 rng(60);
  for (int t = 0; t < 12; ++t) {
    const int d = 1 + t % 2;
    const auto f = oracle::random_bounded_pmf(rng, d);
    const auto g = oracle::random_bounded_pmf(rng, d);
    PiecewiseMinFunction s = f;
    try {
      s = sum(f, g);
    } catch (const EmptyDomainError&) {
      continue;
    }
    const auto x = s.branches().front().domain().feasible_point().value();
    const CompareParams p{16, 10, 32, 1e-6};
    const auto r = check_sum_rules(f, g, x, 0.3, p, false);
    if (r.intersected_unions.holds) CHECK(r.doubled_epsilon.residual <= r.intersected_unions.residual + p.tolerance());
    for (size_t k = 1; k < r.split_residuals.size(); ++k) {
      CHECK(r.split_residuals[k].second <= r.split_residuals[k - 1].second + 1e-12);
    }
  }
}

TEST_CASE("sequential witnesses: worked examples") {
  auto t = sequential_witnesses(abs1(), abs1(), make_vec({0}), make_vec({0}), 12);
  CHECK(t.bounds_hold);
  CHECK(t.final_max <= 1e-12);

  t = sequential_witnesses(abs1(), abs1(), make_vec({1}), make_vec({2}), 12);
  CHECK(t.bounds_hold);
  CHECK(t.rows.back().xstar_n(0) == doctest::Approx(1).epsilon(1e-3));
  CHECK(t.rows.back().ystar_n(0) == doctest::Approx(1).epsilon(1e-3));

  t = sequential_witnesses(l1_ball(1), l1_ball(-1), make_vec({0, 0}), make_vec({5, 0}), 12);
  CHECK(t.bounds_hold);
  CHECK(t.final_max <= 1e-3);
  REQUIRE(t.rows.size() == 12);
  for (const auto& r : t.rows) CHECK(r.sum_gap <= r.bound);
}

TEST_CASE("outer limit: worked examples") {
  const std::vector<double> radii{1.0, 0.25, 0.01};
  auto r = outer_limit_subdiff(abs1(), make_vec({0}), radii, 10, 2);
  CHECK(r.equal);
  for (bool e : r.equal_per_radius) CHECK(e);

  r = outer_limit_subdiff(abs1(), make_vec({0.5}), radii, 10, 2);
  CHECK(r.equal);
  CHECK_FALSE(r.equal_per_radius[0]);
  CHECK(r.equal_per_radius[1]);
  CHECK(r.per_radius[0].hausdorff_truncated == doctest::Approx(2));

  r = outer_limit_subdiff(ConvexPolyhedralFunction::affine(make_vec({2, -1}), 3), make_vec({0, 0}), radii, 10, 16);
  CHECK(r.equal);
}

TEST_CASE("intersection closure: worked examples") {
  const Polyhedron open_square(2, {{make_vec({1, 0}), 1, true},
                                   {make_vec({-1, 0}), 0, true},
                                   {make_vec({0, 1}), 1, true},
                                   {make_vec({0, -1}), 0, true}});
  const Polyhedron right(2, {{make_vec({-1, 0}), -0.5, false}});
  auto r = check_intersection_closure(open_square, right, 10, 32);
  CHECK(r.qualified);
  CHECK(r.status.holds);

  const Polyhedron upper(2, {{make_vec({0, -1}), 0, true}});
  const Polyhedron lower(2, {{make_vec({0, 1}), 0, true}});
  r = check_intersection_closure(upper, lower, 10, 32);
  CHECK_FALSE(r.qualified);
  CHECK_FALSE(r.status.holds);

  const auto sq = Polyhedron::box(make_vec({0, 0}), make_vec({1, 1}));
  r = check_intersection_closure(sq, sq, 10, 32);
  CHECK(r.status.holds);
  CHECK_THROWS_AS((void)check_intersection_closure(Polyhedron::empty(2), sq, 10, 32), EmptyDomainError);
}

#include <doctest.h>

#include <random>

#include "fenchel/errors.hpp"
#include "fenchel/relax.hpp"
#include "oracles.hpp"

using namespace fenchel;

namespace {

const Grid kProbe(make_vec({-2}), make_vec({2}), {81});

PiecewiseMinFunction neg_abs() {
  return PiecewiseMinFunction({ConvexPolyhedralFunction::affine(make_vec({-1}), 0),
                               ConvexPolyhedralFunction::affine(make_vec({1}), 0)});
}

// Smallest lifted height: the exact minimum of a bounded polyhedral function.
double min_height(const std::vector<oracle::Lifted>& pts) {
  double best = oracle::kInf;
  for (const auto& p : pts) best = std::min(best, p.v);
  return best;
}

}  // namespace

TEST_CASE("relax: square on an interval") {
  const Grid g(make_vec({-2}), make_vec({2}), {81});
  std::vector<double> v(g.size());
  for (size_t k = 0; k < g.size(); ++k) v[k] = g.point(k).squaredNorm();
  MinProblem p{"square", GridFunction(g, v), Polyhedron::box(make_vec({-1}), make_vec({1})),
               Grid(make_vec({-8}), make_vec({8}), {321})};
  const auto r = relax_and_compare(p, g);
  CHECK(r.v_original.value() == 0);
  CHECK(r.v_relaxed.value() == doctest::Approx(0).scale(1).epsilon(1e-12));
  CHECK(r.value_identity);
  CHECK(r.decomposition_holds);
}

TEST_CASE("relax: negative absolute value on three points") {
  MinProblem p{"tent", neg_abs(), std::vector<Vec>{make_vec({-1}), make_vec({0}), make_vec({1})}, std::nullopt};
  const auto r = relax_and_compare(p, kProbe);
  CHECK(r.v_original.value() == doctest::Approx(-1));
  CHECK(r.v_relaxed.value() == doctest::Approx(-1));
  CHECK(r.v_relaxed_grid.value() == doctest::Approx(-1));
  CHECK(r.gap == doctest::Approx(0).scale(1));
  CHECK(r.value_identity);
  // the objective alone has no affine minorant, so the split form is unavailable
  CHECK_FALSE(r.decomposition_holds);
}

TEST_CASE("relax: two-point objective on a two-point set") {
  const auto f = build_indicator(std::vector<Vec>{make_vec({0}), make_vec({1})});
  MinProblem p{"points", f, std::vector<Vec>{make_vec({0}), make_vec({2})}, std::nullopt};
  const auto r = relax_and_compare(p, kProbe);
  CHECK(r.v_original.value() == 0);
  CHECK(r.v_relaxed.value() == 0);
  CHECK(r.value_identity);
  CHECK_FALSE(r.decomposition_holds);
  CHECK(r.decomposition_exact == std::optional<bool>(false));
  CHECK(std::isinf(r.decomposition_gap));
}

TEST_CASE("relax: convex objective on a polyhedron decomposes") {
  const ConvexPolyhedralFunction f({{make_vec({1, 0}), 0}, {make_vec({-1, 0}), 0}, {make_vec({0, 1}), 0}, {make_vec({0, -1}), 0}},
                                   Polyhedron::whole(2));
  MinProblem p{"max-norm", f, Polyhedron::box(make_vec({0.5, -1}), make_vec({2, 1})), std::nullopt};
  const Grid probe(make_vec({-2, -2}), make_vec({2, 2}), {17, 17});
  const auto r = relax_and_compare(p, probe);
  CHECK(r.v_original.value() == doctest::Approx(0.5));
  CHECK(r.decomposition_holds);
  CHECK(r.decomposition_exact == std::optional<bool>(true));
  CHECK(r.gap == 0);
}

TEST_CASE("relax: objective infinite on the feasible set") {
  const auto f = build_indicator(Polyhedron::box(make_vec({0}), make_vec({1})));
  MinProblem p{"disjoint", f, std::vector<Vec>{make_vec({2})}, std::nullopt};
  CHECK_THROWS_AS((void)relax_and_compare(p, kProbe), EnvelopeImproperError);
  MinProblem q{"grid", GridFunction(kProbe, std::vector<double>(kProbe.size(), 0.0)), std::vector<Vec>{make_vec({0})},
               std::nullopt};
  CHECK_THROWS((void)relax_and_compare(q, kProbe));
}

TEST_CASE("property: value identity on point sets") {
  std::mt19937_64 rng(90);
  int checked = 0;
  for (int t = 0; t < 30; ++t) {
    const int d = 1 + t % 2;
    const auto f = oracle::random_bounded_pmf(rng, d);
    std::vector<Vec> pts;
    for (int k = 0; k < 3 + t % 4; ++k) pts.push_back(oracle::random_vec(rng, d, -2, 2, 0.25));
    pts.push_back(f.branches().front().domain().feasible_point().value());
    double want = oracle::kInf;
    for (const auto& x : pts) {
      if (f(x).is_finite()) want = std::min(want, f(x).value());
    }
    const Grid probe(Vec::Constant(d, -2), Vec::Constant(d, 2), std::vector<int>(static_cast<size_t>(d), 17));
    const auto r = relax_and_compare({"fuzz", f, pts, std::nullopt}, probe);
    CHECK(r.v_original.value() == doctest::Approx(want).epsilon(1e-12));
    CHECK(r.v_relaxed.value() <= r.v_original.value() + 1e-12);
    CHECK(r.gap >= -1e-12);
    CHECK(r.value_identity);
    CHECK(r.v_relaxed_grid.value() >= r.v_relaxed.value() - 1e-12);
    ++checked;
  }
  CHECK(checked == 30);
}

TEST_CASE("property: value identity on polyhedral sets") {
  std::mt19937_64 rng(91);
  int checked = 0;
  for (int t = 0; t < 40; ++t) {
    const int d = 1 + t % 2;
    const auto f = oracle::random_bounded_pmf(rng, d);
    const auto box = oracle::random_box(rng, d);
    PiecewiseMinFunction h = f;
    try {
      h = sum(f, PiecewiseMinFunction(build_indicator(box)));
    } catch (const EmptyDomainError&) {
      continue;
    }
    const double want = min_height(oracle::lifted_cell_vertices(h));
    if (!std::isfinite(want)) continue;
    const Grid probe(Vec::Constant(d, -2), Vec::Constant(d, 2), std::vector<int>(static_cast<size_t>(d), 17));
    const auto r = relax_and_compare({"fuzz", f, box, std::nullopt}, probe);
    CHECK(r.v_original.value() == doctest::Approx(want).epsilon(1e-9));
    CHECK(r.value_identity);
    CHECK(r.gap == doctest::Approx(0).scale(1).epsilon(1e-9));
    ++checked;
  }
  CHECK(checked >= 20);
}

TEST_CASE("property: value identity on grid samples") {
  std::mt19937_64 rng(92);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int t = 0; t < 10; ++t) {
    const Grid g(make_vec({-2}), make_vec({2}), {81});
    const double a = u(rng), b = u(rng);
    std::vector<double> v(g.size());
    for (size_t k = 0; k < g.size(); ++k) {
      const double x = g.point(k)(0);
      v[k] = std::sin(3 * x + a) + b * x;
    }
    double lo = oracle::pick(rng, -2, 0, 0.25), hi = oracle::pick(rng, 0.25, 2, 0.25);
    MinProblem p{"wave", GridFunction(g, v), Polyhedron::box(make_vec({lo}), make_vec({hi})),
                 Grid(make_vec({-8}), make_vec({8}), {641})};
    const auto r = relax_and_compare(p, g);
    double want = oracle::kInf;
    for (size_t k = 0; k < g.size(); ++k) {
      const double x = g.point(k)(0);
      if (x >= lo - 1e-12 && x <= hi + 1e-12) want = std::min(want, v[k]);
    }
    CHECK(r.v_original.value() == want);
    CHECK(r.value_identity);
    CHECK(std::abs(r.gap) <= r.value_tolerance);
  }
}

#include "fenchel/relax.hpp"

#include <algorithm>
#include <cmath>

namespace fenchel {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

PiecewiseMinFunction feasible_indicator(const FeasibleSet& f) {
  if (const auto* poly = std::get_if<Polyhedron>(&f)) return PiecewiseMinFunction(build_indicator(*poly));
  return build_indicator(std::get<std::vector<Vec>>(f));
}

double node_gap(ExtReal a, ExtReal b) {
  if (a.is_pos_inf() && b.is_pos_inf()) return 0.0;
  if (a.is_pos_inf() || b.is_pos_inf()) return kInf;
  return std::abs(a.value() - b.value());
}

RelaxationReport relax_polyhedral(const PiecewiseMinFunction& f, const FeasibleSet& feasible, const Grid& probe,
                                  double tol) {
  RelaxationReport rep;
  const auto ind = feasible_indicator(feasible);
  PiecewiseMinFunction h = [&] {
    try {
      return sum(f, ind);
    } catch (const EmptyDomainError&) {
      throw EnvelopeImproperError("objective is +inf on the whole feasible set");
    }
  }();
  rep.v_original = minimize(h).value;
  const auto env = convex_envelope(h);
  rep.v_relaxed = minimize(env).value;
  rep.v_relaxed_grid = ExtReal::pos_inf();
  for (size_t k = 0; k < probe.size(); ++k) rep.v_relaxed_grid = std::min(rep.v_relaxed_grid, env(probe.point(k)));
  if (rep.v_original.is_finite() && rep.v_relaxed.is_finite()) {
    rep.gap = clean(rep.v_original.value() - rep.v_relaxed.value());
  } else {
    rep.gap = rep.v_original == rep.v_relaxed ? 0.0 : kInf;
  }
  rep.value_tolerance = tol;
  rep.value_identity = std::abs(rep.gap) <= tol * (1.0 + std::abs(rep.v_original.value()));

  if (!affine_minorant(f)) {
    rep.notes.push_back("objective has no affine minorant: its envelope is -inf, decomposition not available");
    rep.decomposition_holds = false;
    rep.decomposition_gap = kInf;
    return rep;
  }
  const auto rhs = sum(convex_envelope(f), build_indicator(convex_hull(feasible, f.dim())));
  double worst = 0.0;
  for (size_t k = 0; k < probe.size(); ++k) {
    const Vec x = probe.point(k);
    worst = std::max(worst, node_gap(env(x), rhs(x)));
  }
  rep.decomposition_gap = worst;
  rep.decomposition_holds = worst <= tol;
  rep.decomposition_exact = equivalent(env, rhs);
  return rep;
}

RelaxationReport relax_grid(const GridFunction& f, const FeasibleSet& feasible, const std::optional<Grid>& dual,
                            const Grid& probe) {
  if (!dual) throw std::invalid_argument("grid objectives need a dual grid");
  const Grid& g = f.grid();
  const int d = g.dim();
  const Polyhedron hull = convex_hull(feasible, d);
  const auto* points = std::get_if<std::vector<Vec>>(&feasible);
  auto in_feasible = [&](const Vec& x) {
    if (!points) return std::get<Polyhedron>(feasible).contains_closure(x, 1e-12);
    return std::any_of(points->begin(), points->end(),
                       [&](const Vec& p) { return (p - x).lpNorm<Eigen::Infinity>() < 1e-12; });
  };
  std::vector<double> restricted(g.size()), on_hull(g.size());
  for (size_t k = 0; k < g.size(); ++k) {
    const Vec x = g.point(k);
    restricted[k] = in_feasible(x) ? f.at(k) : kInf;
    on_hull[k] = hull.contains_closure(x, 1e-12) ? 0.0 : kInf;
  }
  GridFunction h(g, restricted);
  if (!h.is_proper()) throw EnvelopeImproperError("no grid node of the feasible set has a finite objective value");

  RelaxationReport rep;
  double vmin = kInf;
  for (double v : restricted) vmin = std::min(vmin, v);
  rep.v_original = vmin;
  const auto env = convex_envelope(h, *dual);
  for (const auto& w : env.warnings) rep.notes.push_back(w);
  double emin = kInf;
  for (double v : env.function.values()) emin = std::min(emin, v);
  rep.v_relaxed = emin;
  rep.v_relaxed_grid = ExtReal::pos_inf();
  for (size_t k = 0; k < probe.size(); ++k) rep.v_relaxed_grid = std::min(rep.v_relaxed_grid, env.function(probe.point(k)));
  rep.gap = vmin - emin;

  // Slope bound of the data for the interpolation tolerance h * L.
  double lip = 0.0;
  for (size_t k = 0; k < g.size(); ++k) {
    const auto idx = g.multi_index(k);
    for (int axis = 0; axis < d; ++axis) {
      if (idx[static_cast<size_t>(axis)] + 1 >= g.nodes()[static_cast<size_t>(axis)]) continue;
      const size_t j = k + g.stride(axis);
      if (std::isfinite(restricted[k]) && std::isfinite(restricted[j])) {
        lip = std::max(lip, std::abs(restricted[j] - restricted[k]) / g.spacing(axis));
      }
    }
  }
  rep.value_tolerance = g.max_spacing() * lip + 1e-12;
  rep.value_identity = std::abs(rep.gap) <= rep.value_tolerance;

  const auto env_f = convex_envelope(f, *dual).function;
  double worst = 0.0;
  for (size_t k = 0; k < g.size(); ++k) {
    const ExtReal a = env.function.at(k);
    const ExtReal b = ExtReal(env_f.at(k)) + ExtReal(on_hull[k]);
    worst = std::max(worst, node_gap(a, b));
  }
  rep.decomposition_gap = worst;
  rep.decomposition_holds = worst <= rep.value_tolerance;
  return rep;
}

}  // namespace

Polyhedron convex_hull(const FeasibleSet& f, int dim) {
  if (const auto* poly = std::get_if<Polyhedron>(&f)) return poly->closure();
  const auto& pts = std::get<std::vector<Vec>>(f);
  if (pts.empty()) throw EmptyDomainError("empty feasible point set");
  return Polyhedron::from_vrep(dim, VRep{pts, {}});
}

RelaxationReport relax_and_compare(const MinProblem& p, const Grid& probe_grid, double tol) {
  if (const auto* f = std::get_if<PiecewiseMinFunction>(&p.objective)) {
    return relax_polyhedral(*f, p.feasible, probe_grid, tol);
  }
  return relax_grid(std::get<GridFunction>(p.objective), p.feasible, p.dual_grid, probe_grid);
}

}  // namespace fenchel

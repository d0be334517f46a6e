#include "fenchel/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fenchel/parallel.hpp"

namespace fenchel {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// a - b for supports of truncated sets, where -inf marks an empty set.
double gap(ExtReal a, ExtReal b) {
  if (a.is_neg_inf() && b.is_neg_inf()) return 0.0;
  if (a.is_neg_inf()) return -kInf;
  if (b.is_neg_inf()) return kInf;
  return a.value() - b.value();
}

SetCompareReport report_from(const std::vector<Vec>& dirs, const std::vector<double>& gaps, double box_radius,
                             double tol) {
  SetCompareReport r;
  r.box_radius = box_radius;
  r.directions_tested = static_cast<int>(dirs.size());
  r.dirs = dirs;
  r.gaps = gaps;
  for (double g : gaps) {
    r.hausdorff_truncated = std::max(r.hausdorff_truncated, std::abs(g));
    if (g > tol) r.containment_ab = false;
    if (g < -tol) r.containment_ba = false;
  }
  return r;
}

void add_box(lp::Problem& lp, int offset, int dim, double box_radius) {
  for (int i = 0; i < dim; ++i) lp.set_bounds(offset + i, -box_radius, box_radius);
}

Polyhedron box_of(int dim, double box_radius) {
  return Polyhedron::box(Vec::Constant(dim, -box_radius), Vec::Constant(dim, box_radius));
}

std::string point_text(const Vec& x) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < x.size(); ++i) s += (i ? ", " : "") + format_number(x(i));
  return s + ")";
}

// Halfspaces of P that hold with equality on all of P.
std::vector<bool> implicit_equalities(const Polyhedron& p) {
  std::vector<bool> out;
  for (const auto& h : p.halfspaces()) {
    lp::Problem lp(p.dim());
    p.add_to(lp, 0);
    lp.minimize(h.normal);
    const auto r = lp.solve();
    out.push_back(r.optimal() && r.value >= h.offset - 1e-9);
  }
  return out;
}

// max s <= 1 such that some x satisfies the rows of P with slack s where
// `slacked` is set and plainly elsewhere; -inf if infeasible.
double slack_lp(const std::vector<std::pair<const Halfspace*, bool>>& rows, int dim) {
  lp::Problem lp(dim + 1);
  for (const auto& [h, slacked] : rows) {
    Vec row(dim + 1);
    row << h->normal, slacked ? 1.0 : 0.0;
    lp.add_le(row, h->offset);
  }
  lp.set_upper(dim, 1.0);
  Vec c = Vec::Zero(dim + 1);
  c(dim) = 1.0;
  lp.maximize(c);
  const auto r = lp.solve();
  if (r.status == lp::Status::Infeasible) return -kInf;
  return r.status == lp::Status::Unbounded ? 1.0 : r.value;
}

}  // namespace

std::string to_string(Rule r) {
  switch (r) {
    case Rule::CLOSED_UNION: return "closed_union";
    case Rule::INTERSECTED_UNIONS: return "intersected_unions";
    case Rule::DOUBLED_EPSILON: return "doubled_epsilon";
    case Rule::EQUALITY: return "equality";
    case Rule::CONJ_IDENTITY: return "conj_identity";
    case Rule::EXACT_RULE: return "exact_rule";
    case Rule::CLOSURE_IDENTITY: return "closure_identity";
  }
  return "?";
}

std::string to_string(Qualification q) {
  switch (q) {
    case Qualification::CONTINUITY_POINT: return "CONTINUITY_POINT";
    case Qualification::RI_OVERLAP: return "RI_OVERLAP";
    case Qualification::NONE: return "NONE";
  }
  return "?";
}

std::vector<Vec> directions(int dim, int n) {
  std::vector<Vec> out;
  if (dim == 1) return {make_vec({1.0}), make_vec({-1.0})};
  if (dim == 2) {
    for (int k = 0; k < n; ++k) {
      const double a = 2.0 * std::numbers::pi * k / n;
      out.push_back(clean(make_vec({std::cos(a), std::sin(a)})));
    }
    return out;
  }
  if (dim == 3) {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < n; ++k) {
      const double z = 1.0 - 2.0 * (k + 0.5) / n;
      const double r = std::sqrt(1.0 - z * z);
      out.push_back(make_vec({r * std::cos(golden * k), r * std::sin(golden * k), z}));
    }
    return out;
  }
  throw DimensionError("directions are generated for dimension 1 to 3");
}

std::string SetCompareReport::to_csv() const {
  std::ostringstream os;
  const int d = dirs.empty() ? 0 : static_cast<int>(dirs.front().size());
  for (int i = 0; i < d; ++i) os << "u" << (i + 1) << ",";
  os << "gap\n";
  for (size_t k = 0; k < dirs.size(); ++k) {
    for (int i = 0; i < d; ++i) os << format_number(dirs[k](i)) << ",";
    os << format_number(gaps[k]) << "\n";
  }
  return os.str();
}

ExtReal truncated_support(const Polyhedron& a, const Vec& u, double box_radius) {
  require_dim(u, a.dim(), "support direction");
  if (a.is_canonical_empty()) return ExtReal::neg_inf();
  lp::Problem lp(a.dim());
  a.add_to(lp, 0);
  add_box(lp, 0, a.dim(), box_radius);
  lp.maximize(u);
  const auto r = lp.solve();
  if (!r.optimal()) return ExtReal::neg_inf();
  return clean(r.value);
}

SetCompareReport compare_supports(const SupportFn& a, const SupportFn& b, int dim, double box_radius,
                                  int n_directions, double tol) {
  const auto dirs = directions(dim, n_directions);
  std::vector<double> gaps(dirs.size());
  parallel_for(dirs.size(), [&](size_t k) { gaps[k] = gap(a(dirs[k]), b(dirs[k])); });
  return report_from(dirs, gaps, box_radius, tol);
}

SetCompareReport set_compare(const Polyhedron& a, const Polyhedron& b, double box_radius, int n_directions,
                             double tol) {
  if (a.dim() != b.dim()) throw DimensionError("compared sets differ in dimension");
  auto report = compare_supports([&](const Vec& u) { return truncated_support(a, u, box_radius); },
                                 [&](const Vec& u) { return truncated_support(b, u, box_radius); }, a.dim(),
                                 box_radius, n_directions, tol);
  const Polyhedron box = box_of(a.dim(), box_radius);
  const Polyhedron ta = a.closure().intersect(box), tb = b.closure().intersect(box);
  auto vertices_inside = [&](const Polyhedron& from, const Polyhedron& into) {
    if (from.closure_is_empty()) return true;
    for (const auto& v : from.vrep().points) {
      if (!into.contains_closure(v, tol)) return false;
    }
    return true;
  };
  report.containment_ab = report.containment_ab && vertices_inside(ta, tb);
  report.containment_ba = report.containment_ba && vertices_inside(tb, ta);
  return report;
}

SumRuleContext::SumRuleContext(const PiecewiseMinFunction& f, const PiecewiseMinFunction& g, const Vec& x)
    : x_(x),
      sum_([&] {
        require_dim(x, f.dim(), "probe point");
        if (!f(x).is_finite() || !g(x).is_finite()) {
          throw DomainError("probe point " + point_text(x) + " lies outside dom f or dom g");
        }
        return fenchel::sum(f, g);
      }()),
      fs_(conjugate(f)),
      gs_(conjugate(g)),
      ss_(conjugate(sum_)),
      fx_(f(x)),
      gx_(g(x)),
      sx_(sum_(x)) {
  if (sum_.as_convex()) {
    threshold_ = 0.0;
  } else if (!ss_.is_proper()) {
    threshold_ = ExtReal::pos_inf();
  } else {
    const double v = sx_.value() - conjugate(ss_)(x).value();
    threshold_ = std::abs(v) < 1e-12 ? 0.0 : clean(v);
  }
}

ExtReal SumRuleContext::lhs_support(double eps, const Vec& u, double box_radius) const {
  return truncated_support(eps_subdiff_set(ss_, sx_, x_, eps), u, box_radius);
}

ExtReal SumRuleContext::union_support(double alpha, const Vec& u, double box_radius) const {
  return lifted(true, alpha, 0.0, u, box_radius);
}

ExtReal SumRuleContext::minkowski_support(double eps_f, double eps_g, const Vec& u, double box_radius) const {
  return lifted(false, eps_f, eps_g, u, box_radius);
}

ExtReal SumRuleContext::lifted(bool split, double a, double b, const Vec& u, double box_radius) const {
  // Variables (p, q, e1). Split: p in eps_e1 f(x), q in eps_(a - e1) g(x),
  // 0 <= e1 <= a. Otherwise p in eps_a f(x), q in eps_b g(x).
  const int d = dim();
  const int n = 2 * d + 1;
  lp::Problem lp(n);
  for (const auto& p : fs_.pieces()) {
    Vec row = Vec::Zero(n);
    row.head(d) = p.slope - x_;
    if (split) row(2 * d) = -1.0;
    lp.add_le(row, (split ? 0.0 : a) - fx_.value() - p.intercept);
  }
  for (const auto& p : gs_.pieces()) {
    Vec row = Vec::Zero(n);
    row.segment(d, d) = p.slope - x_;
    if (split) row(2 * d) = 1.0;
    lp.add_le(row, (split ? a : b) - gx_.value() - p.intercept);
  }
  fs_.domain().add_to(lp, 0);
  gs_.domain().add_to(lp, d);
  lp.set_bounds(2 * d, 0.0, split ? a : 0.0);
  for (int i = 0; i < d; ++i) {
    Vec row = Vec::Zero(n);
    row(i) = 1.0;
    row(d + i) = 1.0;
    lp.add_le(row, box_radius);
    lp.add_le(-row, box_radius);
  }
  Vec c = Vec::Zero(n);
  c.head(d) = u;
  c.segment(d, d) = u;
  lp.maximize(c);
  const auto r = lp.solve();
  if (!r.optimal()) return ExtReal::neg_inf();
  return clean(r.value);
}

SumRuleReport check_sum_rules(const PiecewiseMinFunction& f, const PiecewiseMinFunction& g, const Vec& x,
                              double epsilon, const CompareParams& params, bool enforce_scope) {
  if (!(epsilon > 0)) throw ScopeError("sum rules are stated for epsilon > 0");
  const SumRuleContext ctx(f, g, x);
  const bool in_scope = ExtReal(epsilon) > ctx.threshold();
  if (enforce_scope && !in_scope) {
    throw ScopeError("epsilon " + format_number(epsilon) + " does not exceed the threshold " +
                     to_string(ctx.threshold()) + " of f + g at " + point_text(x));
  }
  const double R = params.box_radius;
  const double tol = params.tolerance();
  const int S = std::max(1, params.splits);
  const auto dirs = directions(ctx.dim(), params.directions);
  const size_t nd = dirs.size();

  std::vector<double> g_closed(nd), g_intersected(nd), g_doubled(nd);
  std::vector<std::vector<ExtReal>> split_supports(nd);
  std::vector<ExtReal> lhs(nd);
  parallel_for(nd, [&](size_t k) {
    const Vec& u = dirs[k];
    lhs[k] = ctx.lhs_support(epsilon, u, R);
    if (in_scope) g_closed[k] = gap(lhs[k], ctx.union_support(epsilon, u, R));
    ExtReal b = ExtReal::pos_inf();
    for (int j = 1; j <= 8; ++j) {
      const double alpha = epsilon * (1.0 + std::pow(10.0, -(j - 1)) / S);
      b = std::min(b, ctx.union_support(alpha, u, R));
    }
    g_intersected[k] = gap(lhs[k], b);
    g_doubled[k] = std::max(0.0, gap(lhs[k], ctx.minkowski_support(2 * epsilon, 2 * epsilon, u, R)));
    split_supports[k].resize(static_cast<size_t>(S) + 1);
    for (int j = 0; j <= S; ++j) {
      const double e1 = epsilon * j / S;
      split_supports[k][static_cast<size_t>(j)] = ctx.minkowski_support(e1, epsilon - e1, u, R);
    }
  });

  SumRuleReport rep;
  rep.x = x;
  rep.epsilon = epsilon;
  rep.threshold = ctx.threshold();
  auto status = [&](Rule rule, const std::vector<double>& gaps, bool inclusion_only) {
    RuleStatus s;
    s.rule = rule;
    s.tolerance = tol;
    auto cmp = report_from(dirs, gaps, R, tol);
    s.residual = cmp.hausdorff_truncated;
    if (inclusion_only) {
      s.residual = 0.0;
      for (double gv : gaps) s.residual = std::max(s.residual, gv);
    }
    s.holds = s.residual <= tol;
    s.sets = std::move(cmp);
    return s;
  };
  if (in_scope) {
    rep.closed_union = status(Rule::CLOSED_UNION, g_closed, false);
  } else {
    rep.closed_union.rule = Rule::CLOSED_UNION;
    rep.closed_union.applicable = false;
    rep.closed_union.tolerance = tol;
    rep.closed_union.detail = "epsilon does not exceed the threshold of f + g";
  }
  rep.intersected_unions = status(Rule::INTERSECTED_UNIONS, g_intersected, false);
  rep.doubled_epsilon = status(Rule::DOUBLED_EPSILON, g_doubled, true);

  std::vector<int> levels;
  for (int level = 1; level < S && S % level == 0; level *= 2) levels.push_back(level);
  levels.push_back(S);
  for (int level : levels) {
    const int stride = S / level;
    double res = 0.0;
    for (size_t k = 0; k < nd; ++k) {
      ExtReal best = ExtReal::neg_inf();
      for (int j = 0; j <= S; j += stride) best = std::max(best, split_supports[k][static_cast<size_t>(j)]);
      res = std::max(res, std::abs(gap(lhs[k], best)));
    }
    rep.split_residuals.emplace_back(level, res);
  }
  return rep;
}

namespace {

struct Envelopes {
  ConvexPolyhedralFunction sum_env, f_env, g_env;
};

void require_minorants_and_overlap(const PiecewiseMinFunction& f, const PiecewiseMinFunction& g) {
  if (f.dim() != g.dim()) throw DimensionError("f and g differ in dimension");
  if (!affine_minorant(f)) throw HypothesisError("f has no affine minorant");
  if (!affine_minorant(g)) throw HypothesisError("g has no affine minorant");
}

PiecewiseMinFunction sum_or_hypothesis(const PiecewiseMinFunction& f, const PiecewiseMinFunction& g) {
  try {
    return sum(f, g);
  } catch (const EmptyDomainError&) {
    throw HypothesisError("dom f and dom g do not intersect");
  }
}

RuleStatus nodewise_gap(Rule rule, const ConvexPolyhedralFunction& lhs, const ConvexPolyhedralFunction& rhs,
                        const Grid& grid, const CompareParams& params) {
  RuleStatus s;
  s.rule = rule;
  s.tolerance = params.tolerance();
  double worst = 0.0;
  Vec at;
  bool above = false, below = false;
  for (size_t k = 0; k < grid.size(); ++k) {
    const Vec p = grid.point(k);
    const ExtReal a = lhs(p), b = rhs(p);
    double gv = 0.0;
    if (a.is_pos_inf() && b.is_pos_inf()) {
      gv = 0.0;
    } else if (a.is_pos_inf()) {
      gv = kInf;
    } else if (b.is_pos_inf()) {
      gv = -kInf;
    } else {
      gv = a.value() - b.value();
    }
    if (gv > s.tolerance) above = true;
    if (gv < -s.tolerance) below = true;
    if (std::abs(gv) > worst || at.size() == 0) {
      if (std::abs(gv) > worst) worst = std::abs(gv);
      if (at.size() == 0 || std::abs(gv) >= worst) at = p;
    }
  }
  s.residual = worst;
  s.holds = worst <= s.tolerance;
  s.exact = equivalent(lhs, rhs);
  s.detail = "max gap " + format_number(worst) + " at " + point_text(at);
  if (above) s.detail += "; left side above right side";
  if (below) s.detail += "; left side below right side";
  return s;
}

}  // namespace

RuleStatus check_regularization_equality(const PiecewiseMinFunction& f, const PiecewiseMinFunction& g,
                                         const Grid& probe_grid, const CompareParams& params) {
  require_minorants_and_overlap(f, g);
  if (probe_grid.dim() != f.dim()) throw DimensionError("probe grid dimension differs from the functions");
  const auto s = sum_or_hypothesis(f, g);
  return nodewise_gap(Rule::EQUALITY, convex_envelope(s), sum(convex_envelope(f), convex_envelope(g)), probe_grid,
                      params);
}

RuleStatus check_conjugate_identity(const PiecewiseMinFunction& f, const PiecewiseMinFunction& g,
                                    const Grid& dual_grid, const CompareParams& params) {
  require_minorants_and_overlap(f, g);
  if (dual_grid.dim() != f.dim()) throw DimensionError("dual grid dimension differs from the functions");
  const auto s = sum_or_hypothesis(f, g);
  return nodewise_gap(Rule::CONJ_IDENTITY, conjugate(s), inf_convolution(conjugate(f), conjugate(g)), dual_grid,
                      params);
}

EquivalenceReport equivalence_harness(const PiecewiseMinFunction& f, const PiecewiseMinFunction& g,
                                      const std::vector<Probe>& probes, const Grid& probe_grid,
                                      const CompareParams& params) {
  EquivalenceReport rep;
  rep.statuses[0] = check_regularization_equality(f, g, probe_grid, params);
  const Rule rules[3] = {Rule::CLOSED_UNION, Rule::INTERSECTED_UNIONS, Rule::DOUBLED_EPSILON};
  for (int i = 0; i < 3; ++i) {
    rep.statuses[static_cast<size_t>(i) + 1].rule = rules[i];
    rep.statuses[static_cast<size_t>(i) + 1].tolerance = params.tolerance();
    rep.statuses[static_cast<size_t>(i) + 1].applicable = false;
  }
  for (const auto& p : probes) {
    rep.probes.push_back(check_sum_rules(f, g, p.x, p.epsilon, params, false));
    const auto& pr = rep.probes.back();
    const RuleStatus* per[3] = {&pr.closed_union, &pr.intersected_unions, &pr.doubled_epsilon};
    for (size_t i = 0; i < 3; ++i) {
      auto& agg = rep.statuses[i + 1];
      if (!per[i]->applicable) continue;
      if (!agg.applicable) {
        agg.applicable = true;
        agg.holds = true;
        agg.residual = 0.0;
      }
      agg.holds = agg.holds && per[i]->holds;
      if (per[i]->residual > agg.residual || !agg.sets) {
        agg.residual = std::max(agg.residual, per[i]->residual);
        agg.sets = per[i]->sets;
        agg.detail = "worst probe x = " + point_text(p.x) + ", eps = " + format_number(p.epsilon);
      }
    }
  }
  std::optional<bool> verdict;
  for (const auto& s : rep.statuses) {
    if (!s.applicable) continue;
    if (verdict && *verdict != s.holds) rep.consistent = false;
    verdict = s.holds;
  }
  return rep;
}

Qualification qualification_check(const ConvexPolyhedralFunction& f, const ConvexPolyhedralFunction& g) {
  if (f.dim() != g.dim()) throw DimensionError("f and g differ in dimension");
  const int d = f.dim();
  const auto& df = f.domain();
  const auto& dg = g.domain();
  if (df.closure_is_empty() || dg.closure_is_empty()) return Qualification::NONE;
  auto interior_of_one = [&](const Polyhedron& inner, const Polyhedron& other) {
    std::vector<std::pair<const Halfspace*, bool>> rows;
    for (const auto& h : inner.halfspaces()) rows.emplace_back(&h, true);
    for (const auto& h : other.halfspaces()) rows.emplace_back(&h, false);
    return slack_lp(rows, d) > 1e-9;
  };
  if (interior_of_one(df, dg) || interior_of_one(dg, df)) return Qualification::CONTINUITY_POINT;
  const auto ef = implicit_equalities(df), eg = implicit_equalities(dg);
  std::vector<std::pair<const Halfspace*, bool>> rows;
  for (size_t i = 0; i < df.halfspaces().size(); ++i) rows.emplace_back(&df.halfspaces()[i], !ef[i]);
  for (size_t i = 0; i < dg.halfspaces().size(); ++i) rows.emplace_back(&dg.halfspaces()[i], !eg[i]);
  return slack_lp(rows, d) > 1e-9 ? Qualification::RI_OVERLAP : Qualification::NONE;
}

RuleStatus exact_sum_rule_check(const ConvexPolyhedralFunction& f, const ConvexPolyhedralFunction& g,
                                const Vec& x, double epsilon, const CompareParams& params) {
  if (qualification_check(f, g) == Qualification::NONE) {
    throw ScopeError("the pair satisfies no qualification condition");
  }
  if (epsilon < 0) throw ScopeError("epsilon must be nonnegative");
  const SumRuleContext ctx(f, g, x);
  const double R = params.box_radius;
  const int S = std::max(1, params.splits);
  const auto dirs = directions(ctx.dim(), params.directions);
  std::vector<double> gaps(dirs.size()), split_gaps(dirs.size());
  parallel_for(dirs.size(), [&](size_t k) {
    const ExtReal l = ctx.lhs_support(epsilon, dirs[k], R);
    gaps[k] = gap(l, ctx.union_support(epsilon, dirs[k], R));
    ExtReal best = ExtReal::neg_inf();
    for (int j = 0; j <= S; ++j) {
      const double e1 = epsilon * j / S;
      best = std::max(best, ctx.minkowski_support(e1, epsilon - e1, dirs[k], R));
    }
    split_gaps[k] = std::abs(gap(l, best));
  });
  RuleStatus s;
  s.rule = Rule::EXACT_RULE;
  s.tolerance = params.tolerance();
  s.sets = report_from(dirs, gaps, R, s.tolerance);
  s.residual = s.sets->hausdorff_truncated;
  s.holds = s.residual <= s.tolerance;
  double split_res = 0.0;
  for (double v : split_gaps) split_res = std::max(split_res, v);
  s.detail = "uniform " + std::to_string(S) + "-split residual " + format_number(split_res);
  return s;
}

WitnessTable sequential_witnesses(const ConvexPolyhedralFunction& f, const ConvexPolyhedralFunction& g,
                                  const Vec& x, const Vec& xstar, int n_rows) {
  const int d = f.dim();
  if (g.dim() != d) throw DimensionError("f and g differ in dimension");
  require_dim(x, d, "base point");
  require_dim(xstar, d, "dual point");
  const auto fg = sum(f, g);
  if (!is_eps_subgradient(fg, x, xstar, 0.0)) throw NotEpsSubgradientError("x* is not a subgradient of f + g at x");
  const auto fs = conjugate(f), gs = conjugate(g);
  const double fx = f(x).value(), gx = g(x).value();

  // phi(y, z) = f(y) + g(z) on the product space.
  std::vector<AffinePiece> pieces;
  for (const auto& p : f.pieces()) {
    for (const auto& q : g.pieces()) {
      Vec s(2 * d);
      s << p.slope, q.slope;
      pieces.push_back({s, p.intercept + q.intercept});
    }
  }
  std::vector<Halfspace> dom;
  for (const auto& h : f.domain().halfspaces()) {
    Vec n = Vec::Zero(2 * d);
    n.head(d) = h.normal;
    dom.push_back({n, h.offset, false});
  }
  for (const auto& h : g.domain().halfspaces()) {
    Vec n = Vec::Zero(2 * d);
    n.tail(d) = h.normal;
    dom.push_back({n, h.offset, false});
  }
  const ConvexPolyhedralFunction phi(pieces, Polyhedron(2 * d, dom));
  Vec xx(2 * d);
  xx << x, x;

  WitnessTable table;
  const double xs_norm = norm_inf(xstar);
  for (int n = 1; n <= n_rows; ++n) {
    const double e = std::ldexp(1.0, -n);
    const double budget = e * e / 2;
    // Split x* = u + v + r with u, v budget-subgradients, |r| minimal, then
    // |u| + |v| minimal among those.
    auto split_lp = [&](std::optional<double> r_cap) {
      const int nv = 2 * d + 3;  // u, v, w, a, b
      lp::Problem lp(nv);
      for (const auto& p : fs.pieces()) {
        Vec row = Vec::Zero(nv);
        row.head(d) = p.slope - x;
        lp.add_le(row, budget - fx - p.intercept);
      }
      for (const auto& p : gs.pieces()) {
        Vec row = Vec::Zero(nv);
        row.segment(d, d) = p.slope - x;
        lp.add_le(row, budget - gx - p.intercept);
      }
      fs.domain().add_to(lp, 0);
      gs.domain().add_to(lp, d);
      const int w = 2 * d, a = 2 * d + 1, b = 2 * d + 2;
      for (int i = 0; i < d; ++i) {
        Vec row = Vec::Zero(nv);
        row(i) = -1.0;
        row(d + i) = -1.0;
        row(w) = -1.0;
        lp.add_le(row, -xstar(i));
        row(i) = 1.0;
        row(d + i) = 1.0;
        lp.add_le(row, xstar(i));
        for (int s : {1, -1}) {
          Vec ru = Vec::Zero(nv);
          ru(i) = s;
          ru(a) = -1.0;
          lp.add_le(ru, 0.0);
          Vec rv = Vec::Zero(nv);
          rv(d + i) = s;
          rv(b) = -1.0;
          lp.add_le(rv, 0.0);
        }
      }
      Vec c = Vec::Zero(nv);
      if (r_cap) {
        lp.set_upper(w, *r_cap);
        c(a) = 1.0;
        c(b) = 1.0;
      } else {
        c(w) = 1.0;
      }
      lp.minimize(c);
      return lp.solve();
    };
    const auto first = split_lp(std::nullopt);
    WitnessRow row;
    row.n = n;
    row.eps_n = e;
    row.bound = e * e + e * (2 + e * e + xs_norm);
    if (!first.optimal()) {
      row.split_feasible = false;
      row.bounds_hold = false;
      table.bounds_hold = false;
      table.rows.push_back(row);
      continue;
    }
    const double wmin = first.x(2 * d);
    const auto second = split_lp(wmin + 1e-12 * (1.0 + wmin));
    const auto& sol = second.optimal() ? second : first;
    const Vec u = clean(Vec(sol.x.head(d))), v = clean(Vec(sol.x.segment(d, d)));
    row.split_residual = norm_inf(xstar - u - v);
    row.split_feasible = row.split_residual <= e * e + 1e-12;

    Vec uv(2 * d);
    uv << u, v;
    const auto br = brondsted_rockafellar(phi, xx, uv, e * e);
    row.x_n = br.z.head(d);
    row.y_n = br.z.tail(d);
    row.xstar_n = br.zstar.head(d);
    row.ystar_n = br.zstar.tail(d);
    row.sum_gap = norm_inf(row.xstar_n + row.ystar_n - xstar);
    row.inner_f = row.xstar_n.dot(row.x_n - x);
    row.inner_g = row.ystar_n.dot(row.y_n - x);
    row.value_f = f(row.x_n).value() - fx;
    row.value_g = g(row.y_n).value() - gx;
    const double slack = 1e-12;
    row.bounds_hold = row.split_feasible && row.sum_gap <= row.bound + slack &&
                      norm1(row.x_n - x) <= e + slack && norm1(row.y_n - x) <= e + slack;
    table.bounds_hold = table.bounds_hold && row.bounds_hold;
    table.rows.push_back(row);
  }
  if (!table.rows.empty()) {
    const auto& last = table.rows.back();
    table.final_max = std::max({last.sum_gap, std::abs(last.inner_f), std::abs(last.inner_g),
                                std::abs(last.value_f), std::abs(last.value_g)});
  }
  return table;
}

OuterLimitReport outer_limit_subdiff(const ConvexPolyhedralFunction& f, const Vec& z, const std::vector<double>& radii,
                                     double box_radius, int n_directions) {
  const int d = f.dim();
  require_dim(z, d, "base point");
  if (!f(z).is_finite()) throw DomainError("base point outside the domain");
  const Polyhedron base = subdifferential(f, z);
  const auto& pieces = f.pieces();
  const auto& hs = f.domain().halfspaces();
  const size_t m = pieces.size(), total = pieces.size() + hs.size();

  OuterLimitReport rep;
  rep.radii = radii;
  for (double r : radii) {
    auto feasible = [&](const std::vector<size_t>& active) {
      lp::Problem lp(d + 1);
      f.add_epigraph(lp, 0, d);
      for (size_t idx : active) {
        Vec row = Vec::Zero(d + 1);
        if (idx < m) {
          row.head(d) = pieces[idx].slope;
          row(d) = -1.0;
          lp.add_eq(row, -pieces[idx].intercept);
        } else {
          row.head(d) = hs[idx - m].normal;
          lp.add_eq(row, hs[idx - m].offset);
        }
      }
      for (int i = 0; i < d; ++i) lp.set_bounds(i, z(i) - r, z(i) + r);
      lp.minimize(Vec::Zero(d + 1));
      return lp.solve().optimal();
    };
    // Depth-first enumeration of feasible active sets containing a piece.
    std::vector<std::vector<size_t>> found;
    std::vector<size_t> cur;
    std::function<void(size_t)> dfs = [&](size_t next) {
      for (size_t i = next; i < total; ++i) {
        if (cur.empty() && i >= m) break;
        cur.push_back(i);
        if (feasible(cur)) {
          found.push_back(cur);
          dfs(i + 1);
        }
        cur.pop_back();
      }
    };
    dfs(0);
    std::vector<Polyhedron> sets;
    bool inside = true;
    for (size_t a = 0; a < found.size(); ++a) {
      bool maximal = true;
      for (size_t b = 0; b < found.size() && maximal; ++b) {
        if (a != b && found[b].size() > found[a].size() &&
            std::includes(found[b].begin(), found[b].end(), found[a].begin(), found[a].end())) {
          maximal = false;
        }
      }
      if (!maximal) continue;
      VRep v;
      for (size_t idx : found[a]) {
        if (idx < m) {
          v.points.push_back(pieces[idx].slope);
        } else {
          v.rays.push_back(hs[idx - m].normal);
        }
      }
      for (const auto& p : v.points) inside = inside && base.contains_closure(p);
      for (const auto& ray : v.rays) {
        for (const auto& h : base.halfspaces()) inside = inside && h.normal.dot(ray) <= kTol;
      }
      sets.push_back(Polyhedron::from_vrep(d, v));
    }
    auto union_support = [&](const Vec& u) {
      ExtReal best = ExtReal::neg_inf();
      for (const auto& s : sets) best = std::max(best, truncated_support(s, u, box_radius));
      return best;
    };
    rep.per_radius.push_back(compare_supports(union_support,
                                              [&](const Vec& u) { return truncated_support(base, u, box_radius); },
                                              d, box_radius, n_directions, 1e-9));
    rep.equal_per_radius.push_back(inside);
  }
  if (!rep.per_radius.empty()) {
    rep.limit = rep.per_radius.back();
    rep.equal = rep.equal_per_radius.back();
  }
  return rep;
}

IntersectionClosureReport check_intersection_closure(const Polyhedron& a, const Polyhedron& b, double box_radius,
                                                     int n_directions, double tol) {
  if (a.dim() != b.dim()) throw DimensionError("sets differ in dimension");
  if (a.is_empty()) throw EmptyDomainError("first set is empty");
  if (b.is_empty()) throw EmptyDomainError("second set is empty");
  const int d = a.dim();
  const Polyhedron ab = a.intersect(b);
  const Polyhedron lhs = ab.is_empty() ? Polyhedron::empty(d) : ab.closure();
  const Polyhedron rhs = a.closure().intersect(b.closure());
  IntersectionClosureReport rep;
  auto cmp = set_compare(lhs, rhs, box_radius, n_directions, tol);
  rep.status.rule = Rule::CLOSURE_IDENTITY;
  rep.status.tolerance = tol;
  rep.status.residual = cmp.hausdorff_truncated;
  rep.status.holds = cmp.containment_ab && cmp.containment_ba;
  rep.status.sets = std::move(cmp);

  std::vector<std::pair<const Halfspace*, bool>> rows;
  for (const auto& h : a.halfspaces()) rows.emplace_back(&h, h.strict);
  for (const auto& h : b.halfspaces()) rows.emplace_back(&h, true);
  rep.qualified = slack_lp(rows, d) > 1e-9;
  rep.status.detail = rep.qualified ? "A meets the interior of B" : "A does not meet the interior of B";
  return rep;
}

}  // namespace fenchel

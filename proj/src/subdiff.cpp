#include "fenchel/subdiff.hpp"

#include <cmath>
#include <stdexcept>

namespace fenchel {

Polyhedron eps_subdiff_set(const ConvexPolyhedralFunction& fstar, ExtReal fx, const Vec& x, double eps) {
  const int d = fstar.dim();
  require_dim(x, d, "subdifferential point");
  if (!fx.is_finite() || eps < 0) return Polyhedron::empty(d);
  std::vector<Halfspace> hs = fstar.domain().halfspaces();
  for (const auto& p : fstar.pieces()) {
    hs.push_back({Vec(p.slope - x), eps - fx.value() - p.intercept, false});
  }
  return Polyhedron(d, std::move(hs));
}

Polyhedron eps_subdiff_set(const PiecewiseMinFunction& f, const Vec& x, double eps) {
  require_dim(x, f.dim(), "subdifferential point");
  const ExtReal fx = f(x);
  if (!fx.is_finite() || eps < 0) return Polyhedron::empty(f.dim());
  return eps_subdiff_set(conjugate(f), fx, x, eps);
}

Polyhedron subdifferential(const ConvexPolyhedralFunction& f, const Vec& x) { return eps_subdiff_set(f, x, 0.0); }

ExtReal eps_threshold(const PiecewiseMinFunction& f, const Vec& x) {
  const ExtReal fx = f(x);
  if (!fx.is_finite()) throw DomainError("threshold requested outside the domain");
  if (f.as_convex()) return 0.0;
  ExtReal env;
  try {
    env = convex_envelope(f)(x);
  } catch (const EnvelopeImproperError&) {
    return ExtReal::pos_inf();
  }
  const double v = fx.value() - env.value();
  return std::abs(v) < 1e-12 ? 0.0 : clean(v);
}

ExtReal eps_threshold_by_definition(const PiecewiseMinFunction& f, const Vec& x) {
  const ExtReal fx = f(x);
  if (!fx.is_finite()) throw DomainError("threshold requested outside the domain");
  const auto fs = conjugate(f);
  const int d = f.dim();
  lp::Problem lp(d + 1);
  fs.add_epigraph(lp, 0, d);
  Vec c(d + 1);
  c << -x, 1.0;
  lp.minimize(c);
  const auto r = lp.solve();
  if (r.status == lp::Status::Infeasible) return ExtReal::pos_inf();
  if (r.status == lp::Status::Unbounded) throw std::logic_error("threshold program unbounded at a domain point");
  const double v = r.value + fx.value();
  return std::abs(v) < 1e-12 ? 0.0 : clean(v);
}

bool is_eps_subgradient(const ConvexPolyhedralFunction& f, const Vec& x, const Vec& xstar, double eps, double tol) {
  const int d = f.dim();
  require_dim(x, d, "base point");
  require_dim(xstar, d, "dual point");
  const ExtReal fx = f(x);
  if (!fx.is_finite() || eps < 0) return false;
  lp::Problem lp(d + 1);
  f.add_epigraph(lp, 0, d);
  Vec c(d + 1);
  c << -xstar, 1.0;
  lp.minimize(c);
  const auto r = lp.solve();
  if (!r.optimal()) return false;
  const double rhs = fx.value() - xstar.dot(x) - eps;
  return r.value >= rhs - tol * (1.0 + std::abs(rhs));
}

BRWitness brondsted_rockafellar(const ConvexPolyhedralFunction& f, const Vec& x, const Vec& xstar, double eps) {
  const int d = f.dim();
  require_dim(x, d, "base point");
  require_dim(xstar, d, "dual point");
  if (eps < 0) throw NotEpsSubgradientError("negative epsilon");
  if (!f(x).is_finite()) throw NotEpsSubgradientError("base point outside the domain");
  if (!is_eps_subgradient(f, x, xstar, eps)) {
    throw NotEpsSubgradientError("dual point is not an eps-subgradient");
  }
  if (eps == 0.0) return {x, xstar, 0.0, 0.0};

  // min f(y) - <x*, y> + sqrt(eps) |y - x|_1 over (y, t, u).
  const double r = std::sqrt(eps);
  lp::Problem lp1(2 * d + 1);
  f.add_epigraph(lp1, 0, d);
  for (int k = 0; k < d; ++k) {
    Vec row = Vec::Zero(2 * d + 1);
    row(k) = 1.0;
    row(d + 1 + k) = -1.0;
    lp1.add_le(row, x(k));
    row(k) = -1.0;
    lp1.add_le(row, -x(k));
  }
  Vec c1 = Vec::Zero(2 * d + 1);
  c1.head(d) = -xstar;
  c1(d) = 1.0;
  c1.tail(d).setConstant(r);
  lp1.minimize(c1);
  const auto s1 = lp1.solve();
  if (s1.status == lp::Status::Unbounded) throw UnboundedError("f - <x*, .> has no minimizer");
  if (!s1.optimal()) throw std::logic_error("proximal program infeasible at a domain point");
  const Vec z = clean(Vec(s1.x.head(d)));

  // Nearest subgradient at z in the sup norm.
  const double fz = f.piece_max(z);
  std::vector<Vec> gens_convex, gens_cone;
  for (const auto& p : f.pieces()) {
    if (p.at(z) >= fz - 1e-9) gens_convex.push_back(p.slope);
  }
  for (const auto& h : f.domain().halfspaces()) {
    if (h.normal.dot(z) >= h.offset - 1e-9) gens_cone.push_back(h.normal);
  }
  const int m = static_cast<int>(gens_convex.size()), k = static_cast<int>(gens_cone.size());
  const int n2 = m + k + 1;
  lp::Problem lp2(n2);
  for (int j = 0; j < m + k; ++j) lp2.set_lower(j, 0.0);
  Vec sum_row = Vec::Zero(n2);
  sum_row.head(m).setOnes();
  lp2.add_eq(sum_row, 1.0);
  for (int i = 0; i < d; ++i) {
    Vec row = Vec::Zero(n2);
    for (int j = 0; j < m; ++j) row(j) = gens_convex[static_cast<size_t>(j)](i);
    for (int j = 0; j < k; ++j) row(m + j) = gens_cone[static_cast<size_t>(j)](i);
    row(n2 - 1) = -1.0;
    lp2.add_le(row, xstar(i));
    row.head(m + k) *= -1.0;
    lp2.add_le(row, -xstar(i));
  }
  Vec c2 = Vec::Zero(n2);
  c2(n2 - 1) = 1.0;
  lp2.minimize(c2);
  const auto s2 = lp2.solve();
  if (!s2.optimal()) throw std::logic_error("nearest subgradient program failed");
  Vec zstar = Vec::Zero(d);
  for (int j = 0; j < m; ++j) zstar += s2.x(j) * gens_convex[static_cast<size_t>(j)];
  for (int j = 0; j < k; ++j) zstar += s2.x(m + j) * gens_cone[static_cast<size_t>(j)];
  zstar = clean(zstar);
  return {z, zstar, norm1(z - x), norm_inf(zstar - xstar)};
}

SubgradientOracle selection_oracle(const ConvexPolyhedralFunction& f) {
  SubgradientOracle o;
  o.select = [f](const Vec& x) {
    const double m = f.piece_max(x);
    for (const auto& p : f.pieces()) {
      if (p.at(x) >= m - 1e-12 * (1.0 + std::abs(m))) return Vec(p.slope);
    }
    return Vec(f.pieces().front().slope);
  };
  o.value = [f](const Vec& x) { return f(x); };
  return o;
}

double integrate_subdiff(const SubgradientOracle& oracle, const Vec& x0, double f_x0, const Vec& target, int steps) {
  if (steps < 1) throw std::invalid_argument("integration needs at least one step");
  require_dim(target, x0.size(), "integration target");
  const Vec dx = (target - x0) / steps;
  std::vector<Vec> mids, grads;
  mids.reserve(static_cast<size_t>(steps));
  grads.reserve(static_cast<size_t>(steps));
  double acc = f_x0;
  double prev_slope = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < steps; ++k) {
    Vec m = x0 + (k + 0.5) * dx;
    Vec g = oracle.select(m);
    require_dim(g, x0.size(), "oracle output");
    const double slope = g.dot(dx);
    if (slope < prev_slope - 1e-9 * (1.0 + std::abs(prev_slope))) {
      throw InvalidOracleError("directional derivative decreases along the segment at step " + std::to_string(k));
    }
    prev_slope = slope;
    acc += slope;
    mids.push_back(std::move(m));
    grads.push_back(std::move(g));
  }
  if (oracle.value) {
    auto check = [&](size_t k, const Vec& y) {
      const ExtReal fk = oracle.value(mids[k]);
      const ExtReal fy = oracle.value(y);
      if (!fk.is_finite() || !fy.is_finite()) throw DomainError("integration segment leaves the domain");
      const double lhs = fy.value() - fk.value() - grads[k].dot(y - mids[k]);
      if (lhs < -1e-9 * (1.0 + std::abs(fk.value()) + std::abs(fy.value()))) {
        throw InvalidOracleError("subgradient inequality fails at step " + std::to_string(k));
      }
    };
    for (size_t k = 0; k < mids.size(); ++k) {
      check(k, k == 0 ? x0 : mids[k - 1]);
      check(k, k + 1 == mids.size() ? target : mids[k + 1]);
    }
  }
  return acc;
}

}  // namespace fenchel

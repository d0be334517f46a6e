#include "fenchel/polyhedral_function.hpp"

#include <stdexcept>

#include "fenchel/cone.hpp"

namespace fenchel {

namespace {

bool same_piece(const AffinePiece& p, const AffinePiece& q) {
  return std::abs(p.intercept - q.intercept) < 1e-12 && (p.slope - q.slope).norm() < 1e-12;
}

void push_unique(std::vector<AffinePiece>& out, AffinePiece p) {
  for (const auto& q : out) {
    if (same_piece(p, q)) return;
  }
  out.push_back(std::move(p));
}

// Drops pieces that never exceed the maximum of the others on the domain.
std::vector<AffinePiece> prune_pieces(const std::vector<AffinePiece>& pieces, const Polyhedron& dom) {
  if (pieces.size() < 2) return pieces;
  const int d = dom.dim();
  std::vector<AffinePiece> kept = pieces;
  for (size_t i = 0; i < kept.size() && kept.size() > 1;) {
    lp::Problem lp(d + 1);
    dom.add_to(lp, 0);
    for (size_t j = 0; j < kept.size(); ++j) {
      if (j == i) continue;
      Vec row(d + 1);
      row << kept[j].slope, -1.0;
      lp.add_le(row, -kept[j].intercept);
    }
    Vec c(d + 1);
    c << kept[i].slope, -1.0;
    lp.maximize(c);
    const auto r = lp.solve();
    if (r.status == lp::Status::Infeasible) return {kept.front()};
    const bool needed = r.status == lp::Status::Unbounded || r.value + kept[i].intercept > 1e-12;
    if (needed) {
      ++i;
    } else {
      kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
    }
  }
  return kept;
}

}  // namespace

ConvexPolyhedralFunction::ConvexPolyhedralFunction(std::vector<AffinePiece> pieces, Polyhedron domain)
    : domain_(std::move(domain)) {
  if (pieces.empty()) throw std::invalid_argument("a polyhedral function needs at least one affine piece");
  if (domain_.has_strict()) throw std::invalid_argument("a polyhedral function domain must be closed");
  for (auto& p : pieces) {
    require_dim(p.slope, domain_.dim(), "affine piece slope");
    if (!p.slope.allFinite() || !std::isfinite(p.intercept)) {
      throw std::invalid_argument("affine pieces must have finite entries");
    }
    push_unique(pieces_, {clean(p.slope), clean(p.intercept)});
  }
}

ConvexPolyhedralFunction ConvexPolyhedralFunction::affine(const Vec& slope, double intercept) {
  return {{{slope, intercept}}, Polyhedron::whole(static_cast<int>(slope.size()))};
}

ConvexPolyhedralFunction ConvexPolyhedralFunction::zero(int dim) { return affine(Vec::Zero(dim), 0.0); }

ConvexPolyhedralFunction ConvexPolyhedralFunction::indicator(const Polyhedron& set) {
  return {{{Vec::Zero(set.dim()), 0.0}}, set};
}

double ConvexPolyhedralFunction::piece_max(const Vec& x) const {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& p : pieces_) best = std::max(best, p.at(x));
  return best;
}

ExtReal ConvexPolyhedralFunction::operator()(const Vec& x) const {
  require_dim(x, dim(), "evaluation point");
  if (!domain_.contains(x)) return ExtReal::pos_inf();
  return clean(piece_max(x));
}

double ConvexPolyhedralFunction::lipschitz() const {
  double l = 0.0;
  for (const auto& p : pieces_) l = std::max(l, p.slope.norm());
  return l;
}

void ConvexPolyhedralFunction::add_epigraph(lp::Problem& lp, int x_col, int t_col) const {
  const int d = dim();
  for (const auto& p : pieces_) {
    Vec row = Vec::Zero(lp.num_vars());
    row.segment(x_col, d) = p.slope;
    row(t_col) = -1.0;
    lp.add_le(row, -p.intercept);
  }
  domain_.add_to(lp, x_col);
}

PiecewiseMinFunction::PiecewiseMinFunction(std::vector<ConvexPolyhedralFunction> branches)
    : branches_(std::move(branches)) {
  if (branches_.empty()) throw std::invalid_argument("a piecewise minimum needs at least one branch");
  for (const auto& b : branches_) {
    if (b.dim() != branches_.front().dim()) throw DimensionError("branches of different dimension");
  }
}

PiecewiseMinFunction::PiecewiseMinFunction(const ConvexPolyhedralFunction& f) : branches_{f} {}

ExtReal PiecewiseMinFunction::operator()(const Vec& x) const {
  ExtReal best = ExtReal::pos_inf();
  for (const auto& b : branches_) best = std::min(best, b(x));
  return best;
}

bool PiecewiseMinFunction::is_proper() const {
  for (const auto& b : branches_) {
    if (b.is_proper()) return true;
  }
  return false;
}

std::optional<ConvexPolyhedralFunction> PiecewiseMinFunction::as_convex() const {
  if (branches_.size() == 1) return branches_.front();
  return std::nullopt;
}

ExtReal eval(const ConvexPolyhedralFunction& f, const Vec& x) { return f(x); }
ExtReal eval(const PiecewiseMinFunction& f, const Vec& x) { return f(x); }

ConvexPolyhedralFunction conjugate(const ConvexPolyhedralFunction& f) {
  if (!f.is_proper()) throw ImproperFunctionError("conjugate of a function with empty domain");
  const int d = f.dim();
  // epi f* = conv{(a_i, -b_i)} + cone{(c_j, delta_j)} + cone{(0, 1)},
  // homogenized with a trailing coordinate.
  std::vector<Vec> gens;
  for (const auto& p : f.pieces()) {
    Vec g(d + 2);
    g << p.slope, -p.intercept, 1.0;
    gens.push_back(g);
  }
  for (const auto& h : f.domain().halfspaces()) {
    Vec g(d + 2);
    g << h.normal, h.offset, 0.0;
    gens.push_back(g);
  }
  Vec up = Vec::Zero(d + 2);
  up(d) = 1.0;
  gens.push_back(up);

  const ConeHRep hrep = cone_hrep(gens, d + 2);
  std::vector<AffinePiece> pieces;
  std::vector<Halfspace> dom;
  for (Eigen::Index i = 0; i < hrep.facets.rows(); ++i) {
    const Vec p = hrep.facets.row(i).head(d).transpose();
    const double q = hrep.facets(i, d);
    const double r = hrep.facets(i, d + 1);
    if (q < -1e-10) {
      pieces.push_back({Vec(p / -q), r / -q});
    } else if (p.norm() > 1e-10) {
      dom.push_back({p, -r, false});
    }
  }
  for (Eigen::Index i = 0; i < hrep.equalities.rows(); ++i) {
    const Vec p = hrep.equalities.row(i).head(d).transpose();
    const double r = hrep.equalities(i, d + 1);
    if (p.norm() < 1e-10) continue;
    dom.push_back({p, -r, false});
    dom.push_back({-p, r, false});
  }
  if (pieces.empty()) throw ImproperFunctionError("conjugate takes the value -inf");
  return {std::move(pieces), Polyhedron(d, std::move(dom))};
}

ConvexPolyhedralFunction conjugate(const PiecewiseMinFunction& f) {
  std::vector<AffinePiece> pieces;
  std::optional<Polyhedron> dom;
  for (const auto& b : f.branches()) {
    if (!b.is_proper()) continue;
    const auto c = conjugate(b);
    for (const auto& p : c.pieces()) push_unique(pieces, p);
    dom = dom ? dom->intersect(c.domain()) : c.domain();
  }
  if (!dom) throw ImproperFunctionError("conjugate of a function with empty domain");
  if (dom->closure_is_empty()) return {std::move(pieces), Polyhedron::empty(f.dim())};
  return {prune_pieces(pieces, *dom), *dom};
}

ConvexPolyhedralFunction convex_envelope(const ConvexPolyhedralFunction& f) { return conjugate(conjugate(f)); }

ConvexPolyhedralFunction convex_envelope(const PiecewiseMinFunction& f) {
  const auto fs = conjugate(f);
  if (!fs.is_proper()) throw EnvelopeImproperError("function has no affine minorant; its envelope is -inf");
  return conjugate(fs);
}

ConvexPolyhedralFunction sum(const ConvexPolyhedralFunction& f, const ConvexPolyhedralFunction& g) {
  if (f.dim() != g.dim()) throw DimensionError("sum of functions of different dimension");
  std::vector<AffinePiece> pieces;
  for (const auto& p : f.pieces()) {
    for (const auto& q : g.pieces()) push_unique(pieces, {Vec(p.slope + q.slope), p.intercept + q.intercept});
  }
  Polyhedron dom = f.domain().intersect(g.domain());
  if (dom.closure_is_empty()) return {{pieces.front()}, Polyhedron::empty(f.dim())};
  return {prune_pieces(pieces, dom), dom};
}

PiecewiseMinFunction sum(const PiecewiseMinFunction& f, const PiecewiseMinFunction& g) {
  if (f.dim() != g.dim()) throw DimensionError("sum of functions of different dimension");
  std::vector<ConvexPolyhedralFunction> out;
  for (const auto& a : f.branches()) {
    for (const auto& b : g.branches()) {
      auto s = sum(a, b);
      if (s.is_proper()) out.push_back(std::move(s));
    }
  }
  if (out.empty()) throw EmptyDomainError("the domains of the summands do not intersect");
  return PiecewiseMinFunction(std::move(out));
}

ConvexPolyhedralFunction inf_convolution(const ConvexPolyhedralFunction& f, const ConvexPolyhedralFunction& g) {
  if (f.dim() != g.dim()) throw DimensionError("inf-convolution of functions of different dimension");
  const auto s = sum(conjugate(f), conjugate(g));
  if (!s.is_proper()) throw ImproperFunctionError("inf-convolution is -inf everywhere");
  return conjugate(s);
}

PiecewiseMinFunction inf_convolution(const PiecewiseMinFunction& f, const PiecewiseMinFunction& g) {
  std::vector<ConvexPolyhedralFunction> out;
  for (const auto& a : f.branches()) {
    if (!a.is_proper()) continue;
    for (const auto& b : g.branches()) {
      if (b.is_proper()) out.push_back(inf_convolution(a, b));
    }
  }
  if (out.empty()) throw ImproperFunctionError("inf-convolution of improper functions");
  return PiecewiseMinFunction(std::move(out));
}

ConvexPolyhedralFunction build_indicator(const Polyhedron& set) {
  if (set.has_strict()) throw std::invalid_argument("indicator of a set that is not closed");
  if (set.closure_is_empty()) throw EmptyDomainError("indicator of the empty set");
  return ConvexPolyhedralFunction::indicator(set);
}

PiecewiseMinFunction build_indicator(const std::vector<Vec>& points) {
  if (points.empty()) throw EmptyDomainError("indicator of the empty point set");
  std::vector<ConvexPolyhedralFunction> branches;
  for (const auto& p : points) {
    require_dim(p, points.front().size(), "indicator point");
    branches.push_back(ConvexPolyhedralFunction::indicator(Polyhedron::point(p)));
  }
  return PiecewiseMinFunction(std::move(branches));
}

std::optional<AffinePiece> affine_minorant(const ConvexPolyhedralFunction& f) {
  if (!f.is_proper()) return std::nullopt;
  return f.pieces().front();
}

std::optional<AffinePiece> affine_minorant(const PiecewiseMinFunction& f) {
  if (auto c = f.as_convex()) return affine_minorant(*c);
  const auto fs = conjugate(f);
  const auto a = fs.domain().feasible_point();
  if (!a) return std::nullopt;
  const Vec slope = clean(*a);
  return AffinePiece{slope, clean(-fs.piece_max(slope))};
}

Minimum minimize(const ConvexPolyhedralFunction& f) {
  const int d = f.dim();
  lp::Problem lp(d + 1);
  f.add_epigraph(lp, 0, d);
  Vec c = Vec::Zero(d + 1);
  c(d) = 1.0;
  lp.minimize(c);
  const auto r = lp.solve();
  switch (r.status) {
    case lp::Status::Infeasible: return {ExtReal::pos_inf(), std::nullopt};
    case lp::Status::Unbounded: return {ExtReal::neg_inf(), std::nullopt};
    default: {
      Vec x = clean(Vec(r.x.head(d)));
      return {clean(f.piece_max(x)), x};
    }
  }
}

Minimum minimize(const PiecewiseMinFunction& f) {
  Minimum best{ExtReal::pos_inf(), std::nullopt};
  for (const auto& b : f.branches()) {
    auto m = minimize(b);
    if (m.value < best.value) best = std::move(m);
  }
  return best;
}

bool dominated_by(const ConvexPolyhedralFunction& f, const ConvexPolyhedralFunction& g, double tol) {
  if (f.dim() != g.dim()) throw DimensionError("comparison of functions of different dimension");
  if (!g.is_proper()) return true;
  if (!f.is_proper()) return false;
  for (const auto& h : f.domain().halfspaces()) {
    const ExtReal s = g.domain().support(h.normal);
    if (s > ExtReal(h.offset + tol)) return false;
  }
  const int d = f.dim();
  for (const auto& p : f.pieces()) {
    lp::Problem lp(d + 1);
    g.add_epigraph(lp, 0, d);
    Vec c(d + 1);
    c << p.slope, -1.0;
    lp.maximize(c);
    const auto r = lp.solve();
    if (r.status == lp::Status::Unbounded) return false;
    if (!r.optimal()) continue;
    const double scale = 1.0 + std::abs(r.x(d));
    if (r.value + p.intercept > tol * scale) return false;
  }
  return true;
}

bool equivalent(const ConvexPolyhedralFunction& f, const ConvexPolyhedralFunction& g, double tol) {
  return dominated_by(f, g, tol) && dominated_by(g, f, tol);
}

}  // namespace fenchel

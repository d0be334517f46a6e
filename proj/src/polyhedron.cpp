#include "fenchel/polyhedron.hpp"

#include <sstream>
#include <stdexcept>

#include "fenchel/cone.hpp"

namespace fenchel {

Polyhedron::Polyhedron(int dim, std::vector<Halfspace> halfspaces, std::optional<VRep> cached_vrep)
    : dim_(dim), vrep_(std::move(cached_vrep)) {
  if (dim < 0) throw DimensionError("polyhedron dimension must be nonnegative");
  for (auto& h : halfspaces) {
    require_dim(h.normal, dim, "halfspace normal");
    const double nrm = h.normal.norm();
    if (nrm < 1e-12) {
      const bool ok = h.strict ? h.offset > 0 : h.offset >= -kTol;
      if (ok) continue;
      canonical_empty_ = true;
      break;
    }
    // leave unit normals alone so that serialized polyhedra reload bit for bit
    const double scale = std::abs(nrm - 1.0) <= 4 * std::numeric_limits<double>::epsilon() ? 1.0 : nrm;
    Halfspace u{clean(Vec(h.normal / scale)), clean(h.offset / scale), h.strict};
    bool dup = false;
    for (const auto& e : hs_) {
      if (e.strict == u.strict && std::abs(e.offset - u.offset) < 1e-12 && (e.normal - u.normal).norm() < 1e-12) {
        dup = true;
        break;
      }
    }
    if (!dup) hs_.push_back(std::move(u));
  }
  if (canonical_empty_) {
    hs_.clear();
    hs_.push_back({Vec::Zero(dim), -1.0, false});
    vrep_ = VRep{};
  }
}

Polyhedron Polyhedron::empty(int dim) { return Polyhedron(dim, {{Vec::Zero(dim), -1.0, false}}); }

Polyhedron Polyhedron::box(const Vec& lower, const Vec& upper) {
  const int d = static_cast<int>(lower.size());
  require_dim(upper, d, "box upper corner");
  std::vector<Halfspace> hs;
  for (int i = 0; i < d; ++i) {
    Vec e = Vec::Zero(d);
    e(i) = 1.0;
    hs.push_back({e, upper(i), false});
    hs.push_back({-e, -lower(i), false});
  }
  return Polyhedron(d, std::move(hs));
}

Polyhedron Polyhedron::point(const Vec& p) {
  const int d = static_cast<int>(p.size());
  std::vector<Halfspace> hs;
  for (int i = 0; i < d; ++i) {
    Vec e = Vec::Zero(d);
    e(i) = 1.0;
    hs.push_back({e, p(i), false});
    hs.push_back({-e, -p(i), false});
  }
  return Polyhedron(d, std::move(hs), VRep{{p}, {}});
}

bool Polyhedron::has_strict() const {
  for (const auto& h : hs_) {
    if (h.strict) return true;
  }
  return false;
}

bool Polyhedron::contains(const Vec& x, double tol) const {
  require_dim(x, dim_, "membership point");
  if (canonical_empty_) return false;
  for (const auto& h : hs_) {
    const double v = h.normal.dot(x);
    if (h.strict ? !(v < h.offset) : v > h.offset + tol) return false;
  }
  return true;
}

bool Polyhedron::contains_closure(const Vec& x, double tol) const {
  require_dim(x, dim_, "membership point");
  if (canonical_empty_) return false;
  for (const auto& h : hs_) {
    if (h.normal.dot(x) > h.offset + tol) return false;
  }
  return true;
}

Polyhedron Polyhedron::closure() const {
  std::vector<Halfspace> hs = hs_;
  for (auto& h : hs) h.strict = false;
  return Polyhedron(dim_, std::move(hs), vrep_);
}

Polyhedron Polyhedron::intersect(const Polyhedron& other) const {
  if (other.dim_ != dim_) throw DimensionError("intersection of polyhedra of different dimension");
  std::vector<Halfspace> hs = hs_;
  hs.insert(hs.end(), other.hs_.begin(), other.hs_.end());
  return Polyhedron(dim_, std::move(hs));
}

void Polyhedron::add_to(lp::Problem& lp, int offset) const {
  for (const auto& h : hs_) {
    Vec row = Vec::Zero(lp.num_vars());
    row.segment(offset, dim_) = h.normal;
    lp.add_le(row, h.offset);
  }
}

double Polyhedron::interior_slack(double cap) const {
  if (canonical_empty_) return -std::numeric_limits<double>::infinity();
  lp::Problem lp(dim_ + 1);
  for (const auto& h : hs_) {
    Vec row = Vec::Zero(dim_ + 1);
    row.head(dim_) = h.normal;
    row(dim_) = 1.0;
    lp.add_le(row, h.offset);
  }
  lp.set_upper(dim_, cap);
  Vec c = Vec::Zero(dim_ + 1);
  c(dim_) = 1.0;
  lp.maximize(c);
  const auto r = lp.solve();
  if (r.status == lp::Status::Infeasible) return -std::numeric_limits<double>::infinity();
  return r.status == lp::Status::Unbounded ? cap : r.value;
}

bool Polyhedron::closure_is_empty() const { return !feasible_point().has_value(); }

bool Polyhedron::is_empty() const {
  if (closure_is_empty()) return true;
  if (!has_strict()) return false;
  // A nonempty closure contains a point strictly inside every strict
  // halfspace iff those constraints are not implicit equalities.
  lp::Problem lp(dim_ + 1);
  for (const auto& h : hs_) {
    Vec row = Vec::Zero(dim_ + 1);
    row.head(dim_) = h.normal;
    if (h.strict) row(dim_) = 1.0;
    lp.add_le(row, h.offset);
  }
  lp.set_upper(dim_, 1.0);
  Vec c = Vec::Zero(dim_ + 1);
  c(dim_) = 1.0;
  lp.maximize(c);
  const auto r = lp.solve();
  return !(r.optimal() && r.value > kTol);
}

std::optional<Vec> Polyhedron::feasible_point() const {
  if (canonical_empty_) return std::nullopt;
  lp::Problem lp(dim_);
  add_to(lp, 0);
  lp.minimize(Vec::Zero(dim_));
  const auto r = lp.solve();
  if (!r.optimal()) return std::nullopt;
  return r.x;
}

ExtReal Polyhedron::support(const Vec& u) const {
  require_dim(u, dim_, "support direction");
  if (canonical_empty_) return ExtReal::neg_inf();
  lp::Problem lp(dim_);
  add_to(lp, 0);
  lp.maximize(u);
  const auto r = lp.solve();
  switch (r.status) {
    case lp::Status::Infeasible: return ExtReal::neg_inf();
    case lp::Status::Unbounded: return ExtReal::pos_inf();
    default: return r.value;
  }
}

VRep Polyhedron::vrep() const {
  if (vrep_) return *vrep_;
  // Homogenize: K = {(x, t) : <c, x> - delta t <= 0, -t <= 0}.
  Mat rows(static_cast<Eigen::Index>(hs_.size()) + 1, dim_ + 1);
  for (size_t i = 0; i < hs_.size(); ++i) {
    rows.row(static_cast<Eigen::Index>(i)).head(dim_) = hs_[i].normal.transpose();
    rows(static_cast<Eigen::Index>(i), dim_) = -hs_[i].offset;
  }
  rows.row(rows.rows() - 1).setZero();
  rows(rows.rows() - 1, dim_) = -1.0;
  const ConeVRep cone = cone_vrep(rows, dim_ + 1);
  VRep out;
  for (const auto& r : cone.rays) {
    const double t = r(dim_);
    if (t > 1e-10) {
      out.points.push_back(clean(Vec(r.head(dim_) / t)));
    } else {
      out.rays.push_back(clean(Vec(r.head(dim_).normalized())));
    }
  }
  for (const auto& l : cone.lines) {
    Vec dir = l.head(dim_);
    if (dir.norm() < 1e-12) continue;
    dir = clean(Vec(dir.normalized()));
    out.rays.push_back(dir);
    out.rays.push_back(clean(Vec(-dir)));
  }
  if (out.points.empty()) out.rays.clear();
  return out;
}

Polyhedron Polyhedron::with_vrep() const {
  Polyhedron p = *this;
  p.vrep_ = vrep();
  return p;
}

bool Polyhedron::vrep_consistent(double tol) const {
  if (!vrep_) return true;
  for (const auto& p : vrep_->points) {
    if (!contains_closure(p, tol)) return false;
  }
  for (const auto& r : vrep_->rays) {
    for (const auto& h : hs_) {
      if (h.normal.dot(r) > tol) return false;
    }
  }
  // Every generator set member lies in the set; conversely each extreme
  // point of the closure must be generated, which holds iff the supports agree
  // along the constraint normals.
  for (const auto& h : hs_) {
    const ExtReal a = support(h.normal);
    const ExtReal b = support_of(*vrep_, h.normal);
    if (a.is_finite() != b.is_finite()) return false;
    if (a.is_finite() && std::abs(a.value() - b.value()) > tol) return false;
  }
  return true;
}

Polyhedron Polyhedron::from_vrep(int dim, const VRep& v) {
  if (v.points.empty()) return empty(dim);
  std::vector<Vec> gens;
  for (const auto& p : v.points) {
    require_dim(p, dim, "vertex");
    Vec g(dim + 1);
    g << p, 1.0;
    gens.push_back(g);
  }
  for (const auto& r : v.rays) {
    require_dim(r, dim, "ray");
    Vec g(dim + 1);
    g << r, 0.0;
    gens.push_back(g);
  }
  const ConeHRep h = cone_hrep(gens, dim + 1);
  std::vector<Halfspace> hs;
  for (Eigen::Index i = 0; i < h.facets.rows(); ++i) {
    Vec nx = h.facets.row(i).head(dim).transpose();
    const double nt = h.facets(i, dim);
    if (nx.norm() < 1e-10) continue;
    hs.push_back({nx, -nt, false});
  }
  for (Eigen::Index i = 0; i < h.equalities.rows(); ++i) {
    Vec nx = h.equalities.row(i).head(dim).transpose();
    const double nt = h.equalities(i, dim);
    if (nx.norm() < 1e-10) continue;
    hs.push_back({nx, -nt, false});
    hs.push_back({-nx, nt, false});
  }
  return Polyhedron(dim, std::move(hs), v);
}

std::string Polyhedron::to_csv() const {
  std::ostringstream os;
  for (int i = 0; i < dim_; ++i) os << "n" << (i + 1) << ",";
  os << "offset,strict\n";
  for (const auto& h : hs_) {
    for (int i = 0; i < dim_; ++i) os << format_number(h.normal(i)) << ",";
    os << format_number(h.offset) << "," << (h.strict ? 1 : 0) << "\n";
  }
  return os.str();
}

ExtReal support_of(const VRep& v, const Vec& u) {
  if (v.points.empty()) return ExtReal::neg_inf();
  for (const auto& r : v.rays) {
    if (u.dot(r) > 1e-12) return ExtReal::pos_inf();
  }
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& p : v.points) best = std::max(best, u.dot(p));
  return best;
}

}  // namespace fenchel

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fenchel/ext_real.hpp"
#include "fenchel/linalg.hpp"
#include "fenchel/lp.hpp"

namespace fenchel {

/// { x : <normal, x> <= offset } (or < when strict).
struct Halfspace {
  Vec normal;
  double offset = 0.0;
  bool strict = false;
};

/// Generators of a polyhedron: conv(points) + cone(rays). Lines appear as a
/// pair of opposite rays. No points means the empty set.
struct VRep {
  std::vector<Vec> points;
  std::vector<Vec> rays;
};

/// Polyhedron in H-representation with an optional cached V-representation.
///
/// Halfspace normals are rescaled to unit Euclidean length on construction,
/// so the absolute tolerance kTol is a distance. The empty set has a
/// canonical form: the single trivial constraint 0 <= -1.
class Polyhedron {
 public:
  Polyhedron(int dim, std::vector<Halfspace> halfspaces, std::optional<VRep> cached_vrep = std::nullopt);

  static Polyhedron whole(int dim) { return Polyhedron(dim, {}); }
  static Polyhedron empty(int dim);
  static Polyhedron box(const Vec& lower, const Vec& upper);
  static Polyhedron from_vrep(int dim, const VRep& vrep);
  static Polyhedron point(const Vec& p);

  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] const std::vector<Halfspace>& halfspaces() const { return hs_; }
  [[nodiscard]] const std::optional<VRep>& cached_vrep() const { return vrep_; }
  [[nodiscard]] bool has_strict() const;
  [[nodiscard]] bool is_canonical_empty() const { return canonical_empty_; }

  [[nodiscard]] bool contains(const Vec& x, double tol = kTol) const;
  [[nodiscard]] bool contains_closure(const Vec& x, double tol = kTol) const;

  [[nodiscard]] Polyhedron closure() const;
  [[nodiscard]] Polyhedron intersect(const Polyhedron& other) const;

  /// Emptiness of the set itself (strict halfspaces honoured).
  [[nodiscard]] bool is_empty() const;
  [[nodiscard]] bool closure_is_empty() const;
  [[nodiscard]] std::optional<Vec> feasible_point() const;

  /// Largest s such that some x of the closure satisfies every non-strict and
  /// strict constraint with slack s, capped at `cap`. -inf when the closure is
  /// empty.
  [[nodiscard]] double interior_slack(double cap = 1.0) const;

  /// sup over the closure of <u, x>: +inf when unbounded, -inf when empty.
  [[nodiscard]] ExtReal support(const Vec& u) const;

  /// V-representation of the closure (cached one when present).
  [[nodiscard]] VRep vrep() const;
  [[nodiscard]] Polyhedron with_vrep() const;
  /// Checks the cached V-representation against the halfspaces.
  [[nodiscard]] bool vrep_consistent(double tol = kTol) const;

  /// Adds the closure's constraints on variables [offset, offset + dim) of an LP.
  void add_to(lp::Problem& lp, int offset) const;

  /// CSV export: one row per halfspace (normal components, offset, strict).
  [[nodiscard]] std::string to_csv() const;

 private:
  int dim_;
  std::vector<Halfspace> hs_;
  std::optional<VRep> vrep_;
  bool canonical_empty_ = false;
};

/// Support value of conv(points) + cone(rays) in direction u.
ExtReal support_of(const VRep& v, const Vec& u);

}  // namespace fenchel

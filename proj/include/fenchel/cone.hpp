#pragma once

#include <vector>

#include "fenchel/linalg.hpp"

namespace fenchel {

/// Halfspace description of a finitely generated cone K = cone(G) in R^n:
///   K = { y : E y = 0, F y <= 0 }.
/// Rows of `facets` are unit normals of the facets of K within its linear
/// span; rows of `equalities` form an orthonormal basis of span(K)^perp.
struct ConeHRep {
  Mat equalities;
  Mat facets;
};

/// Double description step generators -> facets, by enumeration of
/// (k-1)-subsets of generators spanning a candidate supporting hyperplane,
/// k = dim span(K). Exact up to floating point for the small cones used here.
ConeHRep cone_hrep(const std::vector<Vec>& generators, int n);

/// Reverse step: extreme rays of the polyhedral cone { y : A y <= 0 }.
/// `rays` generate the pointed part (orthogonal to the lineality space) and
/// `lines` is a basis of the lineality space.
struct ConeVRep {
  std::vector<Vec> rays;
  std::vector<Vec> lines;
};
ConeVRep cone_vrep(const Mat& constraint_rows, int n);

}  // namespace fenchel

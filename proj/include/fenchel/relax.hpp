#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fenchel/grid_function.hpp"
#include "fenchel/polyhedral_function.hpp"

namespace fenchel {

/// Feasible set: a closed polyhedron or a finite point set.
using FeasibleSet = std::variant<Polyhedron, std::vector<Vec>>;

struct MinProblem {
  std::string name;
  std::variant<PiecewiseMinFunction, GridFunction> objective;
  FeasibleSet feasible;
  /// Dual grid for grid objectives (ignored for polyhedral ones).
  std::optional<Grid> dual_grid;
};

struct RelaxationReport {
  ExtReal v_original;
  ExtReal v_relaxed;
  /// Minimum of the relaxed envelope over the probe grid nodes.
  ExtReal v_relaxed_grid;
  bool decomposition_holds = false;
  double decomposition_gap = 0.0;
  /// Mutual domination of the two sides, for polyhedral objectives.
  std::optional<bool> decomposition_exact;
  double gap = 0.0;  // v_original - v_relaxed
  /// Tolerance on the value identity: 0 for polyhedral objectives, h * L on grids.
  double value_tolerance = 0.0;
  bool value_identity = false;
  std::vector<std::string> notes;
};

/// Closed convex hull of F, as a polyhedron.
Polyhedron convex_hull(const FeasibleSet& f, int dim);

RelaxationReport relax_and_compare(const MinProblem& p, const Grid& probe_grid, double tol = 1e-9);

}  // namespace fenchel

#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fenchel/grid_function.hpp"
#include "fenchel/polyhedral_function.hpp"
#include "fenchel/subdiff.hpp"

namespace fenchel {

enum class Rule { CLOSED_UNION, INTERSECTED_UNIONS, DOUBLED_EPSILON, EQUALITY, CONJ_IDENTITY, EXACT_RULE, CLOSURE_IDENTITY };
std::string to_string(Rule r);

/// Comparison parameters shared by every rule. Verdicts use the absolute
/// tolerance tol * box_radius.
struct CompareParams {
  int splits = 32;
  double box_radius = 10.0;
  int directions = 64;
  double tol = 1e-6;

  [[nodiscard]] double tolerance() const { return tol * box_radius; }
};

/// Quasi-uniform unit directions: +-e1 in dimension 1, equally spaced angles
/// in dimension 2, a Fibonacci lattice on the sphere in dimension 3.
std::vector<Vec> directions(int dim, int n);

struct SetCompareReport {
  double hausdorff_truncated = 0.0;
  double box_radius = 0.0;
  int directions_tested = 0;
  bool containment_ab = true;
  bool containment_ba = true;
  std::vector<Vec> dirs;
  /// h_A(u) - h_B(u) per direction (+-inf when only one side is empty).
  std::vector<double> gaps;

  [[nodiscard]] std::string to_csv() const;
};

using SupportFn = std::function<ExtReal(const Vec&)>;

/// Compares two sets through their support functions on the box [-R, R]^d.
SetCompareReport compare_supports(const SupportFn& a, const SupportFn& b, int dim, double box_radius,
                                  int n_directions, double tol);

/// Support-function comparison of A and B truncated to the box, plus
/// membership of the vertices of each truncated set in the other.
SetCompareReport set_compare(const Polyhedron& a, const Polyhedron& b, double box_radius, int n_directions,
                             double tol = 1e-9);

/// sup { <u, x> : x in closure(A), |x|_inf <= R }, -inf if that set is empty.
ExtReal truncated_support(const Polyhedron& a, const Vec& u, double box_radius);

struct RuleStatus {
  Rule rule = Rule::CLOSED_UNION;
  bool applicable = true;
  bool holds = true;
  double residual = 0.0;
  double tolerance = 0.0;
  std::optional<SetCompareReport> sets;
  /// Outcome of the exact mutual-domination LPs, where computed.
  std::optional<bool> exact;
  std::string detail;
};

/// Ingredients of the sum rules at one point: conjugates and values.
class SumRuleContext {
 public:
  SumRuleContext(const PiecewiseMinFunction& f, const PiecewiseMinFunction& g, const Vec& x);

  [[nodiscard]] const Vec& x() const { return x_; }
  [[nodiscard]] int dim() const { return static_cast<int>(x_.size()); }
  [[nodiscard]] const PiecewiseMinFunction& sum() const { return sum_; }
  [[nodiscard]] ExtReal threshold() const { return threshold_; }

  /// Support of the eps-subdifferential of f + g at x, truncated.
  [[nodiscard]] ExtReal lhs_support(double eps, const Vec& u, double box_radius) const;
  /// Support of U_{e1 + e2 = alpha, e1, e2 >= 0} (eps_e1 f(x) + eps_e2 g(x)),
  /// truncated; exact, through the lifted set in (p, q, e1).
  [[nodiscard]] ExtReal union_support(double alpha, const Vec& u, double box_radius) const;
  /// Support of eps_a f(x) + eps_b g(x), truncated.
  [[nodiscard]] ExtReal minkowski_support(double eps_f, double eps_g, const Vec& u, double box_radius) const;

 private:
  ExtReal lifted(bool split, double a, double b, const Vec& u, double box_radius) const;

  Vec x_;
  PiecewiseMinFunction sum_;
  ConvexPolyhedralFunction fs_, gs_, ss_;
  ExtReal fx_, gx_, sx_;
  ExtReal threshold_;
};

struct SumRuleReport {
  Vec x;
  double epsilon = 0.0;
  ExtReal threshold;
  RuleStatus closed_union, intersected_unions, doubled_epsilon;
  /// Residual of the union restricted to uniform splits, for 1, 2, 4, ...,
  /// `splits` intervals (nested grids, so non-increasing).
  std::vector<std::pair<int, double>> split_residuals;
};

/// CLOSED_UNION, INTERSECTED_UNIONS and DOUBLED_EPSILON at one point. With enforce_scope, eps at or below
/// the threshold of f + g raises ScopeError; otherwise CLOSED_UNION is marked not
/// applicable there.
SumRuleReport check_sum_rules(const PiecewiseMinFunction& f, const PiecewiseMinFunction& g, const Vec& x,
                              double epsilon, const CompareParams& params, bool enforce_scope = true);

/// Gap between the envelope of f + g and the sum of envelopes at the nodes.
RuleStatus check_regularization_equality(const PiecewiseMinFunction& f, const PiecewiseMinFunction& g,
                                         const Grid& probe_grid, const CompareParams& params);

/// Gap between (f + g)* and the closed inf-convolution of f* and g* at the nodes.
RuleStatus check_conjugate_identity(const PiecewiseMinFunction& f, const PiecewiseMinFunction& g,
                                    const Grid& dual_grid, const CompareParams& params);

struct Probe {
  Vec x;
  double epsilon = 0.0;
};

struct EquivalenceReport {
  /// Statements (i) to (iv): EQUALITY, CLOSED_UNION, INTERSECTED_UNIONS, DOUBLED_EPSILON.
  std::array<RuleStatus, 4> statuses;
  bool consistent = true;
  std::vector<SumRuleReport> probes;
};

EquivalenceReport equivalence_harness(const PiecewiseMinFunction& f, const PiecewiseMinFunction& g,
                                      const std::vector<Probe>& probes, const Grid& probe_grid,
                                      const CompareParams& params);

enum class Qualification { CONTINUITY_POINT, RI_OVERLAP, NONE };
std::string to_string(Qualification q);

Qualification qualification_check(const ConvexPolyhedralFunction& f, const ConvexPolyhedralFunction& g);

/// The union over eps1 + eps2 = eps without closure must equal the
/// eps-subdifferential of the sum. Requires a qualified pair.
RuleStatus exact_sum_rule_check(const ConvexPolyhedralFunction& f, const ConvexPolyhedralFunction& g,
                                const Vec& x, double epsilon, const CompareParams& params);

struct WitnessRow {
  int n = 0;
  double eps_n = 0.0;
  Vec x_n, y_n, xstar_n, ystar_n;
  double split_residual = 0.0;  // |x* - u - v|_inf of the split
  double sum_gap = 0.0;         // |x_n* + y_n* - x*|_inf
  double inner_f = 0.0;         // <x_n*, x_n - x>
  double inner_g = 0.0;         // <y_n*, y_n - x>
  double value_f = 0.0;         // f(x_n) - f(x)
  double value_g = 0.0;         // g(y_n) - g(x)
  double bound = 0.0;           // eps^2 + eps (2 + eps^2 + |x*|_inf)
  bool split_feasible = true;
  bool bounds_hold = true;
};

struct WitnessTable {
  std::vector<WitnessRow> rows;
  bool bounds_hold = true;
  /// Largest absolute value among the five convergence columns of the last row.
  double final_max = 0.0;
};

WitnessTable sequential_witnesses(const ConvexPolyhedralFunction& f, const ConvexPolyhedralFunction& g,
                                  const Vec& x, const Vec& xstar, int n_rows);

struct OuterLimitReport {
  std::vector<double> radii;
  /// Union of subdifferentials over the ball of each radius against the
  /// subdifferential at z.
  std::vector<SetCompareReport> per_radius;
  std::vector<bool> equal_per_radius;
  SetCompareReport limit;
  bool equal = false;
};

OuterLimitReport outer_limit_subdiff(const ConvexPolyhedralFunction& f, const Vec& z, const std::vector<double>& radii,
                                     double box_radius, int n_directions);

struct IntersectionClosureReport {
  RuleStatus status;
  bool qualified = false;  // A meets the interior of B
};

IntersectionClosureReport check_intersection_closure(const Polyhedron& a, const Polyhedron& b, double box_radius,
                                                     int n_directions, double tol = 1e-9);

}  // namespace fenchel

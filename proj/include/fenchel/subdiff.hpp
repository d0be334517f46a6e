#pragma once

#include <functional>
#include <optional>

#include "fenchel/ext_real.hpp"
#include "fenchel/polyhedral_function.hpp"
#include "fenchel/polyhedron.hpp"

namespace fenchel {

/// { s : f*(s) - <s, x> <= eps - f(x) }. Empty (canonical form) when f(x) is
/// +inf or eps < 0.
Polyhedron eps_subdiff_set(const PiecewiseMinFunction& f, const Vec& x, double eps);
/// Same set, given the conjugate of f already.
Polyhedron eps_subdiff_set(const ConvexPolyhedralFunction& fstar, ExtReal fx, const Vec& x, double eps);

/// Exact subdifferential of a convex function.
Polyhedron subdifferential(const ConvexPolyhedralFunction& f, const Vec& x);

/// inf{ a > 0 : eps-subdifferential at x is nonempty } = f(x) - f**(x).
/// Exactly 0 for a convex representation.
ExtReal eps_threshold(const PiecewiseMinFunction& f, const Vec& x);
/// min over s of f*(s) + f(x) - <s, x>, as one LP.
ExtReal eps_threshold_by_definition(const PiecewiseMinFunction& f, const Vec& x);

struct BRWitness {
  Vec z;
  Vec zstar;
  double norm_primal = 0.0;  // |z - x|_1
  double norm_dual = 0.0;    // |z* - x*|_inf
};

/// Given x* in the eps-subdifferential of f at x, finds z and z* in the
/// subdifferential of f at z with |z - x|_1 <= sqrt(eps), |z* - x*|_inf <= sqrt(eps).
BRWitness brondsted_rockafellar(const ConvexPolyhedralFunction& f, const Vec& x, const Vec& xstar, double eps);

struct SubgradientOracle {
  std::function<Vec(const Vec&)> select;
  /// Optional function values, used to check the subgradient inequality.
  std::function<ExtReal(const Vec&)> value;
};

/// Returns the slope of the first maximal piece plus nothing from the domain:
/// a valid selection on the interior of the domain.
SubgradientOracle selection_oracle(const ConvexPolyhedralFunction& f);

/// f_x0 + sum_k <g(m_k), dx> with m_k the midpoints of `steps` equal
/// sub-segments of [x0, target].
double integrate_subdiff(const SubgradientOracle& oracle, const Vec& x0, double f_x0, const Vec& target, int steps);

}  // namespace fenchel

namespace fenchel {

/// x* in the eps-subdifferential of f at x, decided by one LP:
/// inf_y f(y) - <x*, y> >= f(x) - <x*, x> - eps - tol.
bool is_eps_subgradient(const ConvexPolyhedralFunction& f, const Vec& x, const Vec& xstar, double eps, double tol = kTol);

}  // namespace fenchel

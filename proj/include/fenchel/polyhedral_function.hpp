#pragma once

#include <optional>
#include <vector>

#include "fenchel/ext_real.hpp"
#include "fenchel/linalg.hpp"
#include "fenchel/polyhedron.hpp"

namespace fenchel {

struct AffinePiece {
  Vec slope;
  double intercept = 0.0;

  [[nodiscard]] double at(const Vec& x) const { return slope.dot(x) + intercept; }
};

/// x -> max_i <a_i, x> + b_i on a closed polyhedral domain, +inf outside.
/// The domain may be empty, in which case the function is identically +inf
/// (this is what the conjugate of a function without affine minorant is).
class ConvexPolyhedralFunction {
 public:
  ConvexPolyhedralFunction(std::vector<AffinePiece> pieces, Polyhedron domain);

  static ConvexPolyhedralFunction affine(const Vec& slope, double intercept);
  static ConvexPolyhedralFunction zero(int dim);
  static ConvexPolyhedralFunction indicator(const Polyhedron& set);

  [[nodiscard]] int dim() const { return domain_.dim(); }
  [[nodiscard]] const std::vector<AffinePiece>& pieces() const { return pieces_; }
  [[nodiscard]] const Polyhedron& domain() const { return domain_; }

  [[nodiscard]] ExtReal operator()(const Vec& x) const;
  /// Value of the maximal piece, ignoring the domain.
  [[nodiscard]] double piece_max(const Vec& x) const;
  [[nodiscard]] bool is_proper() const { return !domain_.closure_is_empty(); }
  /// Largest slope norm among the pieces.
  [[nodiscard]] double lipschitz() const;

  /// Adds t >= <a_i, x> + b_i (t at column t_col, x at columns [x_col, x_col + d))
  /// and the domain constraints to an LP.
  void add_epigraph(lp::Problem& lp, int x_col, int t_col) const;

 private:
  std::vector<AffinePiece> pieces_;
  Polyhedron domain_;
};

/// Pointwise minimum of finitely many convex polyhedral functions.
class PiecewiseMinFunction {
 public:
  explicit PiecewiseMinFunction(std::vector<ConvexPolyhedralFunction> branches);
  PiecewiseMinFunction(const ConvexPolyhedralFunction& f);  // NOLINT: a convex function is a one-branch minimum

  [[nodiscard]] int dim() const { return branches_.front().dim(); }
  [[nodiscard]] const std::vector<ConvexPolyhedralFunction>& branches() const { return branches_; }
  [[nodiscard]] ExtReal operator()(const Vec& x) const;
  [[nodiscard]] bool is_proper() const;
  /// The single branch when there is exactly one, i.e. when the function is
  /// known to be convex by representation.
  [[nodiscard]] std::optional<ConvexPolyhedralFunction> as_convex() const;

 private:
  std::vector<ConvexPolyhedralFunction> branches_;
};

ExtReal eval(const ConvexPolyhedralFunction& f, const Vec& x);
ExtReal eval(const PiecewiseMinFunction& f, const Vec& x);

/// Exact Legendre-Fenchel conjugate.
ConvexPolyhedralFunction conjugate(const ConvexPolyhedralFunction& f);
/// (min_i f_i)^* = max_i f_i^*. The result has an empty domain when f admits
/// no affine minorant.
ConvexPolyhedralFunction conjugate(const PiecewiseMinFunction& f);

/// Closed convex hull f^**.
ConvexPolyhedralFunction convex_envelope(const ConvexPolyhedralFunction& f);
ConvexPolyhedralFunction convex_envelope(const PiecewiseMinFunction& f);

/// Closed hull of the inf-convolution, (f^* + g^*)^*.
ConvexPolyhedralFunction inf_convolution(const ConvexPolyhedralFunction& f, const ConvexPolyhedralFunction& g);
/// Branchwise: min_ij cl(f_i inf-conv g_j).
PiecewiseMinFunction inf_convolution(const PiecewiseMinFunction& f, const PiecewiseMinFunction& g);

ConvexPolyhedralFunction sum(const ConvexPolyhedralFunction& f, const ConvexPolyhedralFunction& g);
/// min_i f_i + min_j g_j = min_ij (f_i + g_j); branches with empty domain are
/// dropped. Throws EmptyDomainError when dom f and dom g do not meet.
PiecewiseMinFunction sum(const PiecewiseMinFunction& f, const PiecewiseMinFunction& g);

ConvexPolyhedralFunction build_indicator(const Polyhedron& set);
PiecewiseMinFunction build_indicator(const std::vector<Vec>& points);

/// Some (a, b) with <a, x> + b <= f(x) everywhere, if one exists.
std::optional<AffinePiece> affine_minorant(const ConvexPolyhedralFunction& f);
std::optional<AffinePiece> affine_minorant(const PiecewiseMinFunction& f);

/// inf f with a minimizer when attained: +inf for an empty domain, -inf when
/// unbounded below.
struct Minimum {
  ExtReal value;
  std::optional<Vec> argmin;
};
Minimum minimize(const ConvexPolyhedralFunction& f);
Minimum minimize(const PiecewiseMinFunction& f);

/// f <= g everywhere, decided by one LP per piece of f plus domain supports.
bool dominated_by(const ConvexPolyhedralFunction& f, const ConvexPolyhedralFunction& g, double tol = kTol);
/// Mutual domination.
bool equivalent(const ConvexPolyhedralFunction& f, const ConvexPolyhedralFunction& g, double tol = kTol);

}  // namespace fenchel

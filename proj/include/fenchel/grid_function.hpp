#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fenchel/ext_real.hpp"
#include "fenchel/linalg.hpp"
#include "fenchel/polyhedral_function.hpp"

namespace fenchel {

/// Uniform box grid in dimension 1 to 3. Nodes are stored with the first
/// coordinate varying slowest.
class Grid {
 public:
  Grid(const Vec& lower, const Vec& upper, std::vector<int> nodes);

  [[nodiscard]] int dim() const { return static_cast<int>(lower_.size()); }
  [[nodiscard]] const Vec& lower() const { return lower_; }
  [[nodiscard]] const Vec& upper() const { return upper_; }
  [[nodiscard]] const std::vector<int>& nodes() const { return nodes_; }
  [[nodiscard]] double spacing(int axis) const;
  [[nodiscard]] double max_spacing() const;
  [[nodiscard]] size_t size() const { return size_; }
  [[nodiscard]] double coord(int axis, int k) const;
  [[nodiscard]] std::vector<int> multi_index(size_t flat) const;
  [[nodiscard]] size_t flat_index(const std::vector<int>& idx) const;
  [[nodiscard]] size_t stride(int axis) const { return strides_[static_cast<size_t>(axis)]; }
  [[nodiscard]] Vec point(size_t flat) const;
  [[nodiscard]] bool contains(const Vec& x) const;

  friend bool operator==(const Grid& a, const Grid& b);

 private:
  Vec lower_, upper_;
  std::vector<int> nodes_;
  std::vector<size_t> strides_;
  size_t size_ = 0;
};

/// Extended-real samples on a grid; +inf marks nodes outside the domain.
class GridFunction {
 public:
  GridFunction(Grid grid, std::vector<double> values);

  /// Samples a polyhedral function at every node.
  static GridFunction sample(const Grid& grid, const PiecewiseMinFunction& f);

  [[nodiscard]] const Grid& grid() const { return grid_; }
  [[nodiscard]] const std::vector<double>& values() const { return values_; }
  [[nodiscard]] double at(size_t flat) const { return values_[flat]; }

  /// Multilinear interpolation; +inf if any node of the stencil is +inf.
  [[nodiscard]] ExtReal operator()(const Vec& x) const;
  [[nodiscard]] bool is_proper() const;
  /// Rows "x1,...,xd,value" with a header row.
  [[nodiscard]] std::string to_csv() const;

 private:
  Grid grid_;
  std::vector<double> values_;
};

ExtReal eval(const GridFunction& f, const Vec& x);

struct GridTransform {
  GridFunction function;
  /// SlopeRangeWarning messages: slopes of the primal data that fall
  /// outside the dual box.
  std::vector<std::string> warnings;
};

/// Discrete Legendre transform onto `dual`, one axis at a time with a
/// linear-time sweep per grid line. Ties go to the smallest primal index.
GridTransform conjugate(const GridFunction& f, const Grid& dual);

/// Biconjugate sampled back on the grid of f, through `dual`.
GridTransform convex_envelope(const GridFunction& f, const Grid& dual);

/// Lower semicontinuous hull on the node lattice.
///
/// A +inf node becomes finite when, along some axis, both neighbours are
/// finite (midpoint value) or when it lies on the grid boundary next to a
/// finite node (that node's value). A finite node standing above both
/// neighbours along an axis by more than the neighbours' own outward
/// variation is lowered to their midpoint. Applied until nothing changes.
GridFunction lsc_hull(const GridFunction& f);

/// (f inf-conv g)(x) = min over nodes y of f(y) + g(x - y), g interpolated.
GridFunction inf_convolution(const GridFunction& f, const GridFunction& g, const Grid& result);

/// The constant min_k f(node k): the grid box is bounded, so it is a minorant.
std::optional<AffinePiece> affine_minorant(const GridFunction& f);

/// Dual grid lines along `axis` of one 1-d transform pass, exposed for tests.
namespace detail {
void conjugate_line(const std::vector<double>& xs, const std::vector<double>& fx, const std::vector<double>& ss,
                    std::vector<double>& out, double* min_slope, double* max_slope);
}

}  // namespace fenchel

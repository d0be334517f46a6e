#include "fenchel/grid_function.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace fenchel {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double cross(double ox, double oy, double ax, double ay, double bx, double by) {
  return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox);
}

struct Shape {
  std::vector<int> n;
  [[nodiscard]] size_t size() const {
    size_t s = 1;
    for (int k : n) s *= static_cast<size_t>(k);
    return s;
  }
  [[nodiscard]] size_t stride(size_t axis) const {
    size_t s = 1;
    for (size_t j = axis + 1; j < n.size(); ++j) s *= static_cast<size_t>(n[j]);
    return s;
  }
};

// Flat offsets of the first element of every line along `axis`.
std::vector<size_t> line_starts(const Shape& sh, size_t axis) {
  std::vector<size_t> starts;
  const size_t st = sh.stride(axis);
  const size_t len = static_cast<size_t>(sh.n[axis]);
  for (size_t i = 0; i < sh.size(); ++i) {
    if ((i / st) % len == 0) starts.push_back(i);
  }
  return starts;
}

// Nodes of `grid` inside the convex hull of the flagged ones.
std::vector<bool> hull_mask(const Grid& grid, const std::vector<bool>& in, const Grid& dual);

}  // namespace

Grid::Grid(const Vec& lower, const Vec& upper, std::vector<int> nodes)
    : lower_(lower), upper_(upper), nodes_(std::move(nodes)) {
  const int d = static_cast<int>(lower_.size());
  if (d < 1 || d > 3) throw DimensionError("grids are supported in dimension 1 to 3");
  require_dim(upper_, d, "grid upper corner");
  if (static_cast<int>(nodes_.size()) != d) throw DimensionError("grid node counts do not match the dimension");
  for (int i = 0; i < d; ++i) {
    if (!(lower_(i) < upper_(i))) throw std::invalid_argument("grid lower bound must be below the upper bound");
    if (nodes_[static_cast<size_t>(i)] < 2) throw std::invalid_argument("grids need at least two nodes per axis");
  }
  strides_.assign(static_cast<size_t>(d), 1);
  for (int i = d - 2; i >= 0; --i) {
    strides_[static_cast<size_t>(i)] = strides_[static_cast<size_t>(i) + 1] * static_cast<size_t>(nodes_[static_cast<size_t>(i) + 1]);
  }
  size_ = strides_[0] * static_cast<size_t>(nodes_[0]);
}

double Grid::spacing(int axis) const {
  return (upper_(axis) - lower_(axis)) / (nodes_[static_cast<size_t>(axis)] - 1);
}

double Grid::max_spacing() const {
  double h = 0.0;
  for (int i = 0; i < dim(); ++i) h = std::max(h, spacing(i));
  return h;
}

double Grid::coord(int axis, int k) const {
  if (k == nodes_[static_cast<size_t>(axis)] - 1) return upper_(axis);
  return lower_(axis) + k * spacing(axis);
}

std::vector<int> Grid::multi_index(size_t flat) const {
  std::vector<int> idx(static_cast<size_t>(dim()));
  for (size_t i = 0; i < idx.size(); ++i) {
    idx[i] = static_cast<int>(flat / strides_[i]);
    flat %= strides_[i];
  }
  return idx;
}

size_t Grid::flat_index(const std::vector<int>& idx) const {
  size_t f = 0;
  for (size_t i = 0; i < idx.size(); ++i) f += static_cast<size_t>(idx[i]) * strides_[i];
  return f;
}

Vec Grid::point(size_t flat) const {
  const auto idx = multi_index(flat);
  Vec p(dim());
  for (int i = 0; i < dim(); ++i) p(i) = coord(i, idx[static_cast<size_t>(i)]);
  return p;
}

bool Grid::contains(const Vec& x) const {
  for (int i = 0; i < dim(); ++i) {
    const double slack = 1e-12 * (upper_(i) - lower_(i));
    if (x(i) < lower_(i) - slack || x(i) > upper_(i) + slack) return false;
  }
  return true;
}

bool operator==(const Grid& a, const Grid& b) {
  return a.nodes_ == b.nodes_ && a.lower_ == b.lower_ && a.upper_ == b.upper_;
}

GridFunction::GridFunction(Grid grid, std::vector<double> values) : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw DimensionError("grid function has " + std::to_string(values_.size()) + " values for " +
                         std::to_string(grid_.size()) + " nodes");
  }
  for (double v : values_) {
    if (std::isnan(v)) throw std::invalid_argument("grid values must not be NaN");
  }
}

GridFunction GridFunction::sample(const Grid& grid, const PiecewiseMinFunction& f) {
  if (f.dim() != grid.dim()) throw DimensionError("sampled function and grid differ in dimension");
  std::vector<double> v(grid.size());
  for (size_t k = 0; k < grid.size(); ++k) v[k] = f(grid.point(k)).value();
  return {grid, std::move(v)};
}

ExtReal GridFunction::operator()(const Vec& x) const {
  const int d = grid_.dim();
  require_dim(x, d, "evaluation point");
  if (!grid_.contains(x)) return ExtReal::pos_inf();
  std::vector<int> base(static_cast<size_t>(d));
  std::vector<double> t(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) {
    const int n = grid_.nodes()[static_cast<size_t>(i)];
    double u = (x(i) - grid_.lower()(i)) / grid_.spacing(i);
    int k = std::clamp(static_cast<int>(std::floor(u)), 0, n - 2);
    double frac = std::clamp(u - k, 0.0, 1.0);
    if (frac < 1e-12) frac = 0.0;
    if (frac > 1.0 - 1e-12) frac = 1.0;
    base[static_cast<size_t>(i)] = k;
    t[static_cast<size_t>(i)] = frac;
  }
  double acc = 0.0;
  std::vector<int> idx(static_cast<size_t>(d));
  for (int corner = 0; corner < (1 << d); ++corner) {
    double w = 1.0;
    for (int i = 0; i < d; ++i) {
      const bool up = (corner >> i) & 1;
      const double ti = t[static_cast<size_t>(i)];
      w *= up ? ti : 1.0 - ti;
      idx[static_cast<size_t>(i)] = base[static_cast<size_t>(i)] + (up ? 1 : 0);
    }
    if (w == 0.0) continue;
    const double v = values_[grid_.flat_index(idx)];
    if (std::isinf(v)) return ExtReal(v);
    acc += w * v;
  }
  return acc;
}

bool GridFunction::is_proper() const {
  bool finite = false;
  for (double v : values_) {
    if (v == -kInf) return false;
    finite = finite || std::isfinite(v);
  }
  return finite;
}

std::string GridFunction::to_csv() const {
  std::ostringstream os;
  for (int i = 0; i < grid_.dim(); ++i) os << "x" << (i + 1) << ",";
  os << "value\n";
  for (size_t k = 0; k < grid_.size(); ++k) {
    const Vec p = grid_.point(k);
    for (int i = 0; i < grid_.dim(); ++i) os << format_number(p(i)) << ",";
    os << format_number(values_[k]) << "\n";
  }
  return os.str();
}

ExtReal eval(const GridFunction& f, const Vec& x) { return f(x); }

namespace detail {

void conjugate_line(const std::vector<double>& xs, const std::vector<double>& fx, const std::vector<double>& ss,
                    std::vector<double>& out, double* min_slope, double* max_slope) {
  // Lower convex hull of the finite samples, collinear points dropped.
  std::vector<size_t> hull;
  for (size_t k = 0; k < xs.size(); ++k) {
    if (!std::isfinite(fx[k])) continue;
    while (hull.size() >= 2) {
      const size_t a = hull[hull.size() - 2], b = hull.back();
      if (cross(xs[a], fx[a], xs[b], fx[b], xs[k], fx[k]) > 0) break;
      hull.pop_back();
    }
    hull.push_back(k);
  }
  out.assign(ss.size(), -kInf);
  if (hull.empty()) return;
  if (hull.size() >= 2) {
    const size_t a = hull[0], b = hull[1], y = hull[hull.size() - 2], z = hull.back();
    *min_slope = std::min(*min_slope, (fx[b] - fx[a]) / (xs[b] - xs[a]));
    *max_slope = std::max(*max_slope, (fx[z] - fx[y]) / (xs[z] - xs[y]));
  }
  size_t h = 0;
  for (size_t j = 0; j < ss.size(); ++j) {
    const double s = ss[j];
    while (h + 1 < hull.size() && s * xs[hull[h + 1]] - fx[hull[h + 1]] > s * xs[hull[h]] - fx[hull[h]]) ++h;
    out[j] = s * xs[hull[h]] - fx[hull[h]];
  }
}

}  // namespace detail

GridTransform conjugate(const GridFunction& f, const Grid& dual) {
  const Grid& g = f.grid();
  const int d = g.dim();
  if (dual.dim() != d) throw DimensionError("dual grid dimension differs from the primal grid");
  if (!f.is_proper()) throw ImproperFunctionError("conjugate of an improper grid function");

  Shape shape{g.nodes()};
  std::vector<double> cur(f.values().size());
  for (size_t k = 0; k < cur.size(); ++k) cur[k] = -f.values()[k];

  // Slopes are measured on the primal samples, line by line along each axis.
  // Later passes act on partial conjugates whose slopes say nothing about f.
  std::vector<std::string> warnings;
  for (int axis = 0; axis < d; ++axis) {
    const size_t ax = static_cast<size_t>(axis);
    std::vector<double> xs(static_cast<size_t>(g.nodes()[ax])), line(xs.size()), none;
    for (size_t k = 0; k < xs.size(); ++k) xs[k] = g.coord(axis, static_cast<int>(k));
    double lo = kInf, hi = -kInf;
    for (size_t start : line_starts(shape, ax)) {
      for (size_t k = 0; k < xs.size(); ++k) line[k] = f.values()[start + k * shape.stride(ax)];
      detail::conjugate_line(xs, line, {}, none, &lo, &hi);
    }
    if (lo < dual.lower()(axis) - 1e-12 || hi > dual.upper()(axis) + 1e-12) {
      warnings.push_back("SlopeRangeWarning: axis " + std::to_string(axis + 1) + " slopes span [" + format_number(lo) +
                         ", " + format_number(hi) + "], dual range is [" + format_number(dual.lower()(axis)) + ", " +
                         format_number(dual.upper()(axis)) + "]");
    }
  }

  for (int axis = 0; axis < d; ++axis) {
    const size_t ax = static_cast<size_t>(axis);
    std::vector<double> xs(static_cast<size_t>(g.nodes()[ax])), ss(static_cast<size_t>(dual.nodes()[ax]));
    for (size_t k = 0; k < xs.size(); ++k) xs[k] = g.coord(axis, static_cast<int>(k));
    for (size_t k = 0; k < ss.size(); ++k) ss[k] = dual.coord(axis, static_cast<int>(k));

    Shape next = shape;
    next.n[ax] = dual.nodes()[ax];
    std::vector<double> out(next.size());
    const size_t in_stride = shape.stride(ax), out_stride = next.stride(ax);
    const auto starts = line_starts(shape, ax);
    const auto out_starts = line_starts(next, ax);
    double lo = kInf, hi = -kInf;
    std::vector<double> line(xs.size()), res;
    for (size_t l = 0; l < starts.size(); ++l) {
      for (size_t k = 0; k < xs.size(); ++k) line[k] = -cur[starts[l] + k * in_stride];
      detail::conjugate_line(xs, line, ss, res, &lo, &hi);
      for (size_t k = 0; k < ss.size(); ++k) out[out_starts[l] + k * out_stride] = res[k];
    }
    cur = std::move(out);
    shape = std::move(next);
  }
  return {GridFunction(dual, std::move(cur)), std::move(warnings)};
}

GridTransform convex_envelope(const GridFunction& f, const Grid& dual) {
  auto first = conjugate(f, dual);
  auto second = conjugate(first.function, f.grid());
  std::vector<bool> finite(f.values().size());
  for (size_t k = 0; k < finite.size(); ++k) finite[k] = std::isfinite(f.values()[k]);
  const auto mask = hull_mask(f.grid(), finite, dual);
  std::vector<double> v = second.function.values();
  for (size_t k = 0; k < v.size(); ++k) {
    if (!mask[k]) v[k] = kInf;
  }
  // With a bounded dual box the result is the hull regularized by the box's
  // support function. Clipping can come from any direction of the box, so
  // redo both passes on a box of twice the width at the same spacing: any
  // value that rises means the given box is too small.
  const Grid& g = f.grid();
  Vec lower = dual.lower(), upper = dual.upper();
  auto nodes = dual.nodes();
  for (int axis = 0; axis < dual.dim(); ++axis) {
    const auto ax = static_cast<size_t>(axis);
    const int m = std::max(1, (nodes[ax] - 1) / 2);
    lower(axis) -= m * dual.spacing(axis);
    upper(axis) += m * dual.spacing(axis);
    nodes[ax] += 2 * m;
  }
  const auto wide = conjugate(conjugate(f, Grid(lower, upper, nodes)).function, g).function;
  bool clipped = false;
  for (size_t k = 0; k < v.size() && !clipped; ++k) {
    if (std::isfinite(v[k])) clipped = wide.at(k) > v[k] + 1e-9 * std::max(1.0, std::abs(v[k]));
  }
  if (clipped) {
    std::string range;
    for (int axis = 0; axis < dual.dim(); ++axis) {
      range += (axis ? " x [" : "[") + format_number(dual.lower()(axis)) + ", " + format_number(dual.upper()(axis)) + "]";
    }
    first.warnings.push_back("SlopeRangeWarning: the envelope needs slopes outside the dual box " + range);
  }
  return {GridFunction(g, std::move(v)), std::move(first.warnings)};
}

GridFunction lsc_hull(const GridFunction& f) {
  if (!f.is_proper()) throw ImproperFunctionError("lsc hull of an improper grid function");
  const Grid& g = f.grid();
  const int d = g.dim();
  std::vector<double> v = f.values();
  auto neighbour = [&](const std::vector<int>& idx, int axis, int step) -> std::optional<size_t> {
    const int k = idx[static_cast<size_t>(axis)] + step;
    if (k < 0 || k >= g.nodes()[static_cast<size_t>(axis)]) return std::nullopt;
    auto j = idx;
    j[static_cast<size_t>(axis)] = k;
    return g.flat_index(j);
  };
  const size_t max_rounds = 4 * g.size() + 4;
  for (size_t round = 0; round < max_rounds; ++round) {
    bool changed = false;
    std::vector<double> next = v;
    for (size_t k = 0; k < v.size(); ++k) {
      const auto idx = g.multi_index(k);
      double best = v[k];
      for (int axis = 0; axis < d; ++axis) {
        const auto lo = neighbour(idx, axis, -1), hi = neighbour(idx, axis, 1);
        if (std::isinf(v[k])) {
          if (lo && hi) {
            if (std::isfinite(v[*lo]) && std::isfinite(v[*hi])) best = std::min(best, 0.5 * (v[*lo] + v[*hi]));
          } else {
            const size_t only = lo ? *lo : *hi;
            if (std::isfinite(v[only])) best = std::min(best, v[only]);
          }
          continue;
        }
        if (!lo || !hi || !std::isfinite(v[*lo]) || !std::isfinite(v[*hi])) continue;
        double variation = 0.0;
        if (const auto lo2 = neighbour(idx, axis, -2); lo2 && std::isfinite(v[*lo2])) {
          variation = std::max(variation, std::abs(v[*lo2] - v[*lo]));
        }
        if (const auto hi2 = neighbour(idx, axis, 2); hi2 && std::isfinite(v[*hi2])) {
          variation = std::max(variation, std::abs(v[*hi2] - v[*hi]));
        }
        const double rise = v[k] - std::max(v[*lo], v[*hi]);
        if (rise > variation + 1e-12 * (1.0 + std::abs(v[k]))) best = std::min(best, 0.5 * (v[*lo] + v[*hi]));
      }
      if (best < v[k]) {
        next[k] = best;
        changed = true;
      }
    }
    v = std::move(next);
    if (!changed) break;
  }
  return {g, std::move(v)};
}

GridFunction inf_convolution(const GridFunction& f, const GridFunction& g, const Grid& result) {
  if (f.grid().dim() != g.grid().dim() || result.dim() != f.grid().dim()) {
    throw DimensionError("inf-convolution of grid functions of different dimension");
  }
  if (!f.is_proper() || !g.is_proper()) throw ImproperFunctionError("inf-convolution of improper grid functions");
  std::vector<size_t> dom;
  for (size_t k = 0; k < f.values().size(); ++k) {
    if (std::isfinite(f.at(k))) dom.push_back(k);
  }
  std::vector<double> v(result.size(), kInf);
  bool any = false;
  for (size_t r = 0; r < result.size(); ++r) {
    const Vec x = result.point(r);
    for (size_t k : dom) {
      const ExtReal gv = g(Vec(x - f.grid().point(k)));
      if (gv.is_finite()) v[r] = std::min(v[r], f.at(k) + gv.value());
    }
    any = any || std::isfinite(v[r]);
  }
  if (!any) throw ImproperFunctionError("inf-convolution has empty domain on the result grid");
  return {result, std::move(v)};
}

std::optional<AffinePiece> affine_minorant(const GridFunction& f) {
  if (!f.is_proper()) return std::nullopt;
  double m = kInf;
  for (double v : f.values()) m = std::min(m, v);
  return AffinePiece{Vec::Zero(f.grid().dim()), m};
}

namespace {

std::vector<bool> hull_mask(const Grid& grid, const std::vector<bool>& in, const Grid& dual) {
  const int d = grid.dim();
  std::vector<bool> mask(in.size(), false);
  if (d == 1) {
    size_t first = in.size(), last = 0;
    for (size_t k = 0; k < in.size(); ++k) {
      if (in[k]) {
        first = std::min(first, k);
        last = k;
      }
    }
    for (size_t k = first; k <= last && k < in.size(); ++k) mask[k] = true;
    return mask;
  }
  if (d == 2) {
    std::vector<std::pair<double, double>> pts;
    for (size_t k = 0; k < in.size(); ++k) {
      if (!in[k]) continue;
      const Vec p = grid.point(k);
      pts.emplace_back(p(0), p(1));
    }
    std::sort(pts.begin(), pts.end());
    std::vector<std::pair<double, double>> hull(2 * pts.size());
    size_t m = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
      while (m >= 2 && cross(hull[m - 2].first, hull[m - 2].second, hull[m - 1].first, hull[m - 1].second,
                             pts[i].first, pts[i].second) <= 0) {
        --m;
      }
      hull[m++] = pts[i];
    }
    for (size_t i = pts.size() - 1, t = m + 1; i-- > 0;) {
      while (m >= t && cross(hull[m - 2].first, hull[m - 2].second, hull[m - 1].first, hull[m - 1].second,
                             pts[i].first, pts[i].second) <= 0) {
        --m;
      }
      hull[m++] = pts[i];
    }
    hull.resize(m > 1 ? m - 1 : m);
    const double eps = 1e-9 * grid.max_spacing() * grid.max_spacing();
    for (size_t k = 0; k < in.size(); ++k) {
      const Vec p = grid.point(k);
      if (hull.size() == 1) {
        mask[k] = std::abs(p(0) - hull[0].first) < 1e-12 && std::abs(p(1) - hull[0].second) < 1e-12;
        continue;
      }
      if (hull.size() == 2) {
        const auto& a = hull[0];
        const auto& b = hull[1];
        const double c = cross(a.first, a.second, b.first, b.second, p(0), p(1));
        const double dot = (p(0) - a.first) * (b.first - a.first) + (p(1) - a.second) * (b.second - a.second);
        const double len2 = (b.first - a.first) * (b.first - a.first) + (b.second - a.second) * (b.second - a.second);
        mask[k] = std::abs(c) <= eps && dot >= -eps && dot <= len2 + eps;
        continue;
      }
      bool inside = true;
      for (size_t i = 0; i < hull.size() && inside; ++i) {
        const auto& a = hull[i];
        const auto& b = hull[(i + 1) % hull.size()];
        inside = cross(a.first, a.second, b.first, b.second, p(0), p(1)) >= -eps;
      }
      mask[k] = inside;
    }
    return mask;
  }
  // Dimension 3: biconjugate of the domain indicator vanishes exactly on the hull
  // up to the resolution of the dual directions.
  std::vector<double> ind(in.size());
  for (size_t k = 0; k < in.size(); ++k) ind[k] = in[k] ? 0.0 : kInf;
  const auto back = conjugate(conjugate(GridFunction(grid, ind), dual).function, grid).function;
  for (size_t k = 0; k < in.size(); ++k) mask[k] = back.at(k) <= 1e-9;
  return mask;
}

}  // namespace

}  // namespace fenchel

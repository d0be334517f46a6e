#include "fenchel/lp.hpp"

#include <cmath>
#include <stdexcept>

namespace fenchel::lp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotEps = 1e-11;
constexpr double kCostEps = 1e-10;
constexpr double kFeasEps = 1e-9;
constexpr int kMaxIterations = 200000;

// x_j = offset_j + sum coef * y_col over nonnegative tableau columns.
struct VarMap {
  double offset = 0.0;
  int col_plus = -1;
  double coef_plus = 1.0;
  int col_minus = -1;
};

class Tableau {
 public:
  Tableau(int rows, int cols) : m_(rows), n_(cols), t_(Mat::Zero(rows + 1, cols + 1)), basis_(rows, -1) {}

  double& at(int i, int j) { return t_(i, j); }
  double& rhs(int i) { return t_(i, n_); }
  double& cost(int j) { return t_(m_, j); }
  int& basis(int i) { return basis_[static_cast<size_t>(i)]; }

  void pivot(int r, int c) {
    const double p = t_(r, c);
    t_.row(r) /= p;
    for (int i = 0; i <= m_; ++i) {
      if (i == r) continue;
      const double f = t_(i, c);
      if (f != 0.0) t_.row(i) -= f * t_.row(r);
    }
    basis_[static_cast<size_t>(r)] = c;
  }

  // Returns false when unbounded. Columns >= allowed_cols never enter.
  bool run(int allowed_cols) {
    for (int iter = 0; iter < kMaxIterations; ++iter) {
      int enter = -1;
      for (int j = 0; j < allowed_cols; ++j) {
        if (t_(m_, j) < -kCostEps) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best = kInf;
      for (int i = 0; i < m_; ++i) {
        const double a = t_(i, enter);
        if (a <= kPivotEps) continue;
        const double ratio = t_(i, n_) / a;
        if (leave < 0 || ratio < best - 1e-14 ||
            (std::abs(ratio - best) <= 1e-14 && basis_[static_cast<size_t>(i)] < basis_[static_cast<size_t>(leave)])) {
          best = ratio;
          leave = i;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
    throw std::runtime_error("simplex iteration limit exceeded");
  }

  int m_, n_;
  Mat t_;
  std::vector<int> basis_;
};

}  // namespace

Problem::Problem(int num_vars)
    : n_(num_vars),
      lower_(static_cast<size_t>(num_vars), -kInf),
      upper_(static_cast<size_t>(num_vars), kInf),
      c_(Vec::Zero(num_vars)) {}

void Problem::set_bounds(int j, double lower, double upper) {
  lower_[static_cast<size_t>(j)] = lower;
  upper_[static_cast<size_t>(j)] = upper;
}

void Problem::add_le(const Vec& row, double rhs) {
  require_dim(row, n_, "lp row");
  rows_.push_back({row, rhs, false});
}

void Problem::add_eq(const Vec& row, double rhs) {
  require_dim(row, n_, "lp row");
  rows_.push_back({row, rhs, true});
}

void Problem::minimize(const Vec& c) {
  require_dim(c, n_, "lp objective");
  c_ = c;
  maximize_ = false;
}

void Problem::maximize(const Vec& c) {
  require_dim(c, n_, "lp objective");
  c_ = c;
  maximize_ = true;
}

Result Problem::solve() const {
  // Variable substitution onto nonnegative columns.
  std::vector<VarMap> map(static_cast<size_t>(n_));
  int ny = 0;
  std::vector<Row> rows = rows_;
  for (int j = 0; j < n_; ++j) {
    auto& vm = map[static_cast<size_t>(j)];
    const double lo = lower_[static_cast<size_t>(j)];
    const double hi = upper_[static_cast<size_t>(j)];
    if (std::isfinite(lo) && std::isfinite(hi) && hi < lo - kFeasEps) return {Status::Infeasible, {}, 0.0};
    if (std::isfinite(lo)) {
      vm.offset = lo;
      vm.col_plus = ny++;
      if (std::isfinite(hi)) {
        Vec r = Vec::Zero(n_);
        r(j) = 1.0;
        rows.push_back({r, hi, false});
      }
    } else if (std::isfinite(hi)) {
      vm.offset = hi;
      vm.col_plus = ny++;
      vm.coef_plus = -1.0;
    } else {
      vm.col_plus = ny++;
      vm.col_minus = ny++;
    }
  }

  const int m = static_cast<int>(rows.size());
  int ns = 0;
  for (const auto& r : rows) ns += r.equality ? 0 : 1;
  const int ncols = ny + ns + m;  // structural, slack, artificial
  Tableau tab(m, ncols);

  int slack = ny;
  for (int i = 0; i < m; ++i) {
    const auto& r = rows[static_cast<size_t>(i)];
    double b = r.b;
    Vec coef = Vec::Zero(ny);
    for (int j = 0; j < n_; ++j) {
      const double a = r.a(j);
      if (a == 0.0) continue;
      const auto& vm = map[static_cast<size_t>(j)];
      b -= a * vm.offset;
      coef(vm.col_plus) += a * vm.coef_plus;
      if (vm.col_minus >= 0) coef(vm.col_minus) -= a;
    }
    double sign = b < 0 ? -1.0 : 1.0;
    for (int j = 0; j < ny; ++j) tab.at(i, j) = sign * coef(j);
    if (!r.equality) tab.at(i, slack++) = sign;
    tab.at(i, ny + ns + i) = 1.0;
    tab.rhs(i) = sign * b;
    tab.basis(i) = ny + ns + i;
  }

  // Phase 1: minimize the sum of artificials.
  for (int j = 0; j <= ncols; ++j) {
    double s = 0.0;
    if (j < ny + ns || j == ncols) {
      for (int i = 0; i < m; ++i) s += tab.t_(i, j);
    }
    tab.t_(m, j) = -s;
  }
  tab.run(ny + ns);
  double scale = 1.0;
  for (const auto& r : rows) scale = std::max(scale, std::abs(r.b));
  if (-tab.t_(m, ncols) > kFeasEps * scale) return {Status::Infeasible, {}, 0.0};

  // Drive artificials out of the basis where possible.
  for (int i = 0; i < m; ++i) {
    if (tab.basis(i) < ny + ns) continue;
    int best = -1;
    double bestv = kPivotEps * 10;
    for (int j = 0; j < ny + ns; ++j) {
      if (std::abs(tab.at(i, j)) > bestv) {
        bestv = std::abs(tab.at(i, j));
        best = j;
      }
    }
    if (best >= 0) tab.pivot(i, best);
  }

  // Phase 2.
  Vec cy = Vec::Zero(ncols);
  const double osign = maximize_ ? -1.0 : 1.0;
  for (int j = 0; j < n_; ++j) {
    const double cj = osign * c_(j);
    const auto& vm = map[static_cast<size_t>(j)];
    cy(vm.col_plus) += cj * vm.coef_plus;
    if (vm.col_minus >= 0) cy(vm.col_minus) -= cj;
  }
  for (int j = 0; j <= ncols; ++j) {
    double v = j < ncols ? cy(j) : 0.0;
    for (int i = 0; i < m; ++i) v -= cy(tab.basis(i)) * tab.t_(i, j);
    tab.t_(m, j) = v;
  }
  if (!tab.run(ny + ns)) return {Status::Unbounded, {}, 0.0};

  Vec y = Vec::Zero(ncols);
  for (int i = 0; i < m; ++i) y(tab.basis(i)) = tab.rhs(i);
  Vec x(n_);
  for (int j = 0; j < n_; ++j) {
    const auto& vm = map[static_cast<size_t>(j)];
    double v = vm.offset + vm.coef_plus * y(vm.col_plus);
    if (vm.col_minus >= 0) v -= y(vm.col_minus);
    x(j) = v;
  }
  Result res;
  res.status = Status::Optimal;
  res.value = c_.dot(x);
  res.x = std::move(x);
  return res;
}

}  // namespace fenchel::lp

#pragma once

#include <limits>
#include <vector>

#include "fenchel/linalg.hpp"

namespace fenchel::lp {

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
  Status status = Status::Infeasible;
  Vec x;               // primal solution (valid when Optimal)
  double value = 0.0;  // objective value in the caller's sense (min or max)

  [[nodiscard]] bool optimal() const { return status == Status::Optimal; }
};

/// Dense linear program over free (or bounded) real variables, solved by a
/// two-phase tableau simplex with Bland's anti-cycling rule. Sized for the
/// small programs that arise from polyhedra in dimension <= 8.
class Problem {
 public:
  explicit Problem(int num_vars);

  [[nodiscard]] int num_vars() const { return n_; }

  void set_bounds(int j, double lower, double upper);
  void set_lower(int j, double lower) { lower_[static_cast<size_t>(j)] = lower; }
  void set_upper(int j, double upper) { upper_[static_cast<size_t>(j)] = upper; }

  void add_le(const Vec& row, double rhs);
  void add_ge(const Vec& row, double rhs) { add_le(-row, -rhs); }
  void add_eq(const Vec& row, double rhs);

  void minimize(const Vec& c);
  void maximize(const Vec& c);

  [[nodiscard]] Result solve() const;

 private:
  struct Row {
    Vec a;
    double b;
    bool equality;
  };
  int n_;
  std::vector<double> lower_, upper_;
  std::vector<Row> rows_;
  Vec c_;
  bool maximize_ = false;
};

}  // namespace fenchel::lp

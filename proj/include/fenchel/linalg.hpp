#pragma once

#include <Eigen/Dense>

#include <initializer_list>
#include <string>
#include <vector>

#include "fenchel/errors.hpp"

namespace fenchel {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Absolute tolerance for membership and comparison of polyhedral objects
/// whose halfspace normals are normalized to unit Euclidean length.
inline constexpr double kTol = 1e-9;

inline Vec make_vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

inline Vec make_vec(const std::vector<double>& xs) {
  return Eigen::Map<const Vec>(xs.data(), static_cast<Eigen::Index>(xs.size()));
}

inline std::vector<double> to_std(const Vec& v) { return {v.data(), v.data() + v.size()}; }

inline double norm1(const Vec& v) { return v.lpNorm<1>(); }
inline double norm_inf(const Vec& v) { return v.size() == 0 ? 0.0 : v.lpNorm<Eigen::Infinity>(); }

inline void require_dim(const Vec& x, Eigen::Index dim, const char* what) {
  if (x.size() != dim) {
    throw DimensionError(std::string(what) + ": expected dimension " + std::to_string(dim) +
                         ", got " + std::to_string(x.size()));
  }
}

/// Rounds values within 1e-11 of an integer to that integer and flushes tiny
/// magnitudes to zero. Used on outputs of the enumeration routines so that
/// exact inputs give exact-looking outputs.
inline double clean(double v) {
  double r = std::round(v);
  if (std::abs(v - r) < 1e-11) return r == 0.0 ? 0.0 : r;
  return v;
}

inline Vec clean(Vec v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = clean(v(i));
  return v;
}

}  // namespace fenchel

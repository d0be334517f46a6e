#pragma once

#include <charconv>
#include <cmath>
#include <compare>
#include <limits>
#include <string>

namespace fenchel {

/// Extended real number: a finite double, +inf or -inf.
///
/// Addition follows the convention +inf + (-inf) = +inf, and nonnegative
/// scaling follows 0 * (+inf) = +inf, so sums of extended-valued functions
/// never produce NaN.
class ExtReal {
 public:
  constexpr ExtReal() = default;
  constexpr ExtReal(double v) : v_(v) {}  // NOLINT: implicit by design of the arithmetic

  static constexpr ExtReal pos_inf() { return ExtReal(std::numeric_limits<double>::infinity()); }
  static constexpr ExtReal neg_inf() { return ExtReal(-std::numeric_limits<double>::infinity()); }

  [[nodiscard]] constexpr double value() const { return v_; }
  [[nodiscard]] bool is_finite() const { return std::isfinite(v_); }
  [[nodiscard]] bool is_pos_inf() const { return std::isinf(v_) && v_ > 0; }
  [[nodiscard]] bool is_neg_inf() const { return std::isinf(v_) && v_ < 0; }

  friend ExtReal operator+(ExtReal a, ExtReal b) {
    if (a.is_pos_inf() || b.is_pos_inf()) return pos_inf();
    return ExtReal(a.v_ + b.v_);
  }
  friend ExtReal operator-(ExtReal a) { return ExtReal(-a.v_); }
  friend ExtReal operator-(ExtReal a, ExtReal b) { return a + (-b); }

  /// lambda * a for lambda >= 0, with 0 * (+inf) = +inf.
  [[nodiscard]] ExtReal scaled(double lambda) const {
    if (is_pos_inf()) return pos_inf();
    if (is_neg_inf()) return lambda == 0.0 ? ExtReal(0.0) : neg_inf();
    return ExtReal(lambda * v_);
  }

  friend constexpr bool operator==(ExtReal a, ExtReal b) { return a.v_ == b.v_; }
  friend constexpr auto operator<=>(ExtReal a, ExtReal b) { return a.v_ <=> b.v_; }

 private:
  double v_ = 0.0;
};

/// Shortest round-trip decimal text; infinities print as "inf" / "-inf".
inline std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  if (v == 0.0) return "0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::string to_string(ExtReal x) { return format_number(x.value()); }

}  // namespace fenchel

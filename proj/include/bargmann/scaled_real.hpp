#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace bargmann {

/// A real number carried as sign and natural log of its magnitude. Used for
/// series coefficients and norm terms that leave the double exponent range.
struct SignedLog {
  double log_abs = -std::numeric_limits<double>::infinity();
  int sign = 0;

  static SignedLog of(double x) {
    if (x == 0.0) return {};
    return {std::log(std::abs(x)), x > 0 ? 1 : -1};
  }
  static SignedLog from_log(double log_abs, int sign) {
    if (sign == 0) return {};
    return {log_abs, sign};
  }

  bool is_zero() const { return sign == 0; }
  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }
};

inline SignedLog operator*(SignedLog a, SignedLog b) {
  if (a.is_zero() || b.is_zero()) return {};
  return {a.log_abs + b.log_abs, a.sign * b.sign};
}

inline SignedLog operator+(SignedLog a, SignedLog b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.log_abs < b.log_abs) std::swap(a, b);
  const double ratio = std::exp(b.log_abs - a.log_abs);
  const double mantissa = a.sign + b.sign * ratio;
  if (mantissa == 0.0) return {};
  return {a.log_abs + std::log(std::abs(mantissa)), mantissa > 0 ? 1 : -1};
}

/// log(exp(a) + exp(b)) for magnitudes; -inf acts as zero.
inline double log_add(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

}  // namespace bargmann

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace bargmann {

/// Symmetric tridiagonal eigenvalues by Sturm-sequence bisection.
class SturmBisection {
 public:
  SturmBisection(std::span<const double> diag, std::span<const double> offdiag)
      : diag_(diag.begin(), diag.end()), off_sq_(offdiag.size()) {
    if (diag.empty()) throw std::invalid_argument("empty tridiagonal matrix");
    if (offdiag.size() + 1 != diag.size())
      throw std::invalid_argument("off-diagonal length must be dimension - 1");
    lo_ = std::numeric_limits<double>::infinity();
    hi_ = -lo_;
    double max_off_sq = 0.0;
    for (std::size_t i = 0; i < diag_.size(); ++i) {
      const double left = i > 0 ? std::abs(offdiag[i - 1]) : 0.0;
      const double right = i < offdiag.size() ? std::abs(offdiag[i]) : 0.0;
      lo_ = std::min(lo_, diag_[i] - left - right);
      hi_ = std::max(hi_, diag_[i] + left + right);
    }
    for (std::size_t i = 0; i < offdiag.size(); ++i) {
      off_sq_[i] = offdiag[i] * offdiag[i];
      max_off_sq = std::max(max_off_sq, off_sq_[i]);
    }
    const double scale = std::max(std::abs(lo_), std::abs(hi_));
    pivmin_ = std::numeric_limits<double>::min() * std::max(1.0, max_off_sq);
    lo_ -= 2.0 * std::numeric_limits<double>::epsilon() * scale + pivmin_;
    hi_ += 2.0 * std::numeric_limits<double>::epsilon() * scale + pivmin_;
  }

  std::size_t dimension() const { return diag_.size(); }
  double lower_bound() const { return lo_; }
  double upper_bound() const { return hi_; }

  /// Number of eigenvalues strictly below x.
  std::size_t count_below(double x) const {
    std::size_t count = 0;
    double q = diag_[0] - x;
    if (std::abs(q) < pivmin_) q = -pivmin_;
    if (q < 0) ++count;
    for (std::size_t i = 1; i < diag_.size(); ++i) {
      q = diag_[i] - x - off_sq_[i - 1] / q;
      if (std::abs(q) < pivmin_) q = -pivmin_;
      if (q < 0) ++count;
    }
    return count;
  }

  /// The index-th smallest eigenvalue (0-based).
  double eigenvalue(std::size_t index) const {
    if (index >= diag_.size()) throw std::out_of_range("eigenvalue index beyond dimension");
    double lo = lo_;
    double hi = hi_;
    const double eps = std::numeric_limits<double>::epsilon();
    for (int it = 0; it < 2000; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (hi - lo <= 2.0 * eps * std::max(std::abs(lo), std::abs(hi)) + pivmin_ || mid <= lo || mid >= hi) break;
      if (count_below(mid) > index)
        hi = mid;
      else
        lo = mid;
    }
    return 0.5 * (lo + hi);
  }

  /// Lowest m eigenvalues, ascending.
  std::vector<double> lowest(std::size_t m) const {
    if (m > diag_.size()) throw std::invalid_argument("requested more eigenvalues than the dimension");
    std::vector<double> out(m);
    for (std::size_t i = 0; i < m; ++i) out[i] = eigenvalue(i);
    return out;
  }

 private:
  std::vector<double> diag_;
  std::vector<double> off_sq_;
  double lo_ = 0.0;
  double hi_ = 0.0;
  double pivmin_ = 0.0;
};

}  // namespace bargmann

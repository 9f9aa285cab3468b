#pragma once

#include "bargmann/rational.hpp"

#include <cmath>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace bargmann {

enum class SectorKind { kappa, q };

/// Bargmann index of an irreducible sector.
///
/// kappa sectors (two-mode oscillator) carry kappa in {1/2, 1, 3/2, ...};
/// basis state |kappa,n> holds n+2kappa-1 quanta in mode 1 and n in mode 2.
///
/// q sectors of order k (single-mode k-th harmonic generation) carry
/// q = (jk+1)/k^2 for j = 0..k-1; basis state |q,n> is the Fock state with
/// m = kn + j quanta.
///
/// Both cases expose an integer `offset()` (2kappa-1, resp. j) so that
/// matrix elements and norms reduce to integer arithmetic.
class SectorLabel {
 public:
  static SectorLabel kappa(const Rational& value) {
    const Rational twice = 2 * value;
    if (value <= 0 || !is_integer(twice))
      throw std::invalid_argument("kappa must be a positive half-integer, got " + to_string(value));
    return SectorLabel(SectorKind::kappa, 0, value, static_cast<std::int64_t>(twice) - 1);
  }

  static SectorLabel q(int order, const Rational& value) {
    if (order < 1) throw std::invalid_argument("harmonic order k must be >= 1");
    const Rational k = order;
    // k(q - 1/k^2) must be an integer j in [0, k).
    const Rational j = k * value - Rational(1) / k;
    if (!is_integer(j) || j < 0 || j >= k)
      throw std::invalid_argument("q = " + to_string(value) + " is not a Bargmann index for k = " +
                                  std::to_string(order));
    return SectorLabel(SectorKind::q, order, value, static_cast<std::int64_t>(j));
  }

  static SectorLabel q_index(int order, int j) {
    if (order < 1) throw std::invalid_argument("harmonic order k must be >= 1");
    return q(order, make_rational(std::int64_t{j} * order + 1, std::int64_t{order} * order));
  }

  SectorKind kind() const { return kind_; }
  const Rational& value() const { return value_; }
  double to_double() const { return rational_to<double>(value_); }

  /// k for q sectors; 0 for kappa sectors.
  int order() const { return order_; }

  /// Degree k of the deformed algebra the sector represents (2 for su(1,1)).
  int algebra_degree() const { return kind_ == SectorKind::kappa ? 2 : order_; }

  std::int64_t offset() const { return offset_; }

  std::string str() const { return to_string(value_); }

  friend bool operator==(const SectorLabel& a, const SectorLabel& b) {
    return a.kind_ == b.kind_ && a.order_ == b.order_ && a.value_ == b.value_;
  }
  friend bool operator<(const SectorLabel& a, const SectorLabel& b) {
    if (a.kind_ != b.kind_) return a.kind_ < b.kind_;
    if (a.order_ != b.order_) return a.order_ < b.order_;
    return a.value_ < b.value_;
  }

 private:
  SectorLabel(SectorKind kind, int order, Rational value, std::int64_t offset)
      : kind_(kind), order_(order), value_(std::move(value)), offset_(offset) {}

  SectorKind kind_;
  int order_;
  Rational value_;
  std::int64_t offset_;
};

namespace detail {

// Exact product first*(first+1)*...*(first+count-1), rounded once.
inline double rising_product(std::uint64_t first, int count) {
  __extension__ using u128 = unsigned __int128;
  u128 acc = 1;
  for (int i = 0; i < count; ++i) {
    if (__builtin_mul_overflow(acc, static_cast<u128>(first + static_cast<std::uint64_t>(i)), &acc)) {
      BigInt big = 1;
      for (int t = 0; t < count; ++t) big *= first + static_cast<std::uint64_t>(t);
      return big.convert_to<double>();
    }
  }
  return static_cast<double>(acc);
}

inline BigInt rising_product_exact(std::uint64_t first, int count) {
  BigInt acc = 1;
  for (int i = 0; i < count; ++i) acc *= first + static_cast<std::uint64_t>(i);
  return acc;
}

}  // namespace detail

/// Integer D_n with sector Hamiltonian diagonal omega * D_n:
/// 2n + 2kappa - 1 (two-mode), kn + j (order-k sectors).
inline std::int64_t diagonal_index(const SectorLabel& s, std::uint64_t n) {
  const auto nn = static_cast<std::int64_t>(n);
  if (s.kind() == SectorKind::kappa) return 2 * nn + s.offset();
  return s.order() * nn + s.offset();
}

/// Squared raising amplitude w_n between n and n+1, up to the algebra's
/// normalisation: (n+1)(n+2kappa) for kappa sectors, (m+1)...(m+k) with
/// m = kn + j for q sectors. Sector Hamiltonian off-diagonal is g*sqrt(w_n).
inline double raising_weight(const SectorLabel& s, std::uint64_t n) {
  if (s.kind() == SectorKind::kappa) {
    const auto a = static_cast<double>(n + 1);
    const auto b = static_cast<double>(n + 1 + static_cast<std::uint64_t>(s.offset()));
    return a * b;
  }
  const auto k = static_cast<std::uint64_t>(s.order());
  return detail::rising_product(k * n + static_cast<std::uint64_t>(s.offset()) + 1, s.order());
}

inline BigInt raising_weight_exact(const SectorLabel& s, std::uint64_t n) {
  if (s.kind() == SectorKind::kappa)
    return BigInt(n + 1) * BigInt(n + 1 + static_cast<std::uint64_t>(s.offset()));
  const auto k = static_cast<std::uint64_t>(s.order());
  return detail::rising_product_exact(k * n + static_cast<std::uint64_t>(s.offset()) + 1, s.order());
}

/// log mu_n, where mu_n = |<basis n | z^n>|^2 normalisation:
/// (n+2kappa-1)! n! for kappa sectors, (kn+j)! for q sectors.
inline double log_basis_weight(const SectorLabel& s, std::uint64_t n) {
  const auto nd = static_cast<double>(n);
  if (s.kind() == SectorKind::kappa)
    return std::lgamma(nd + static_cast<double>(s.offset()) + 1.0) + std::lgamma(nd + 1.0);
  return std::lgamma(static_cast<double>(s.order()) * nd + static_cast<double>(s.offset()) + 1.0);
}

}  // namespace bargmann

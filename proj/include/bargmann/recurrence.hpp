#pragma once

#include "bargmann/core.hpp"
#include "bargmann/errors.hpp"
#include "bargmann/scaled_real.hpp"
#include "bargmann/sector.hpp"

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace bargmann {

/// K_{n+1} + A_n K_n + B_n K_{n-1} = 0.
template <class G>
concept ThreeTermCoefficients = requires(const G& g, std::size_t n) {
  { g.A(n) } -> std::convertible_to<double>;
  { g.B(n) } -> std::convertible_to<double>;
};

/// A_n ~ a n^alpha, B_n ~ b n^beta.
struct AsymptoticProfile {
  double a = 0.0;
  double alpha = 0.0;
  double b = 0.0;
  double beta = 0.0;
};

/// Recurrence coefficients of the Bargmann series of one sector at energy E:
///   A_n = (omega D_n - E) / (g w_n),  B_n = 1 / w_n
/// with D_n the sector's diagonal index and w_n its raising weight.
class CoeffGenerator {
 public:
  CoeffGenerator(const ModelSpec& model, const SectorLabel& sector, double E)
      : model_(model), sector_(sector), E_(E) {
    model_.validate();
    detail::require_compatible(model_, sector_);
    if (model_.g == 0.0) throw domain_error("recurrence degenerates at g = 0; use the closed form");
    if (!std::isfinite(E_)) throw std::invalid_argument("energy must be finite");
  }

  double A(std::size_t n) const {
    return (model_.omega * static_cast<double>(diagonal_index(sector_, n)) - E_) /
           (model_.g * raising_weight(sector_, n));
  }
  double B(std::size_t n) const { return 1.0 / raising_weight(sector_, n); }

  AsymptoticProfile profile() const {
    const double w = model_.omega, g = model_.g;
    if (model_.kind == ModelKind::two_mode) return {2.0 * w / g, -1.0, 1.0, -2.0};
    const int k = model_.order();
    const double kk = std::pow(static_cast<double>(k), k);
    return {w * static_cast<double>(k) / (g * kk), static_cast<double>(1 - k), 1.0 / kk, static_cast<double>(-k)};
  }

  /// log mu_n, the sector basis weight.
  double log_weight(std::size_t n) const { return log_basis_weight(sector_, n); }

  /// Exponent w making (|K_n| (n!)^w)^{1/n} tend to a finite nonzero limit:
  /// -max(alpha, beta/2), i.e. 0 for k = 1, 1 for k = 2 and two_mode, k/2 for k >= 3.
  double growth_weight() const {
    const auto p = profile();
    return -std::max(p.alpha, p.beta / 2.0);
  }

  CoeffGenerator with_energy(double E) const { return CoeffGenerator(model_, sector_, E); }

  const ModelSpec& model() const { return model_; }
  const SectorLabel& sector() const { return sector_; }
  double energy() const { return E_; }

 private:
  ModelSpec model_;
  SectorLabel sector_;
  double E_ = 0.0;
};

static_assert(ThreeTermCoefficients<CoeffGenerator>);

inline CoeffGenerator coeffs_k_harmonic(int k, const SectorLabel& sector, double omega, double g, double E) {
  return CoeffGenerator(ModelSpec::k_harmonic(k, omega, g), sector, E);
}

inline CoeffGenerator coeffs_two_mode(const SectorLabel& sector, double omega, double g, double E) {
  return CoeffGenerator(ModelSpec::two_mode(omega, g), sector, E);
}

inline CoeffGenerator make_generator(const ModelSpec& model, const SectorLabel& sector, double E) {
  return CoeffGenerator(model, sector, E);
}

/// K_0..K_{n_max} in sign/log-magnitude form.
struct SeriesSolution {
  double energy = 0.0;
  std::vector<double> log_mags;
  std::vector<int> signs;
  // Leading terms on which a long-double rerun agrees to 1e-6 relative;
  // beyond this point the sequence is rounding noise amplified by the
  // recursion (relevant when a minimal solution is being followed).
  std::size_t resolved_terms = 0;

  std::size_t n_max() const { return log_mags.empty() ? 0 : log_mags.size() - 1; }
  SignedLog term(std::size_t n) const { return SignedLog::from_log(log_mags[n], signs[n]); }
};

namespace detail {

// Mantissa pair plus a shared natural-log exponent, rescaled when it drifts.
template <class Real>
struct ScaledPair {
  Real prev, cur;
  double log_scale = 0.0;

  void rescale() {
    using std::abs;
    using std::log;
    const Real m = std::max(abs(prev), abs(cur));
    if (m == Real(0)) return;
    if (m > Real(1e100) || m < Real(1e-100)) {
      prev /= m;
      cur /= m;
      log_scale += static_cast<double>(log(m));
    }
  }
};

inline void push_term(SeriesSolution& s, double mantissa, double log_scale) {
  if (mantissa == 0.0) {
    s.log_mags.push_back(-std::numeric_limits<double>::infinity());
    s.signs.push_back(0);
  } else {
    s.log_mags.push_back(std::log(std::abs(mantissa)) + log_scale);
    s.signs.push_back(mantissa > 0 ? 1 : -1);
  }
}

}  // namespace detail

/// Forward recursion from (K_0, K_1).
template <ThreeTermCoefficients G>
SeriesSolution forward_recursion(const G& gen, std::size_t n_max, double K0, double K1) {
  if (n_max < 2) throw std::invalid_argument("forward recursion needs n_max >= 2");
  SeriesSolution s;
  if constexpr (requires { gen.energy(); }) s.energy = gen.energy();
  s.log_mags.reserve(n_max + 1);
  s.signs.reserve(n_max + 1);

  detail::ScaledPair<double> d{K0, K1};
  detail::ScaledPair<long double> l{K0, K1};
  detail::push_term(s, K0, 0.0);
  detail::push_term(s, K1, 0.0);
  bool agree = true;
  s.resolved_terms = 2;
  for (std::size_t n = 1; n < n_max; ++n) {
    const double a = gen.A(n), b = gen.B(n);
    const double next = -a * d.cur - b * d.prev;
    d.prev = d.cur;
    d.cur = next;
    d.rescale();
    detail::push_term(s, d.cur, d.log_scale);

    const long double lnext = -static_cast<long double>(a) * l.cur - static_cast<long double>(b) * l.prev;
    l.prev = l.cur;
    l.cur = lnext;
    l.rescale();
    if (agree) {
      // Compare the pair (K_{n}, K_{n+1}) at a common scale.
      const long double shift = std::exp(static_cast<long double>(d.log_scale - l.log_scale));
      const long double dp = static_cast<long double>(d.prev) * shift, dc = static_cast<long double>(d.cur) * shift;
      const long double size = std::max(std::abs(l.prev), std::abs(l.cur));
      const long double err = std::max(std::abs(dp - l.prev), std::abs(dc - l.cur));
      if (size == 0.0L || err <= 1e-6L * size)
        s.resolved_terms = n + 2;
      else
        agree = false;
    }
  }
  return s;
}

/// The physical single-ended sequence K_0 = 1, K_1 = -A_0.
template <ThreeTermCoefficients G>
SeriesSolution forward_recursion(const G& gen, std::size_t n_max) {
  return forward_recursion(gen, n_max, 1.0, -gen.A(0));
}

namespace detail {

inline constexpr double cf_tiny = 1e-300;

template <ThreeTermCoefficients G>
double cf_bottom_up(const G& gen, std::size_t n, std::size_t depth, double* top_denominator, double* top_scale) {
  // R_m = -B_{m+1} / (A_{m+1} + R_{m+1}), R_{n+depth} = 0.
  double r = 0.0;
  double den = 1.0, scale = 1.0;
  for (std::size_t m = n + depth; m-- > n;) {
    const double a = gen.A(m + 1);
    den = a + r;
    scale = std::abs(a) + std::abs(r);
    if (std::abs(den) < cf_tiny) den = cf_tiny;
    r = -gen.B(m + 1) / den;
  }
  if (top_denominator) *top_denominator = den;
  if (top_scale) *top_scale = scale;
  return r;
}

}  // namespace detail

struct CFValue {
  double value = 0.0;
  std::size_t depth = 0;
  bool at_pole = false;  // top-level denominator vanishes; value is not meaningful
};

/// R_n = K_{n+1}/K_n of the minimal solution, by bottom-up evaluation from a
/// depth doubled from 8 until two successive values agree to `tol` relatively.
template <ThreeTermCoefficients G>
CFValue continued_fraction_R(const G& gen, std::size_t n, double tol = 1e-14, std::size_t max_depth = 10000) {
  if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
  double den = 0.0, scale = 0.0;
  std::size_t depth = 8;
  double prev = detail::cf_bottom_up(gen, n, depth, &den, &scale);
  while (true) {
    const std::size_t next_depth = std::min(2 * depth, max_depth);
    if (next_depth == depth) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "continued fraction did not converge by depth " << max_depth << " (last value " << prev << ")";
      throw convergence_error(msg.str());
    }
    const double cur = detail::cf_bottom_up(gen, n, next_depth, &den, &scale);
    const double diff = std::abs(cur - prev);
    if (diff <= tol * std::abs(cur) || diff == 0.0) {
      const bool pole = std::abs(den) <= 1e-12 * scale || !std::isfinite(cur);
      return {cur, next_depth, pole};
    }
    if (next_depth == max_depth) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "continued fraction did not converge by depth " << max_depth << ": last estimates " << prev << ", "
          << cur;
      throw convergence_error(msg.str());
    }
    prev = cur;
    depth = next_depth;
  }
}

struct FValue {
  double value = 0.0;
  bool at_pole = false;
  std::size_t depth = 0;
};

/// F(E) = R_0(E) + A_0(E); zeros are eigenvalues.
template <ThreeTermCoefficients G>
FValue F_of_E(const G& gen, double tol = 1e-14, std::size_t max_depth = 10000) {
  const auto r = continued_fraction_R(gen, 0, tol, max_depth);
  return {r.value + gen.A(0), r.at_pole, r.depth};
}

/// The minimal solution normalised to K_0 = 1, built from its continued
/// fraction ratios; stable where forward recursion is not.
template <ThreeTermCoefficients G>
SeriesSolution minimal_solution(const G& gen, std::size_t n_max, double tol = 1e-14) {
  if (n_max < 2) throw std::invalid_argument("minimal solution needs n_max >= 2");
  // Backward sweep from a tail that is long enough for R_{n_max} to have converged.
  const auto tail = continued_fraction_R(gen, n_max, tol);
  std::vector<double> ratios(n_max);
  double r = tail.value;
  for (std::size_t m = n_max; m-- > 0;) {
    double den = gen.A(m + 1) + r;
    if (std::abs(den) < detail::cf_tiny) den = detail::cf_tiny;
    r = -gen.B(m + 1) / den;
    ratios[m] = r;
  }
  SeriesSolution s;
  if constexpr (requires { gen.energy(); }) s.energy = gen.energy();
  s.log_mags.push_back(0.0);
  s.signs.push_back(1);
  for (std::size_t n = 0; n < n_max; ++n) {
    const SignedLog next = s.term(n) * SignedLog::of(ratios[n]);
    s.log_mags.push_back(next.log_abs);
    s.signs.push_back(next.sign);
  }
  s.resolved_terms = n_max + 1;
  return s;
}

// ---------------------------------------------------------------------------
// Classification

enum class Verdict { minimal_exists_distinct_rates, minimal_exists_equal_roots, no_minimal_dominant_pair };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::minimal_exists_distinct_rates: return "minimal_exists_distinct_rates";
    case Verdict::minimal_exists_equal_roots: return "minimal_exists_equal_roots";
    case Verdict::no_minimal_dominant_pair: return "no_minimal_dominant_pair";
  }
  return "unknown";
}

struct DiagramPoint {
  double x, y;
};

struct ClassificationReport {
  int k = 1;
  DiagramPoint points[3];
  double sigma = 0.0;  // slope P0P1
  double tau = 0.0;    // slope P1P2
  Verdict verdict = Verdict::minimal_exists_distinct_rates;
  std::string limit_formula;
  std::optional<double> predicted_limit;  // absent when it depends on omega and g

  bool minimal_exists() const { return verdict != Verdict::no_minimal_dominant_pair; }
};

/// Newton-Puiseux diagram of A_n ~ n^{-k+1}, B_n ~ n^{-k}: P0 = (0,0),
/// P1 = (1,-k+1), P2 = (2,-k).
inline ClassificationReport classify(int k) {
  if (k < 1) throw std::invalid_argument("harmonic order k must be >= 1");
  ClassificationReport r;
  r.k = k;
  r.points[0] = {0.0, 0.0};
  r.points[1] = {1.0, static_cast<double>(1 - k)};
  r.points[2] = {2.0, static_cast<double>(-k)};
  r.sigma = r.points[1].y - r.points[0].y;
  r.tau = r.points[2].y - r.points[1].y;
  if (r.sigma > r.tau) {
    r.verdict = Verdict::minimal_exists_distinct_rates;
    r.limit_formula = "K_{n+1}/K_n -> -omega/g (dominant), K_{n+1}/K_n ~ -(g/omega) n^{-1} (minimal)";
  } else if (r.sigma == r.tau) {
    r.verdict = Verdict::minimal_exists_equal_roots;
    r.limit_formula = "lim sup (|K_n| n!)^{1/n}";
    r.predicted_limit = 0.0;
  } else {
    r.verdict = Verdict::no_minimal_dominant_pair;
    r.limit_formula = "lim sup (|K_n| (n!)^{k/2})^{1/n} = 1/sqrt(k^k)";
    r.predicted_limit = std::pow(static_cast<double>(k), -0.5 * k);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Growth and normalizability

struct LimsupEstimate {
  std::vector<std::size_t> n;
  std::vector<double> L;  // L_n = (|K_n| (n!)^w)^{1/n}
  double weight = 0.0;
  double limit = 0.0;  // geometric mean over the final quartile
};

inline LimsupEstimate limsup_from_series(const SeriesSolution& s, double weight) {
  LimsupEstimate out;
  out.weight = weight;
  for (std::size_t n = 1; n < s.log_mags.size(); ++n) {
    if (s.signs[n] == 0) continue;
    const auto nd = static_cast<double>(n);
    out.n.push_back(n);
    out.L.push_back(std::exp((s.log_mags[n] + weight * std::lgamma(nd + 1.0)) / nd));
  }
  if (out.L.empty()) throw std::invalid_argument("series has no nonzero terms");
  const std::size_t n_max = s.n_max();
  double acc = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < out.n.size(); ++i)
    if (4 * out.n[i] >= 3 * n_max) {
      acc += std::log(out.L[i]);
      ++count;
    }
  out.limit = count ? std::exp(acc / static_cast<double>(count)) : out.L.back();
  return out;
}

/// L_n from the physical forward recursion with the generator's growth weight.
template <class G>
LimsupEstimate limsup_estimate(const G& gen, std::size_t n_max) {
  return limsup_from_series(forward_recursion(gen, n_max), gen.growth_weight());
}

enum class NormVerdict { converging, diverging, inconclusive };

inline std::string_view to_string(NormVerdict v) {
  switch (v) {
    case NormVerdict::converging: return "converging";
    case NormVerdict::diverging: return "diverging";
    case NormVerdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

struct NormDiagnostic {
  std::vector<double> log_partial_sums;  // over the examined terms
  std::size_t examined_terms = 0;
  NormVerdict verdict = NormVerdict::inconclusive;
  double max_final_ratio = 0.0;  // largest term ratio over the final quartile

  double limit() const { return log_partial_sums.empty() ? 0.0 : std::exp(log_partial_sums.back()); }
};

/// Partial sums of |K_n|^2 mu_n over the resolved part of the series. The final
/// quartile (at least 3 ratios) decides: every ratio < 1 - delta is
/// converging, every ratio >= 1 is diverging, otherwise inconclusive.
inline NormDiagnostic normalizability_from_series(const SeriesSolution& s, const SectorLabel& sector,
                                                  double delta = 0.05) {
  NormDiagnostic out;
  const std::size_t terms = std::min(s.log_mags.size(), std::max<std::size_t>(s.resolved_terms, 4));
  out.examined_terms = terms;
  std::vector<double> log_terms(terms);
  double acc = -std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < terms; ++n) {
    log_terms[n] = s.signs[n] == 0 ? -std::numeric_limits<double>::infinity()
                                   : 2.0 * s.log_mags[n] + log_basis_weight(sector, n);
    acc = log_add(acc, log_terms[n]);
    out.log_partial_sums.push_back(acc);
  }
  const std::size_t last = terms - 1;
  const std::size_t start = std::min(last - std::min<std::size_t>(last, 3), (3 * last) / 4);
  bool all_small = true, all_growing = true;
  std::size_t ratios = 0;
  const double ninf = -std::numeric_limits<double>::infinity();
  out.max_final_ratio = 0.0;
  for (std::size_t n = start; n < last; ++n) {
    if (log_terms[n] == ninf || log_terms[n + 1] == ninf) continue;
    const double lr = log_terms[n + 1] - log_terms[n];
    out.max_final_ratio = std::max(out.max_final_ratio, std::exp(lr));
    if (!(lr < std::log1p(-delta))) all_small = false;
    if (lr < 0.0) all_growing = false;
    ++ratios;
  }
  if (ratios > 0 && all_small)
    out.verdict = NormVerdict::converging;
  else if (ratios > 0 && all_growing)
    out.verdict = NormVerdict::diverging;
  return out;
}

template <class G>
NormDiagnostic normalizability_diagnostic(const G& gen, const SectorLabel& sector, std::size_t n_max,
                                          double delta = 0.05) {
  return normalizability_from_series(forward_recursion(gen, n_max), sector, delta);
}

// ---------------------------------------------------------------------------
// Spectral scan

enum class BracketKind { zero, pole };

struct Bracket {
  double lo = 0.0, hi = 0.0;
  BracketKind kind = BracketKind::pole;
  double refined = 0.0;
  double F_refined = 0.0;
  NormVerdict diagnostic = NormVerdict::inconclusive;
};

struct ScanEigenvalue {
  double E = 0.0;
  double F = 0.0;
  std::size_t depth = 0;
};

struct ScanOptions {
  std::size_t points = 400;
  double cf_tol = 1e-14;
  double scan_tol = 1e-13;    // bracket width, relative to max(1, |E|)
  double zero_tol = 1e-8;     // |F| acceptance at a refined zero
  std::size_t diagnostic_terms = 400;
};

struct SpectrumScan {
  std::vector<double> E_grid;
  std::vector<double> F_values;  // NaN where the evaluation sits on a pole
  std::vector<Bracket> brackets;
  std::vector<ScanEigenvalue> eigenvalues;
};

/// Zeros and poles of F below the generator's energy. The backward
/// denominators q_m = g w_m (A_m + R_m) form a Sturm sequence of the sector
/// Hamiltonian truncated at `depth`: negative q_m with m >= 0 count zeros of
/// F (levels), those with m >= 1 count its poles.
struct SturmCount {
  std::size_t zeros = 0;
  std::size_t poles = 0;
};

inline SturmCount cf_sturm_count(const CoeffGenerator& gen, std::size_t depth) {
  const double orient = gen.model().g > 0 ? 1.0 : -1.0;
  SturmCount c;
  double r = 0.0;
  for (std::size_t m = depth + 1; m-- > 0;) {
    double den = gen.A(m) + r;
    if (std::abs(den) < detail::cf_tiny) den = -detail::cf_tiny;
    if (orient * den < 0) {
      ++c.zeros;
      if (m > 0) ++c.poles;
    }
    if (m > 0) r = -gen.B(m) / den;
  }
  return c;
}

/// Grid evaluation of F, sign-change brackets refined by bisection; a bracket
/// counts as an eigenvalue only if |F| is small at the refined point and the
/// forward series there passes the normalizability diagnostic. Grid cells
/// whose Sturm counts show a zero hidden next to a pole are split until the
/// zero has a sign change of its own.
inline SpectrumScan scan_spectrum(const ModelSpec& model, const SectorLabel& sector, double E_min, double E_max,
                                  const ScanOptions& opt = {}) {
  model.validate();
  detail::require_compatible(model, sector);
  if (!(E_min < E_max)) throw std::invalid_argument("E_min must be below E_max");
  if (opt.points < 2) throw std::invalid_argument("grid needs at least 2 points");
  if (!(opt.cf_tol > 0) || !(opt.scan_tol > 0) || !(opt.zero_tol > 0))
    throw std::invalid_argument("tolerances must be positive");
  if (model.kind != ModelKind::two_mode && !classify(model.order()).minimal_exists())
    throw domain_error("no minimal solution for harmonic order k = " + std::to_string(model.order()) +
                       "; the continued fraction does not define a spectrum");

  constexpr std::size_t count_depth = 256;
  constexpr int max_split = 40;
  const CoeffGenerator base(model, sector, E_min);

  struct Sample {
    double E;
    FValue F;
    SturmCount count;
  };
  auto sample = [&](double E) {
    const auto gen = base.with_energy(E);
    const auto f = F_of_E(gen, opt.cf_tol);
    return Sample{E, f, cf_sturm_count(gen, std::max(f.depth, count_depth))};
  };
  auto sgn = [](const FValue& f) { return f.at_pole ? 0 : (f.value > 0 ? 1 : (f.value < 0 ? -1 : 0)); };

  SpectrumScan scan;
  std::vector<Sample> grid;
  for (std::size_t i = 0; i < opt.points; ++i) {
    const double E = E_min + (E_max - E_min) * static_cast<double>(i) / static_cast<double>(opt.points - 1);
    grid.push_back(sample(E));
    scan.E_grid.push_back(E);
    scan.F_values.push_back(grid.back().F.at_pole ? std::numeric_limits<double>::quiet_NaN()
                                                   : grid.back().F.value);
  }

  auto confirm = [&](Bracket& b, const FValue& f) {
    if (f.at_pole || !(std::abs(f.value) < opt.zero_tol)) return;
    const auto diag = normalizability_diagnostic(base.with_energy(b.refined), sector, opt.diagnostic_terms);
    b.diagnostic = diag.verdict;
    if (diag.verdict == NormVerdict::converging) {
      b.kind = BracketKind::zero;
      scan.eigenvalues.push_back({b.refined, f.value, f.depth});
    }
  };

  // Bisection on the sign of F inside [a, b]; the end with smaller |F| is kept.
  auto refine = [&](const Sample& a, const Sample& b) {
    double lo = a.E, hi = b.E;
    const int s_lo = sgn(a.F);
    for (int it = 0; it < 200; ++it) {
      if (hi - lo <= opt.scan_tol * std::max(1.0, std::abs(lo))) break;
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const auto fm = F_of_E(base.with_energy(mid), opt.cf_tol);
      if (!fm.at_pole && fm.value == 0.0) {
        lo = hi = mid;
        break;
      }
      if (!fm.at_pole && (fm.value > 0 ? 1 : -1) == s_lo)
        lo = mid;
      else
        hi = mid;
    }
    Bracket br{a.E, b.E, BracketKind::pole, 0.0, 0.0};
    const auto f_lo = F_of_E(base.with_energy(lo), opt.cf_tol);
    const auto f_hi = F_of_E(base.with_energy(hi), opt.cf_tol);
    const bool pick_lo = !f_lo.at_pole && (f_hi.at_pole || std::abs(f_lo.value) <= std::abs(f_hi.value));
    br.refined = pick_lo ? lo : hi;
    const auto fr = pick_lo ? f_lo : f_hi;
    br.F_refined = fr.at_pole ? std::numeric_limits<double>::infinity() : fr.value;
    confirm(br, fr);
    scan.brackets.push_back(br);
  };

  auto process = [&](auto&& self, const Sample& a, const Sample& b, int depth) -> void {
    const long zeros = static_cast<long>(b.count.zeros) - static_cast<long>(a.count.zeros);
    const long poles = static_cast<long>(b.count.poles) - static_cast<long>(a.count.poles);
    const bool hidden = zeros > 1 || (zeros == 1 && poles != 0) || (zeros == 1 && sgn(a.F) * sgn(b.F) >= 0);
    if (hidden && depth < max_split && b.E - a.E > opt.scan_tol * std::max(1.0, std::abs(a.E))) {
      const Sample mid = sample(0.5 * (a.E + b.E));
      self(self, a, mid, depth + 1);
      self(self, mid, b, depth + 1);
      return;
    }
    if (sgn(a.F) != 0 && sgn(b.F) != 0 && sgn(a.F) != sgn(b.F)) refine(a, b);
  };

  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (i == 0 && !grid[0].F.at_pole && grid[0].F.value == 0.0) {
      Bracket b{grid[0].E, grid[0].E, BracketKind::pole, grid[0].E, 0.0};
      confirm(b, grid[0].F);
      scan.brackets.push_back(b);
    }
    process(process, grid[i], grid[i + 1], 0);
    if (i + 2 < grid.size() && !grid[i + 1].F.at_pole && grid[i + 1].F.value == 0.0) {
      Bracket b{grid[i + 1].E, grid[i + 1].E, BracketKind::pole, grid[i + 1].E, 0.0};
      confirm(b, grid[i + 1].F);
      scan.brackets.push_back(b);
    }
  }
  return scan;
}

}  // namespace bargmann

#pragma once

#include "bargmann/core.hpp"
#include "bargmann/errors.hpp"
#include "bargmann/scaled_real.hpp"
#include "bargmann/sector.hpp"
#include "bargmann/tridiagonal.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace bargmann {

/// Root equations  sum_{j!=i} p/(z_i - z_j) + beta + gamma/z_i = 0,  i = 1..M.
struct BetheSystem {
  std::size_t degree = 0;
  double pair_coeff = 1.0;    // p
  double linear_coeff = 0.0;  // beta
  double pole_coeff = 0.0;    // gamma

  /// Roots are scale * (roots of the Laguerre polynomial L_M^(alpha)).
  double laguerre_alpha() const { return 2.0 * pole_coeff / pair_coeff - 1.0; }
  double laguerre_scale() const { return -pair_coeff / (2.0 * linear_coeff); }
};

/// Instantiates the root equations of the two-mode (p=1, beta=omega*Lambda/g,
/// gamma=kappa) or squeezed (p=2, beta=omega*Omega/(2g), gamma=2q) sector.
inline BetheSystem bethe_system(const ModelSpec& model, const SectorLabel& sector, std::size_t M) {
  model.validate();
  detail::require_compatible(model, sector);
  if (model.g == 0.0) throw domain_error("root equations need g != 0");
  if (model.kind == ModelKind::two_mode) {
    const double lambda = stability_factor(model).value;
    return {M, 1.0, model.omega * lambda / model.g, sector.to_double()};
  }
  if (model.order() == 2) {
    const double om = stability_factor(model).value;
    return {M, 2.0, model.omega * om / (2.0 * model.g), 2.0 * sector.to_double()};
  }
  throw std::invalid_argument("root equations exist for the two-mode and squeezed models only");
}

/// scale * x_i for the roots x_i of L_M^(alpha), from the eigenvalues of the
/// Jacobi matrix (diagonal 2i+alpha+1, off-diagonal sqrt(i(i+alpha))).
/// Ascending in x; the order in z follows the sign of scale.
inline std::vector<double> laguerre_initial_roots(std::size_t M, double alpha, double scale) {
  if (M == 0) return {};
  if (!(alpha > -1.0)) throw std::invalid_argument("Laguerre parameter alpha must exceed -1");
  std::vector<double> diag(M), off(M - 1);
  for (std::size_t i = 0; i < M; ++i) diag[i] = 2.0 * static_cast<double>(i) + alpha + 1.0;
  for (std::size_t i = 1; i < M; ++i) {
    const auto id = static_cast<double>(i);
    off[i - 1] = std::sqrt(id * (id + alpha));
  }
  auto roots = SturmBisection(diag, off).lowest(M);
  for (auto& r : roots) r *= scale;
  return roots;
}

struct BetheSolution {
  std::vector<double> roots;  // ascending
  std::vector<double> residuals;
  double max_residual = 0.0;
  int iterations = 0;
};

inline std::vector<double> bethe_residuals(const BetheSystem& sys, std::span<const double> z) {
  std::vector<double> f(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    double s = sys.linear_coeff + sys.pole_coeff / z[i];
    for (std::size_t j = 0; j < z.size(); ++j)
      if (j != i) s += sys.pair_coeff / (z[i] - z[j]);
    f[i] = s;
  }
  return f;
}

namespace detail {

inline double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) {
    if (!std::isfinite(x)) return std::numeric_limits<double>::infinity();
    m = std::max(m, std::abs(x));
  }
  return m;
}

inline void check_distinct(std::span<const double> sorted) {
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (std::abs(sorted[i] - sorted[i - 1]) < 1e-12)
      throw convergence_error("coincident Bethe roots near " + std::to_string(sorted[i]));
}

}  // namespace detail

/// Newton iteration on the root equations from the given starting roots.
inline BetheSolution solve_bethe(const BetheSystem& sys, std::vector<double> z, double tol = 1e-10,
                                 int max_iter = 100) {
  if (z.size() != sys.degree) throw std::invalid_argument("initial guess has the wrong number of roots");
  if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
  BetheSolution sol;
  if (sys.degree == 0) return sol;
  if (!std::isfinite(sys.linear_coeff)) throw domain_error("root equations need g != 0");

  const auto M = static_cast<Eigen::Index>(sys.degree);
  auto f = bethe_residuals(sys, z);
  double res = detail::max_abs(f);
  int polish = 0;
  for (int it = 0; it < max_iter; ++it) {
    if (res < tol && polish++ >= 1) break;
    Eigen::MatrixXd jac(M, M);
    Eigen::VectorXd rhs(M);
    for (Eigen::Index i = 0; i < M; ++i) {
      const double zi = z[static_cast<std::size_t>(i)];
      double d = -sys.pole_coeff / (zi * zi);
      for (Eigen::Index j = 0; j < M; ++j) {
        if (j == i) continue;
        const double diff = zi - z[static_cast<std::size_t>(j)];
        const double t = sys.pair_coeff / (diff * diff);
        jac(i, j) = t;
        d -= t;
      }
      jac(i, i) = d;
      rhs(i) = f[static_cast<std::size_t>(i)];
    }
    const Eigen::VectorXd step = jac.partialPivLu().solve(rhs);
    // Damped update: halve the step until the residual stops growing.
    double factor = 1.0;
    std::vector<double> trial(z.size());
    std::vector<double> f_trial;
    double res_trial = std::numeric_limits<double>::infinity();
    for (int h = 0; h < 30; ++h) {
      for (std::size_t i = 0; i < z.size(); ++i) trial[i] = z[i] - factor * step(static_cast<Eigen::Index>(i));
      f_trial = bethe_residuals(sys, trial);
      res_trial = detail::max_abs(f_trial);
      if (std::isfinite(res_trial) && (res_trial <= res || res < tol)) break;
      factor *= 0.5;
    }
    sol.iterations = it + 1;
    if (!std::isfinite(res_trial)) break;
    if (res < tol && res_trial > res) break;  // polishing no longer helps
    z = trial;
    f = f_trial;
    res = res_trial;
  }
  if (!(res < tol)) {
    std::ostringstream msg;
    msg << "Bethe Newton iteration did not converge: residual " << res << " after " << sol.iterations
        << " iterations";
    throw convergence_error(msg.str());
  }
  std::sort(z.begin(), z.end());
  detail::check_distinct(z);
  sol.residuals = bethe_residuals(sys, z);
  sol.max_residual = detail::max_abs(sol.residuals);
  sol.roots = std::move(z);
  return sol;
}

/// Newton iteration seeded with the scaled Laguerre roots.
inline BetheSolution solve_bethe(const BetheSystem& sys, double tol = 1e-10, int max_iter = 100) {
  if (sys.degree == 0) return {};
  if (sys.linear_coeff == 0.0 || !std::isfinite(sys.linear_coeff))
    throw domain_error("root equations need a finite nonzero linear coefficient");
  return solve_bethe(sys, laguerre_initial_roots(sys.degree, sys.laguerre_alpha(), sys.laguerre_scale()), tol,
                     max_iter);
}

/// psi(z) = exp(-rate z) * prod_i (z - z_i): a closed-form eigenstate in one sector.
struct ExactEigenstate {
  ModelSpec model;
  SectorLabel sector;
  std::size_t degree = 0;
  double energy = 0.0;
  std::vector<double> roots;
  double prefactor_rate = 0.0;
};

inline ExactEigenstate build_eigenstate(const ModelSpec& model, const SectorLabel& sector, std::size_t M,
                                        double tol = 1e-10) {
  const EnergyLevel level = exact_energy(model, sector, M);
  ExactEigenstate st{model, sector, M, level.E, {}, 0.0};
  if (model.g == 0.0) {
    st.roots.assign(M, 0.0);
    return st;
  }
  if (model.kind != ModelKind::two_mode && model.order() == 1) {
    // Displaced oscillator: psi = exp(-g z/omega) (z + g/omega)^M.
    st.prefactor_rate = model.g / model.omega;
    st.roots.assign(M, -model.g / model.omega);
    return st;
  }
  if (model.kind == ModelKind::two_mode) {
    st.prefactor_rate = (model.omega / model.g) * (1.0 - stability_factor(model).value);
  } else {
    st.prefactor_rate = (model.omega / (4.0 * model.g)) * (1.0 - stability_factor(model).value);
  }
  st.roots = solve_bethe(bethe_system(model, sector, M), tol).roots;
  return st;
}

namespace detail {

// psi, psi', psi'' at real z via the product rule over the roots.
struct WaveDerivatives {
  double psi, d1, d2;
};

inline WaveDerivatives wave_derivatives(const ExactEigenstate& st, double z) {
  double poly = 1.0, s1 = 0.0, s2 = 0.0;
  for (double r : st.roots) {
    const double d = z - r;
    poly *= d;
    s1 += 1.0 / d;
    s2 += 1.0 / (d * d);
  }
  const double p1 = poly * s1;               // P'
  const double p2 = poly * (s1 * s1 - s2);   // P''
  const double r = st.prefactor_rate;
  const double e = std::exp(-r * z);
  return {e * poly, e * (p1 - r * poly), e * (p2 - 2.0 * r * p1 + r * r * poly)};
}

}  // namespace detail

/// Max over the points of |L psi| / (1 + |psi|), L being the sector
/// differential equation at the state's energy:
///   two_mode  g z psi'' + 2(omega z + g kappa) psi' + [g z + 2 omega (kappa - 1/2) - E] psi
///   squeezed  4 g z psi'' + (2 omega z + 8 g q) psi' + [g z + 2 omega (q - 1/4) - E] psi
///   displaced (omega z + g) psi' + (g z - E) psi
inline double ode_residual(const ExactEigenstate& st, std::span<const double> points) {
  const double w = st.model.omega, g = st.model.g, E = st.energy;
  const double idx = st.sector.to_double();
  double worst = 0.0;
  for (double z : points) {
    for (double r : st.roots)
      if (std::abs(z - r) < 1e-8) throw std::invalid_argument("sample point coincides with a root");
    const auto d = detail::wave_derivatives(st, z);
    double lhs = 0.0;
    if (st.model.kind == ModelKind::two_mode) {
      lhs = g * z * d.d2 + 2.0 * (w * z + g * idx) * d.d1 + (g * z + 2.0 * w * (idx - 0.5) - E) * d.psi;
    } else if (st.model.order() == 2) {
      lhs = 4.0 * g * z * d.d2 + (2.0 * w * z + 8.0 * g * idx) * d.d1 + (g * z + 2.0 * w * (idx - 0.25) - E) * d.psi;
    } else if (st.model.order() == 1) {
      lhs = (w * z + g) * d.d1 + (g * z - E) * d.psi;
    } else {
      throw std::invalid_argument("no closed-form sector equation for this model");
    }
    worst = std::max(worst, std::abs(lhs) / (1.0 + std::abs(d.psi)));
  }
  return worst;
}

/// psi(z) for complex z, accumulating log-magnitude and phase factor by factor.
inline std::complex<double> eval_wavefunction(const ExactEigenstate& st, std::complex<double> z) {
  double log_mag = -st.prefactor_rate * z.real();
  double phase = -st.prefactor_rate * z.imag();
  for (double r : st.roots) {
    const std::complex<double> f = z - r;
    if (f == std::complex<double>(0.0, 0.0)) return {0.0, 0.0};
    log_mag += std::log(std::abs(f));
    phase += std::arg(f);
  }
  return std::polar(std::exp(log_mag), phase);
}

/// Monic polynomial coefficients p_0..p_M of prod (z - z_i).
inline std::vector<double> polynomial_coefficients(std::span<const double> roots) {
  std::vector<double> p{1.0};
  for (double r : roots) {
    std::vector<double> next(p.size() + 1, 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
      next[i + 1] += p[i];
      next[i] -= r * p[i];
    }
    p = std::move(next);
  }
  return p;
}

/// Taylor coefficients c_0..c_{n_max} of psi about 0: the exponential series
/// convolved with the root polynomial, in sign/log-magnitude form.
inline std::vector<SignedLog> taylor_coefficients(const ExactEigenstate& st, std::size_t n_max) {
  const auto poly = polynomial_coefficients(st.roots);
  const double r = st.prefactor_rate;
  std::vector<SignedLog> out(n_max + 1);
  const double log_r = r != 0.0 ? std::log(std::abs(r)) : 0.0;
  const int sign_minus_r = r > 0 ? -1 : 1;
  for (std::size_t n = 0; n <= n_max; ++n) {
    SignedLog acc;
    for (std::size_t i = 0; i < poly.size() && i <= n; ++i) {
      const std::size_t e = n - i;
      if (r == 0.0 && e > 0) continue;
      const SignedLog p = SignedLog::of(poly[i]);
      const double log_exp = static_cast<double>(e) * log_r - std::lgamma(static_cast<double>(e) + 1.0);
      const int sign_exp = (e % 2 == 1) ? sign_minus_r : 1;
      acc = acc + p * SignedLog::from_log(r == 0.0 ? 0.0 : log_exp, sign_exp);
    }
    out[n] = acc;
  }
  return out;
}

struct NormSeries {
  std::vector<double> log_partial_sums;  // log S_N, N = 0..n_max
  bool converged = false;

  double value() const { return log_partial_sums.empty() ? 0.0 : std::exp(log_partial_sums.back()); }
  std::vector<double> partial_sums() const {
    std::vector<double> out;
    for (double l : log_partial_sums) out.push_back(std::exp(l));
    return out;
  }
};

/// S_N = sum_{n<=N} |c_n|^2 mu_n with the sector basis weights mu_n.
/// Converged when each of the last 20 term ratios stays below 1/2.
inline NormSeries bargmann_norm_sq(std::span<const SignedLog> coeffs, const SectorLabel& sector,
                                   std::size_t n_max) {
  if (coeffs.size() < n_max + 1) throw std::invalid_argument("not enough Taylor coefficients for n_max");
  NormSeries out;
  std::vector<double> log_terms(n_max + 1);
  double acc = -std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n <= n_max; ++n) {
    log_terms[n] = coeffs[n].is_zero() ? -std::numeric_limits<double>::infinity()
                                       : 2.0 * coeffs[n].log_abs + log_basis_weight(sector, n);
    acc = log_add(acc, log_terms[n]);
    out.log_partial_sums.push_back(acc);
  }
  constexpr std::size_t window = 20;
  if (n_max >= window) {
    out.converged = true;
    const double half = std::log(0.5);
    for (std::size_t n = n_max - window; n < n_max; ++n) {
      const double a = log_terms[n], b = log_terms[n + 1];
      if (std::isinf(b) && b < 0) continue;   // zero term
      if (std::isinf(a) && a < 0) {            // zero followed by nonzero
        out.converged = false;
        break;
      }
      if (b - a >= half) {
        out.converged = false;
        break;
      }
    }
  }
  return out;
}

}  // namespace bargmann

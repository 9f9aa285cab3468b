#include "bargmann/exact.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>

using namespace bargmann;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::vector<double> sample_points() {
  std::vector<double> pts;
  for (int i = 0; i < 16; ++i) pts.push_back(-2.0 + 4.0 * (i + 0.37) / 16.0);
  return pts;
}

}  // namespace

TEST_CASE("Laguerre seeds are the roots of L_M^(alpha)") {
  // L_2^(a)(x) = (x^2 - 2(a+2)x + (a+1)(a+2)) / 2
  const double a = 0.5;
  const auto r = laguerre_initial_roots(2, a, 1.0);
  const double disc = std::sqrt(a + 2);
  CHECK_THAT(r[0], WithinAbs(a + 2 - disc, 1e-13));
  CHECK_THAT(r[1], WithinAbs(a + 2 + disc, 1e-13));
  CHECK_THROWS_AS(laguerre_initial_roots(3, -1.5, 1.0), std::invalid_argument);
}

TEST_CASE("two-mode Bethe roots match the M = 1, 2 closed forms") {
  for (double g : {0.2, 0.6, 0.9})
    for (int t : {1, 2, 3}) {
      const auto m = ModelSpec::two_mode(1, g);
      const auto s = SectorLabel::kappa(make_rational(t, 2));
      const double kap = t / 2.0, lam = stability_factor(m).value;
      const auto r1 = solve_bethe(bethe_system(m, s, 1)).roots;
      CHECK_THAT(r1[0], WithinAbs(-kap * g / lam, 1e-10));
      const auto r2 = solve_bethe(bethe_system(m, s, 2)).roots;
      const double c = 1 + 2 * kap;
      CHECK_THAT(r2[0], WithinAbs((-c - std::sqrt(c)) * g / (2 * lam), 1e-10));
      CHECK_THAT(r2[1], WithinAbs((-c + std::sqrt(c)) * g / (2 * lam), 1e-10));
    }
}

TEST_CASE("squeezed Bethe roots match the M = 1, 2 closed forms") {
  for (double g : {0.1, 0.3, 0.45})
    for (int j : {0, 1}) {
      const auto m = ModelSpec::squeezed(1, g);
      const auto s = SectorLabel::q_index(2, j);
      const double q = s.to_double(), om = stability_factor(m).value;
      const auto r1 = solve_bethe(bethe_system(m, s, 1)).roots;
      CHECK_THAT(r1[0], WithinAbs(-4 * q * g / om, 1e-10));
      const auto r2 = solve_bethe(bethe_system(m, s, 2)).roots;
      const double c = 1 + 2 * q;
      CHECK_THAT(r2[0], WithinAbs((-c - std::sqrt(c)) * 2 * g / om, 1e-10));
      CHECK_THAT(r2[1], WithinAbs((-c + std::sqrt(c)) * 2 * g / om, 1e-10));
    }
}

TEST_CASE("eigenstates satisfy their sector equations") {
  const auto pts = sample_points();
  for (std::size_t M = 0; M <= 6; ++M) {
    for (double g : {0.1, 0.3, 0.45})
      for (const auto& s : sector_labels(ModelSpec::squeezed(1, g))) {
        const auto st = build_eigenstate(ModelSpec::squeezed(1, g), s, M);
        CHECK(ode_residual(st, pts) < 1e-10);
      }
    for (double g : {0.2, 0.6, 0.9})
      for (int t : {1, 2, 3}) {
        const auto m = ModelSpec::two_mode(1, g);
        const auto st = build_eigenstate(m, SectorLabel::kappa(make_rational(t, 2)), M);
        CHECK(ode_residual(st, pts) < 1e-10);
      }
    for (double g : {0.1, 0.2, 0.5}) {
      const auto m = ModelSpec::displaced(1, g);
      CHECK(ode_residual(build_eigenstate(m, sector_labels(m).front(), M), pts) < 1e-10);
    }
  }
}

TEST_CASE("a wrong energy leaves a residual") {
  const auto m = ModelSpec::squeezed(1, 0.3);
  auto st = build_eigenstate(m, SectorLabel::q_index(2, 0), 2);
  st.energy += 1e-3;
  CHECK(ode_residual(st, sample_points()) > 1e-5);
}

TEST_CASE("g = 0 gives monomials") {
  const auto st = build_eigenstate(ModelSpec::squeezed(1, 0.0), SectorLabel::q_index(2, 1), 3);
  CHECK(st.prefactor_rate == 0.0);
  CHECK_THAT(std::abs(eval_wavefunction(st, {2.0, 0.0})), WithinRel(8.0, 1e-14));
  const auto c = taylor_coefficients(st, 5);
  for (std::size_t n = 0; n <= 5; ++n) CHECK(c[n].is_zero() == (n != 3));
}

TEST_CASE("wavefunction values and Taylor coefficients") {
  const auto m = ModelSpec::displaced(1, 0.2);
  const auto st = build_eigenstate(m, sector_labels(m).front(), 0);
  // psi = exp(-g z/omega), coefficients (-g)^n / n!
  const auto c = taylor_coefficients(st, 30);
  for (std::size_t n = 0; n <= 30; ++n) {
    const double expected = std::pow(-0.2, double(n)) / std::tgamma(double(n) + 1);
    CHECK_THAT(c[n].value(), WithinRel(expected, 1e-12));
  }
  const std::complex<double> z{0.3, -1.1};
  CHECK(std::abs(eval_wavefunction(st, z) - std::exp(-0.2 * z)) < 1e-14);

  const auto st2 = build_eigenstate(ModelSpec::squeezed(1, 0.3), SectorLabel::q_index(2, 0), 2);
  const double zz = 0.7;
  std::complex<double> direct = std::exp(-st2.prefactor_rate * zz);
  for (double r : st2.roots) direct *= (zz - r);
  CHECK(std::abs(eval_wavefunction(st2, zz) - direct) < 1e-13 * std::abs(direct));
  double series = 0.0;
  const auto c2 = taylor_coefficients(st2, 60);
  for (std::size_t n = 0; n <= 60; ++n) series += c2[n].value() * std::pow(zz, double(n));
  CHECK_THAT(series, WithinRel(direct.real(), 1e-12));
}

TEST_CASE("Bargmann norm of the displaced ground state is e^{g^2}") {
  const auto m = ModelSpec::displaced(1, 0.2);
  const auto st = build_eigenstate(m, sector_labels(m).front(), 0);
  const auto norm = bargmann_norm_sq(taylor_coefficients(st, 80), st.sector, 80);
  CHECK(norm.converged);
  CHECK_THAT(norm.value(), WithinRel(std::exp(0.04), 1e-13));
  const auto ps = norm.partial_sums();
  for (std::size_t i = 1; i < ps.size(); ++i) CHECK(ps[i] >= ps[i - 1]);
}

TEST_CASE("Bethe solver failures") {
  const auto m = ModelSpec::squeezed(1, 0.3);
  const auto sys = bethe_system(m, SectorLabel::q_index(2, 0), 3);
  CHECK_THROWS_AS(solve_bethe(sys, std::vector<double>{1.0, 1.0, 2.0}), convergence_error);
  CHECK_THROWS_AS(solve_bethe(sys, std::vector<double>{1.0}), std::invalid_argument);
  CHECK_THROWS_AS(bethe_system(ModelSpec::two_mode(1, 1.2), SectorLabel::kappa(1), 2), domain_error);
  CHECK_THROWS_AS(bethe_system(ModelSpec::k_harmonic(3, 1, 0.5), SectorLabel::q_index(3, 0), 2), std::invalid_argument);
  const auto sol = solve_bethe(sys);
  CHECK(sol.max_residual < 1e-10);
  CHECK(sol.roots.size() == 3);
}

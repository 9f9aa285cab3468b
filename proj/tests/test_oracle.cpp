#include "bargmann/oracle.hpp"

#include <catch_amalgamated.hpp>

#include <Eigen/Dense>

#include <random>

using namespace bargmann;
using Catch::Matchers::WithinAbs;

TEST_CASE("Sturm bisection agrees with a dense eigensolver") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 40;
    std::vector<double> d(n), e(n - 1);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = d[i] = u(rng);
    for (int i = 0; i + 1 < n; ++i) m(i, i + 1) = m(i + 1, i) = e[i] = u(rng);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    const auto ev = SturmBisection(d, e).lowest(n);
    for (int i = 0; i < n; ++i) CHECK_THAT(ev[i], WithinAbs(es.eigenvalues()(i), 1e-12));
  }
}

TEST_CASE("Sturm bisection handles zero couplings and repeated diagonals") {
  std::vector<double> d{2, 1, 1, 0}, e{0, 0, 0};
  const auto ev = SturmBisection(d, e).lowest(4);
  CHECK_THAT(ev[0], WithinAbs(0, 1e-15));
  CHECK_THAT(ev[1], WithinAbs(1, 1e-15));
  CHECK_THAT(ev[2], WithinAbs(1, 1e-15));
  CHECK_THAT(ev[3], WithinAbs(2, 1e-15));
  CHECK_THROWS_AS(SturmBisection(d, std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("truncated sector Hamiltonian reproduces the squeezed ground level") {
  const auto m = ModelSpec::squeezed(1, 0.3);
  const auto h = build_hamiltonian(m, SectorLabel::q(2, make_rational(1, 4)), 400);
  CHECK(h.diag[1] == 2.0);
  CHECK_THAT(h.offdiag[0], WithinAbs(0.3 * std::sqrt(2.0), 1e-15));
  const auto ev = eigenvalues_tridiagonal(h, 3);
  CHECK_THAT(ev[0], WithinAbs(-0.1, 1e-10));
  CHECK_THAT(ev[1], WithinAbs(1.5, 1e-10));
  CHECK_THAT(ev[2], WithinAbs(3.1, 1e-10));
}

TEST_CASE("convergence study verdicts") {
  SECTION("solvable models converge") {
    const auto st = convergence_study(ModelSpec::squeezed(1, 0.3), SectorLabel::q_index(2, 0), {50, 100, 200, 400}, 4);
    CHECK(st.all_converged());
    REQUIRE(st.cauchy_gaps.size() == 3);
    const auto st1 = convergence_study(ModelSpec::displaced(1, 0.2), SectorLabel::q_index(1, 0), {50, 100, 200, 400}, 4);
    CHECK(st1.all_converged());
  }
  SECTION("k = 3 does not converge") {
    const auto m = ModelSpec::k_harmonic(3, 1, 0.5);
    for (int j = 0; j < 3; ++j) {
      const auto st = convergence_study(m, SectorLabel::q_index(3, j), {50, 100, 200, 400}, 3);
      CHECK(st.none_converged());
      for (const auto& l : st.levels) CHECK(l.monotone_drift);
    }
  }
  SECTION("bad inputs") {
    const auto m = ModelSpec::squeezed(1, 0.3);
    const auto s = SectorLabel::q_index(2, 0);
    CHECK_THROWS_AS(convergence_study(m, s, {100}, 2), std::invalid_argument);
    CHECK_THROWS_AS(convergence_study(m, s, {100, 50}, 2), std::invalid_argument);
    CHECK_THROWS_AS(convergence_study(m, s, {50, 100}, 60), std::invalid_argument);
    CHECK_THROWS_AS(convergence_study(m, SectorLabel::kappa(1), {50, 100}, 2), std::invalid_argument);
  }
}

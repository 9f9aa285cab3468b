#include "bargmann/core.hpp"
#include "bargmann/algebra.hpp"
#include "bargmann/oracle.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace bargmann;
using Catch::Matchers::WithinAbs;

TEST_CASE("sector labels follow q = (jk+1)/k^2") {
  const auto q2 = sector_labels(ModelSpec::squeezed(1, 0.3));
  REQUIRE(q2.size() == 2);
  CHECK(q2[0].value() == make_rational(1, 4));
  CHECK(q2[1].value() == make_rational(3, 4));
  const auto q3 = sector_labels(ModelSpec::k_harmonic(3, 1, 0.5));
  REQUIRE(q3.size() == 3);
  CHECK(q3[2].value() == make_rational(7, 9));
  CHECK(q3[2].offset() == 2);
  CHECK(sector_labels(ModelSpec::displaced(1, 0.2)).front().value() == 1);

  const auto kap = sector_labels(ModelSpec::two_mode(1, 0.6), 3);
  REQUIRE(kap.size() == 3);
  CHECK(kap[2].value() == make_rational(3, 2));

  CHECK_THROWS_AS(SectorLabel::q(2, make_rational(1, 3)), std::invalid_argument);
  CHECK_THROWS_AS(SectorLabel::kappa(make_rational(1, 3)), std::invalid_argument);
  CHECK_THROWS_AS(SectorLabel::kappa(0), std::invalid_argument);
}

TEST_CASE("stability factors and the unitary boundary") {
  CHECK_THAT(stability_factor(ModelSpec::squeezed(1, 0.3)).value, WithinAbs(0.8, 1e-15));
  CHECK_THAT(stability_factor(ModelSpec::two_mode(1, 0.6)).value, WithinAbs(0.8, 1e-15));
  CHECK_THROWS_AS(stability_factor(ModelSpec::two_mode(1, 1.5)), domain_error);
  CHECK_THROWS_AS(stability_factor(ModelSpec::squeezed(1, 0.5)), domain_error);
  CHECK_THROWS_AS(stability_factor(ModelSpec::displaced(1, 0.2)), std::invalid_argument);
}

TEST_CASE("closed-form energies") {
  SECTION("displaced") {
    const auto m = ModelSpec::displaced(1, 0.2);
    const auto s = sector_labels(m).front();
    CHECK_THAT(exact_energy(m, s, 0).E, WithinAbs(-0.04, 1e-15));
    CHECK_THAT(exact_energy(m, s, 2).E, WithinAbs(1.96, 1e-15));
    // No unitary bound for k = 1.
    CHECK_THAT(exact_energy(ModelSpec::displaced(1, 3.0), s, 0).E, WithinAbs(-9.0, 1e-12));
  }
  SECTION("squeezed merges both sectors") {
    const auto lv = full_spectrum(ModelSpec::squeezed(1, 0.3), 4);
    REQUIRE(lv.size() == 4);
    const double expected[] = {-0.1, 0.7, 1.5, 2.3};
    for (int i = 0; i < 4; ++i) CHECK_THAT(lv[i].E, WithinAbs(expected[i], 1e-14));
    CHECK(lv[1].sector.value() == make_rational(3, 4));
  }
  SECTION("two-mode") {
    const auto m = ModelSpec::two_mode(1, 0.6);
    const auto s = SectorLabel::kappa(make_rational(1, 2));
    CHECK_THAT(exact_energy(m, s, 0).E, WithinAbs(-0.2, 1e-15));
    CHECK_THAT(exact_energy(m, s, 1).E, WithinAbs(1.4, 1e-15));
    CHECK_THROWS_AS(full_spectrum(ModelSpec::two_mode(1, 1.5), 4), domain_error);
  }
  SECTION("k >= 3 has no closed form") {
    const auto m = ModelSpec::k_harmonic(3, 1, 0.5);
    CHECK_THROWS_AS(exact_energy(m, sector_labels(m).front(), 0), domain_error);
  }
  SECTION("g = 0 gives the free spectrum") {
    const auto lv = full_spectrum(ModelSpec::squeezed(1, 0.0), 5);
    for (std::size_t i = 0; i < lv.size(); ++i) CHECK_THAT(lv[i].E, WithinAbs(static_cast<double>(i), 1e-15));
  }
  SECTION("sector mismatch is rejected") {
    CHECK_THROWS_AS(exact_energy(ModelSpec::squeezed(1, 0.3), SectorLabel::kappa(1), 0), std::invalid_argument);
  }
}

// Brute force: the full single-mode Fock Hamiltonian omega n + g(a^k + a^+k)
// splits into k chains; its lowest levels must equal the merged closed forms.
TEST_CASE("closed forms against brute-force Fock diagonalization") {
  for (double g : {0.1, 0.3, 0.45}) {
    const int N = 300;
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(N, N);
    for (int n = 0; n < N; ++n) {
      H(n, n) = n;
      if (n + 2 < N) H(n + 2, n) = H(n, n + 2) = g * std::sqrt(double(n + 1) * (n + 2));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H, Eigen::EigenvaluesOnly);
    const auto lv = full_spectrum(ModelSpec::squeezed(1, g), 6);
    for (int i = 0; i < 6; ++i) CHECK_THAT(es.eigenvalues()(i), WithinAbs(lv[static_cast<std::size_t>(i)].E, 1e-8));
  }
  {
    const int N = 120;
    const double g = 0.5;
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(N, N);
    for (int n = 0; n < N; ++n) {
      H(n, n) = n;
      if (n + 1 < N) H(n + 1, n) = H(n, n + 1) = g * std::sqrt(double(n + 1));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H, Eigen::EigenvaluesOnly);
    const auto lv = full_spectrum(ModelSpec::displaced(1, g), 5);
    for (int i = 0; i < 5; ++i) CHECK_THAT(es.eigenvalues()(i), WithinAbs(lv[static_cast<std::size_t>(i)].E, 1e-10));
  }
}

TEST_CASE("two-mode closed form against the two-boson Fock space") {
  // Fixed n1 - n2 = 2 kappa - 1 chains; kappa = 1/2 is the n1 = n2 chain.
  const double g = 0.6;
  const int N = 400;
  std::vector<double> d(N), e(N - 1);
  for (int n = 0; n < N; ++n) d[n] = 2.0 * n;  // omega(n1 + n2)
  for (int n = 0; n + 1 < N; ++n) e[n] = g * (n + 1);  // <n+1,n+1| a1^+ a2^+ |n,n>
  const auto ev = SturmBisection(d, e).lowest(3);
  const double expected[] = {-0.2, 1.4, 3.0};
  for (int i = 0; i < 3; ++i) CHECK_THAT(ev[i], WithinAbs(expected[i], 1e-8));
}

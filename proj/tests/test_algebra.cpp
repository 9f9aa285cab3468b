#include "bargmann/algebra.hpp"

#include <catch_amalgamated.hpp>

using namespace bargmann;
using Catch::Matchers::WithinAbs;

TEST_CASE("Casimir values are exact rationals") {
  CHECK(casimir_value(2) == make_rational(3, 16));
  CHECK(casimir_value(1) == -1);
  CHECK(casimir_value(3) == make_rational(-28, 729));
  CHECK(sector_casimir(SectorLabel::kappa(make_rational(3, 2))) == make_rational(-3, 4));
}

TEST_CASE("phi polynomial") {
  // phi(x) - phi(x-1) for k = 1 is -1: [a, a^+] realised with Q+ = a^+.
  for (double x : {0.0, 0.5, 3.0}) CHECK_THAT(phi_polynomial(1, x) - phi_polynomial(1, x - 1), WithinAbs(-1, 1e-15));
  // k = 2 is su(1,1): [K+,K-] = -2K0.
  for (double x : {0.25, 0.75, 2.25}) CHECK_THAT(phi_polynomial(2, x) - phi_polynomial(2, x - 1), WithinAbs(-2 * x, 1e-14));
  CHECK(phi_polynomial<Rational>(3, Rational(0)) == casimir_value(3) - make_rational(2, 9) * make_rational(5, 9) * make_rational(8, 9));
}

TEST_CASE("ladder matrices of the sector representation") {
  const auto rep = rep_matrices<double>(SectorLabel::q_index(2, 0), 5);
  CHECK(rep.weight(0, 0) == 0.25);
  CHECK(rep.weight(2, 2) == 2.25);
  // X+ entry sqrt((2n+1)(2n+2)/4)
  CHECK_THAT(rep.raising(1, 0), WithinAbs(std::sqrt(0.5), 1e-15));
  CHECK_THAT(rep.raising(2, 1), WithinAbs(std::sqrt(3.0), 1e-15));
  CHECK(rep.lowering(0, 1) == rep.raising(1, 0));
  CHECK_THROWS_AS(rep_matrices<double>(SectorLabel::q_index(2, 0), 1), std::invalid_argument);
}

TEST_CASE("commutation relations and Casimir on interior rows") {
  for (int k = 1; k <= 5; ++k)
    for (int j = 0; j < k; ++j) {
      const auto s = SectorLabel::q_index(k, j);
      CHECK(commutator_check(s, 64) <= 1e-12);
      CHECK(casimir_check(s, 64) <= 1e-12);
    }
  for (int t = 1; t <= 6; ++t) {
    const auto s = SectorLabel::kappa(make_rational(t, 2));
    CHECK(commutator_check(s, 64) <= 1e-12);
    CHECK(casimir_check(s, 64) <= 1e-12);
  }
  // Double precision is enough for small dimensions.
  CHECK(commutator_check<double>(SectorLabel::q_index(3, 1), 16) < 1e-9);
  CHECK_THROWS_AS(commutator_check(SectorLabel::q_index(5, 0), 6), std::invalid_argument);
}

TEST_CASE("a wrong Casimir constant is detected") {
  // The q = 3/4 sector shares C = 3/16; shifting the weight by a half breaks it.
  const auto rep = rep_matrices<QuadReal>(SectorLabel::q_index(2, 1), 10);
  DenseMatrix<QuadReal> c = rep.lowering * rep.raising;
  for (Eigen::Index i = 0; i < 10; ++i) c(i, i) += phi_polynomial<QuadReal>(2, rep.weight(i, i) + QuadReal(0.5));
  CHECK(static_cast<double>(abs(c(0, 0) - QuadReal(3) / 16)) > 0.1);
}

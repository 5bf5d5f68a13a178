#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pentagon/exotic.hpp"
#include "pentagon/report.hpp"
#include "pentagon/rng.hpp"

using namespace pentagon;

namespace {

LmFamily demo_family() {
  return LmFamily{LmPoint{0.9, 0.8}, {0.7, -0.3}, {0.5, 0.5}, {0.3, -0.2}, {0.1, 0.6}};
}

}  // namespace

TEST_CASE("the deformation direction is nilpotent") {
  CMatrix e = lm_nilpotent();
  CHECK(max_abs(e * e) == 0.0);
  CHECK(e(0, 0) == Complex(1, 0));
  CHECK(e(0, 1) == Complex(0, 1));
  CHECK(e(1, 0) == Complex(0, 1));
  CHECK(e(1, 1) == Complex(-1, 0));
  CHECK(max_abs(lm_matrix(2.0, 0.5) - (2.0 * CMatrix::Identity(2, 2) + 0.5 * e)) == 0.0);
}

TEST_CASE("component extraction round trip and rejection") {
  LmParts p = lm_parts(lm_matrix(0.75, -1.25));
  CHECK(std::abs(p.lambda - Complex(0.75)) < 1e-14);
  CHECK(std::abs(p.mu - Complex(-1.25)) < 1e-14);

  CMatrix bad = CMatrix::Identity(2, 2);
  bad(0, 1) = 1.0;  // symmetric completion fails the shape
  CHECK_THROWS_AS(lm_parts(bad), DegenerateParameters);
  CHECK_THROWS_AS(lm_parts(CMatrix::Identity(3, 3)), DegenerateParameters);
}

TEST_CASE("family assembly") {
  LmFamily p = demo_family();
  ZetaFamily zf = zeta_from_lm(p);
  CHECK(zf.n == 2);
  CHECK(zf.symmetric);
  for (int i = 1; i <= 5; ++i)
    for (int j = i + 1; j <= 5; ++j) {
      double lam = p[static_cast<std::size_t>(i - 1)].lambda - p[static_cast<std::size_t>(j - 1)].lambda;
      CHECK(std::abs(zeta_diff(zf, i, j).determinant() - Complex(lam * lam)) < 1e-12);
    }

  LmFamily coincident = p;
  coincident[1].lambda = coincident[0].lambda;
  CHECK_THROWS_AS(zeta_from_lm(coincident), DegenerateParameters);
}

TEST_CASE("coupling of the first tetrahedron") {
  LmFamily p = {LmPoint{0, 0}, {1, 0}, {2, 0}, {3, 1}, {4, 0.5}};
  CHECK(mu_coupling(p) == 2.0);

  LmFamily flat = demo_family();
  for (auto& pt : flat) pt.mu = 0.37;
  CHECK(mu_coupling(flat) == 0.0);

  SplitMix64 rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    LmFamily q = random_lm(rng);
    double a = mu_coupling(q);
    double d = mu_coupling_det(q);
    CHECK(std::abs(a - d) < 1e-12 * std::max(1.0, std::abs(a)));
  }
}

TEST_CASE("difference identity behind the closed form") {
  SplitMix64 rng(62);
  for (int trial = 0; trial < 20; ++trial) {
    std::array<double, 5> lam = random_decreasing(rng);
    double l21 = lam[1] - lam[0], l31 = lam[2] - lam[0], l41 = lam[3] - lam[0];
    double l32 = lam[2] - lam[1], l42 = lam[3] - lam[1], l43 = lam[3] - lam[2];
    CHECK(std::abs(l32 * l41 + l21 * l43 - l31 * l42) < 1e-14);
  }
}

TEST_CASE("closed block of the arithmetic family") {
  LmFamily p = {LmPoint{5, 0.3}, {4, -0.1}, {3, 0.7}, {2, 0.2}, {1, 0.0}};
  CMatrix m = exotic_flip_block(p);
  CHECK(m(0, 0).real() == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(m(0, 0).imag() == 0.0);
  CHECK(exotic_zero_mass(m) == 0.0);  // literal zeros in the closed form
  CHECK(m(0, 1) == Complex(0.0));
  CHECK(m(0, 3) == Complex(0.0));
  CHECK(m(2, 1) == Complex(0.0));
  CHECK(m(2, 3) == Complex(0.0));
  // preserves the pairwise swap form
  CHECK(max_abs(m.transpose() * iso_j() * m - iso_j()) < 1e-12);
}

TEST_CASE("equal deformation shuts the coupling column") {
  LmFamily p = demo_family();
  for (auto& pt : p) pt.mu = -0.4;
  CMatrix m = exotic_flip_block(p);
  CHECK(m(1, 0) == Complex(0.0));
  CHECK(m(1, 2) == Complex(0.0));
  CHECK(m(3, 0) == Complex(0.0));
  CHECK(m(3, 2) == Complex(0.0));
}

TEST_CASE("tuned basis change is isotropic for lm Gramians") {
  LmFamily p = demo_family();
  ZetaFamily zf = zeta_from_lm(p);
  CMatrix j2(2, 2);
  j2 << 0, 1, 1, 0;
  for (const GeneratorLabel& lbl : face_table()) {
    CMatrix g = triangle_gram(zf, lbl.triple);
    CMatrix a = exotic_a(g);
    CHECK(max_abs(a * g * a.transpose() - j2) < 1e-12);
    CMatrix scaled = exotic_a(g, Complex(2.0));
    CMatrix d = CMatrix::Zero(2, 2);
    d(0, 0) = 2.0;
    d(1, 1) = 0.5;
    CHECK(max_abs(scaled - d * a) < 1e-13);
  }
  CHECK_THROWS_AS(exotic_a(lm_nilpotent()), DegenerateGram);       // no invertible lambda part
  CMatrix notlm(2, 2);
  notlm << 1, 2, 2, 1;
  CHECK_THROWS_AS(exotic_a(notlm), DegenerateParameters);
}

TEST_CASE("constructed flips reproduce the closed block") {
  LmFamily p = demo_family();
  FlipSet fs = exotic_flips(p);
  CMatrix block = flip_block(fs.P, flip_table()[0].slots, 2);
  CMatrix closed = exotic_flip_block(p);
  CHECK(max_abs(block - closed) < 1e-12 * std::max(1.0, max_abs(closed)));
  CHECK(check_pentagon(fs) < 1e-10);
  CHECK(j_orthogonality_residual(fs) < 1e-10);
}

TEST_CASE("per triangle scales act by diagonal conjugation") {
  SplitMix64 rng(63);
  LmFamily p = demo_family();
  std::array<Complex, kNumFaces> scales;
  for (auto& s : scales) s = Complex(0.5, 0) + 0.4 * rng.next_disc();
  ScaleProvider provider = [&scales](const Triple& t) {
    return scales[static_cast<std::size_t>(face_position(t))];
  };
  FlipSet fs = exotic_flips(p, provider);
  CHECK(check_pentagon(fs) < 1e-10);

  CMatrix sample = flip_block(fs.P, flip_table()[0].slots, 2);
  DiagonalConjugation dc = solve_diagonal_conjugation(exotic_flip_block(p), sample);
  CHECK(dc.residual < 1e-10);
  // row and column scales pair up: the two lines of one triangle carry s and 1/s
  Complex lprod = dc.left(0) * dc.left(1);
  CHECK(std::abs(lprod - dc.left(2) * dc.left(3)) < 1e-9 * std::abs(lprod));
  Complex rprod = dc.right(0) * dc.right(1);
  CHECK(std::abs(rprod - dc.right(2) * dc.right(3)) < 1e-9 * std::abs(rprod));
  CHECK(std::abs(lprod * rprod - Complex(1.0)) < 1e-9);
}

TEST_CASE("diagonal conjugation solver on a synthetic pair") {
  SplitMix64 rng(64);
  CMatrix m = CMatrix::Zero(4, 4);
  for (Eigen::Index i = 0; i < 4; ++i)
    for (Eigen::Index j = 0; j < 4; ++j)
      if ((i + j) % 2 == 0) m(i, j) = rng.next_disc();
  Eigen::VectorXcd l(4), r(4);
  for (int i = 0; i < 4; ++i) {
    l(i) = Complex(1.0) + 0.5 * rng.next_disc();
    r(i) = Complex(1.0) + 0.5 * rng.next_disc();
  }
  CMatrix sample = l.asDiagonal() * m * r.asDiagonal();
  DiagonalConjugation dc = solve_diagonal_conjugation(m, sample);
  CHECK(dc.residual < 1e-12);
  CMatrix rebuilt = dc.left.asDiagonal() * m * dc.right.asDiagonal();
  CHECK(max_abs(rebuilt - sample) < 1e-12 * std::max(1.0, max_abs(sample)));
}

TEST_CASE("mismatched zero patterns leave a large conjugation residual") {
  CMatrix ref = CMatrix::Identity(4, 4);
  CMatrix sample = iso_j();
  DiagonalConjugation dc = solve_diagonal_conjugation(ref, sample);
  CHECK(dc.residual > 0.5);
}

TEST_CASE("extracted weights carry the torsion constraint") {
  SplitMix64 rng(65);
  for (int trial = 0; trial < 10; ++trial) {
    LmFamily p = random_lm(rng);
    FlipSet fs = exotic_flips(p);
    std::array<GaussWeight, 5> w = weights_from_flips(fs);
    for (const GaussWeight& wi : w) CHECK(check_constraint_u(wi) < 1e-9);
    CHECK(pentagon_grassmann(w).deviation < 1e-9);
  }
  // the unit-coupling reference weight does not satisfy it
  std::array<std::array<Complex, 2>, 2> b = {{{Complex(1), Complex(0)}, {Complex(0), Complex(1)}}};
  GaussWeight unit = make_gauss_weight(0.0, b, 0.0, tet_wirings()[0]);
  CHECK(check_constraint_u(unit) == 1.0);
}

TEST_CASE("generic families do not satisfy the torsion constraint") {
  SplitMix64 rng(66);
  double worst = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    ZetaFamily zf = random_zeta(rng, 2);
    std::array<GaussWeight, 5> w = weights_from_flips(isotropic_flips_generic(zf));
    for (const GaussWeight& wi : w) worst = std::max(worst, check_constraint_u(wi));
  }
  CHECK(worst > 1e-3);
}

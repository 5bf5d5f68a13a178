#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pentagon/metric.hpp"
#include "pentagon/report.hpp"
#include "pentagon/rng.hpp"

using namespace pentagon;

namespace {

ZetaFamily scalar_family(std::array<double, 5> vals) {
  std::array<CMatrix, 5> mats;
  for (int v = 0; v < 5; ++v)
    mats[static_cast<std::size_t>(v)] = CMatrix::Constant(1, 1, Complex(vals[static_cast<std::size_t>(v)], 0));
  return make_zeta_family(mats);
}

const std::array<Triple, 10>& all_triples() {
  static const std::array<Triple, 10> t = {
      Triple{1, 2, 3}, {1, 2, 4}, {1, 2, 5}, {1, 3, 4}, {1, 3, 5},
      {2, 3, 4}, {1, 4, 5}, {2, 3, 5}, {2, 4, 5}, {3, 4, 5}};
  return t;
}

}  // namespace

TEST_CASE("scalar Gramian of the arithmetic family") {
  ZetaFamily zf = scalar_family({5, 4, 3, 2, 1});
  CMatrix g = triangle_gram(zf, Triple{1, 2, 4});
  REQUIRE(g.rows() == 1);
  CHECK(g(0, 0).real() == doctest::Approx(-3.0).epsilon(1e-14));
  CHECK(g(0, 0).imag() == 0.0);

  // 124 and 234 are orthogonal inside the quad 1234
  QuadProduct qp = quad_product(zf, {1, 2, 3, 4});
  CMatrix cross = scalar_product(qp, triangle_basis(zf, Triple{1, 2, 4}),
                                 triangle_basis(zf, Triple{2, 3, 4}));
  CHECK(max_abs(cross) < 1e-14);
}

TEST_CASE("quad product requires a symmetric family") {
  std::array<CMatrix, 5> mats;
  double v = 5.0;
  for (auto& m : mats) {
    m = CMatrix::Identity(2, 2) * v;
    v -= 1.0;
  }
  mats[0](0, 1) = 1.0;
  ZetaFamily zf = make_zeta_family(mats, false);
  CHECK_THROWS_AS(quad_product(zf, {1, 2, 3, 4}), NotSymmetric);
  CHECK_THROWS_AS(triangle_gram(zf, Triple{1, 2, 3}), NotSymmetric);
}

TEST_CASE("the three edge formulas and the quad Gramians all agree") {
  SplitMix64 rng(21);
  for (int n : {2, 3}) {
    ZetaFamily zf = random_zeta(rng, n);
    for (const Triple& t : all_triples()) {
      CMatrix g = triangle_gram(zf, t);
      double scale = std::max(1.0, max_abs(g));
      CHECK(max_abs(g - g.transpose()) < 1e-10 * scale);
      for (const CMatrix& form : triangle_gram_forms(zf, t))
        CHECK(max_abs(form - g) < 1e-10 * scale);

      // self product through any containing quad reproduces the Gramian
      TriangleBasis b = triangle_basis(zf, t);
      for (int extra = 1; extra <= 5; ++extra) {
        if (extra == t.i || extra == t.j || extra == t.k) continue;
        std::array<int, 4> quad = {t.i, t.j, t.k, extra};
        std::sort(quad.begin(), quad.end());
        CMatrix self = scalar_product(quad_product(zf, quad), b, b);
        CHECK(max_abs(self - g) < 1e-10 * scale);
      }
    }
  }
}

TEST_CASE("the Gramian depends only on its triangle's parameters") {
  SplitMix64 rng(22);
  ZetaFamily zf = random_zeta(rng, 2);
  CMatrix before = triangle_gram(zf, Triple{1, 2, 4});
  // replace the two vertices off the triangle
  ZetaFamily other = zf;
  other.zeta[2] = zf.zeta[2] + 0.25 * CMatrix::Identity(2, 2);
  other.zeta[4] = zf.zeta[4] - 0.125 * CMatrix::Identity(2, 2);
  CMatrix after = triangle_gram(other, Triple{1, 2, 4});
  CHECK(max_abs(after - before) == 0.0);
}

TEST_CASE("scalar product is symmetric under swapping its arguments") {
  SplitMix64 rng(23);
  ZetaFamily zf = random_zeta(rng, 2);
  QuadProduct qp = quad_product(zf, {1, 2, 4, 5});
  TriangleBasis f = triangle_basis(zf, Triple{1, 2, 4});
  TriangleBasis g = triangle_basis(zf, Triple{1, 4, 5});
  CMatrix fg = scalar_product(qp, f, g);
  CMatrix gf = scalar_product(qp, g, f);
  CHECK(max_abs(fg - gf.transpose()) < 1e-12 * std::max(1.0, max_abs(fg)));
}

TEST_CASE("scalar orthonormal flips are the frozen rotations") {
  ZetaFamily zf = scalar_family({5, 4, 3, 2, 1});
  FlipSet fs = orthonormal_flips(zf);
  CHECK(orthogonality_residual(fs) < 1e-13);
  CHECK(check_pentagon(fs) < 1e-13);
  CMatrix p = flip_block(fs.P, flip_table()[0].slots, 1);
  CMatrix want(2, 2);
  want << std::sqrt(3.0) / 2.0, -0.5, 0.5, std::sqrt(3.0) / 2.0;
  CHECK(max_abs(p - want) < 1e-13);

  FlipSet rot = kashaev_flipset({Complex(5), Complex(4), Complex(3), Complex(2), Complex(1)});
  for (int f = 0; f < 5; ++f)
    CHECK(max_abs(flip_matrix(fs, f) - flip_matrix(rot, f)) < 1e-13);
}

TEST_CASE("orthonormal flips for matrix families") {
  SplitMix64 rng(24);
  for (int n : {2, 3}) {
    for (int trial = 0; trial < 5; ++trial) {
      ZetaFamily zf = random_zeta(rng, n);
      FlipSet fs = orthonormal_flips(zf);
      CHECK(orthogonality_residual(fs) < 1e-9);
      CHECK(check_pentagon(fs) < 1e-9);
      for (int f = 0; f < 5; ++f)
        CHECK(off_pattern_mass(flip_matrix(fs, f), flip_table()[static_cast<std::size_t>(f)].slots, n) == 0.0);
    }
  }
}

TEST_CASE("any factor with c c^T = Gram yields orthogonal flips") {
  SplitMix64 rng(25);
  ZetaFamily zf = random_zeta(rng, 2);
  CProvider flipped = [&zf](const Triple& t) {
    CMatrix c = factor_sym(triangle_gram(zf, t));
    c.col(0) *= -1.0;  // sign change keeps c c^T
    return c;
  };
  FlipSet fs = orthonormal_flips(zf, flipped);
  CHECK(orthogonality_residual(fs) < 1e-9);
  CHECK(check_pentagon(fs) < 1e-9);
}

TEST_CASE("isotropic change of basis") {
  IsoBasisChange ch = isotropic_change(CMatrix::Identity(2, 2));
  CMatrix want(2, 2);
  const double r = 1.0 / std::sqrt(2.0);
  want << Complex(0, r), Complex(r, 0), Complex(0, -r), Complex(r, 0);
  CHECK(max_abs(ch.a - want) < 1e-14);

  SplitMix64 rng(26);
  CMatrix j2(2, 2);
  j2 << 0, 1, 1, 0;
  for (int trial = 0; trial < 20; ++trial) {
    CMatrix g(2, 2);
    g(0, 0) = rng.next_disc();
    g(1, 1) = rng.next_disc();
    g(0, 1) = g(1, 0) = rng.next_disc();
    if (std::abs(g(0, 0)) < 0.1 || std::abs(g.determinant()) < 0.05) continue;
    IsoBasisChange ch2 = isotropic_change(g);
    CHECK(max_abs(ch2.a * g * ch2.a.transpose() - j2) < 1e-11);
  }

  CHECK_THROWS_AS(isotropic_change(j2), DegenerateGram);  // alpha = 0 chart failure
  CMatrix rank1(2, 2);
  rank1 << 1, 1, 1, 1;
  CHECK_THROWS_AS(isotropic_change(rank1), DegenerateGram);  // zero discriminant
}

TEST_CASE("pairwise swap form") {
  const CMatrix& j = iso_j();
  REQUIRE(j.rows() == 4);
  CMatrix want = CMatrix::Zero(4, 4);
  want(0, 1) = want(1, 0) = want(2, 3) = want(3, 2) = 1.0;
  CHECK(max_abs(j - want) == 0.0);
}

TEST_CASE("isotropic flips preserve the swap form and close the pentagon") {
  SplitMix64 rng(27);
  for (int trial = 0; trial < 10; ++trial) {
    ZetaFamily zf = random_zeta(rng, 2);
    FlipSet fs = isotropic_flips(zf);
    CHECK(j_orthogonality_residual(fs) < 1e-9);
    CHECK(check_pentagon(fs) < 1e-9);
    for (int f = 0; f < 5; ++f)
      CHECK(off_pattern_mass(flip_matrix(fs, f), flip_table()[static_cast<std::size_t>(f)].slots, 2) == 0.0);
  }
}

TEST_CASE("isotropic flips accept any row scaling of the basis change") {
  SplitMix64 rng(28);
  ZetaFamily zf = random_zeta(rng, 2);
  AProvider scaled = [&zf](const Triple& t) {
    CMatrix a = isotropic_change(triangle_gram(zf, t)).a;
    a.row(0) *= 2.0;
    a.row(1) *= 0.5;  // diag(s, 1/s) keeps a G a^T
    return a;
  };
  FlipSet fs = isotropic_flips(zf, scaled);
  CHECK(j_orthogonality_residual(fs) < 1e-9);
  CHECK(check_pentagon(fs) < 1e-9);
}

TEST_CASE("isotropic refinement requires block size two") {
  SplitMix64 rng(29);
  ZetaFamily zf = random_zeta(rng, 1);
  CHECK_THROWS_AS(isotropic_flips(zf), DegenerateParameters);
}

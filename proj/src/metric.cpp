#include "pentagon/metric.hpp"

#include <cmath>
#include <string>

namespace pentagon {

QuadProduct quad_product(const ZetaFamily& zf, const std::array<int, 4>& quad) {
  if (!zf.symmetric) throw NotSymmetric("quad_product: requires a symmetric family");
  QuadProduct qp;
  qp.quad = quad;
  qp.X = zeta_diff(zf, quad[0], quad[1]);
  qp.Y = zeta_diff(zf, quad[2], quad[3]);
  return qp;
}

CMatrix scalar_product(const QuadProduct& qp, const TriangleBasis& f, const TriangleBasis& g) {
  auto blk = [&](const TriangleBasis& b, int pos) -> const CMatrix& {
    return b.blocks[static_cast<std::size_t>(qp.quad[static_cast<std::size_t>(pos)] - 1)];
  };
  return blk(f, 0) * qp.X * blk(g, 1).transpose() + blk(f, 1) * qp.X.transpose() * blk(g, 0).transpose() +
         blk(f, 2) * qp.Y * blk(g, 3).transpose() + blk(f, 3) * qp.Y.transpose() * blk(g, 2).transpose();
}

CMatrix triangle_gram(const ZetaFamily& zf, const Triple& t) {
  if (!zf.symmetric) throw NotSymmetric("triangle_gram: requires a symmetric family");
  CMatrix g = 2.0 * zeta_diff(zf, t.i, t.j) * inverse(zeta_diff(zf, t.k, t.j)) * zeta_diff(zf, t.i, t.k);
  return (g + g.transpose().eval()) / 2.0;
}

std::array<CMatrix, 3> triangle_gram_forms(const ZetaFamily& zf, const Triple& t) {
  TriangleBasis b = triangle_basis(zf, t);
  auto blk = [&](int v) -> const CMatrix& { return b.blocks[static_cast<std::size_t>(v - 1)]; };
  auto edge = [&](int u, int v) {
    CMatrix e = zeta_diff(zf, u, v);
    return (blk(u) * e * blk(v).transpose() + blk(v) * e.transpose() * blk(u).transpose()).eval();
  };
  return {edge(t.i, t.j), edge(t.j, t.k), edge(t.k, t.i)};
}

FlipSet orthonormal_flips(const ZetaFamily& zf, const CProvider& custom) {
  auto lead = [&](const Triple& t) {
    CMatrix c = custom ? custom(t) : factor_sym(triangle_gram(zf, t));
    return inverse(c);
  };
  return build_flips_with_leads(zf, lead);
}

double orthogonality_residual(const FlipSet& fs) {
  CMatrix id = CMatrix::Identity(3 * fs.n, 3 * fs.n);
  double r = 0.0;
  for (int w = 0; w < 5; ++w) {
    const CMatrix& m = flip_matrix(fs, w);
    r = std::max(r, max_abs(m.transpose() * m - id));
  }
  return r;
}

IsoBasisChange isotropic_change(const CMatrix& gram, std::optional<Complex> c_in) {
  if (gram.rows() != 2 || gram.cols() != 2) throw DegenerateGram("isotropic_change: Gramian must be 2x2");
  if (!is_symmetric(gram)) throw NotSymmetric("isotropic_change: Gramian not symmetric");
  Complex alpha = gram(0, 0), beta = gram(0, 1), gamma = gram(1, 1);
  double scale = std::max(1e-300, max_abs(gram));
  Complex disc = beta * beta - alpha * gamma;
  if (std::abs(alpha) <= 1e-12 * scale)
    throw DegenerateGram("isotropic_change: alpha ~ 0, rows not solvable in this chart");
  if (std::abs(disc) <= 1e-12 * scale * scale)
    throw DegenerateGram("isotropic_change: Gramian discriminant ~ 0");
  Complex s = std::sqrt(disc);
  Complex denom = -2.0 * alpha * disc;  // = 2 alpha (alpha gamma - beta^2)
  IsoBasisChange ch;
  ch.c = c_in ? *c_in : std::sqrt(1.0 / denom);
  if (std::abs(ch.c) == 0.0) throw DegenerateGram("isotropic_change: zero normalization");
  ch.cprime = 1.0 / (denom * ch.c);
  ch.a = CMatrix(2, 2);
  ch.a(0, 0) = ch.c * (-beta + s);
  ch.a(0, 1) = ch.c * alpha;
  ch.a(1, 0) = ch.cprime * (-beta - s);
  ch.a(1, 1) = ch.cprime * alpha;
  return ch;
}

const CMatrix& iso_j() {
  static const CMatrix j = [] {
    CMatrix m = CMatrix::Zero(4, 4);
    m(0, 1) = m(1, 0) = m(2, 3) = m(3, 2) = 1.0;
    return m;
  }();
  return j;
}

FlipSet isotropic_flips(const ZetaFamily& zf, const AProvider& custom) {
  if (zf.n != 2) throw DegenerateParameters("isotropic_flips: requires n = 2");
  auto lead = [&](const Triple& t) {
    return custom ? custom(t) : isotropic_change(triangle_gram(zf, t)).a;
  };
  return build_flips_with_leads(zf, lead);
}

double j_orthogonality_residual(const FlipSet& fs) {
  if (fs.n != 2) throw DegenerateParameters("j_orthogonality_residual: requires n = 2");
  const CMatrix& j = iso_j();
  double r = 0.0;
  for (int w = 0; w < 5; ++w) {
    CMatrix b = flip_block(flip_matrix(fs, w), flip_table()[static_cast<std::size_t>(w)].slots, fs.n);
    r = std::max(r, max_abs(b.transpose() * j * b - j));
  }
  return r;
}

}  // namespace pentagon

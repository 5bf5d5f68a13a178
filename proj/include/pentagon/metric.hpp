#pragma once

#include <optional>

#include "pentagon/directsum.hpp"

namespace pentagon {

// Symmetric bilinear form on a quadrilateral space i<j<k<l, evaluated blockwise:
// (u, v) = u_i X v_j^T + v_i X u_j^T + u_k Y v_l^T + v_k Y u_l^T,
// with X = zeta_ij and Y = zeta_kl. Requires a symmetric family.
struct QuadProduct {
  std::array<int, 4> quad;
  CMatrix X, Y;
};

QuadProduct quad_product(const ZetaFamily& zf, const std::array<int, 4>& quad);

// Gramian between two stacked triangle bases supported on the quad.
CMatrix scalar_product(const QuadProduct& qp, const TriangleBasis& f, const TriangleBasis& g);

// Gramian of the triangle basis ijk (lead = identity): 2 zeta_ij zeta_kj^{-1} zeta_ik.
CMatrix triangle_gram(const ZetaFamily& zf, const Triple& t);

// The same Gramian evaluated through each of the three edge formulas; they agree
// for symmetric families and depend only on zeta_i, zeta_j, zeta_k.
std::array<CMatrix, 3> triangle_gram_forms(const ZetaFamily& zf, const Triple& t);

// --- orthogonal refinement --------------------------------------------------------

using CProvider = std::function<CMatrix(const Triple&)>;

// Flips on the orthonormalized bases c_ijk^{-1} f_ijk with c c^T = Gram. The optional
// provider overrides the per-triangle factor (it must still satisfy c c^T = Gram).
FlipSet orthonormal_flips(const ZetaFamily& zf, const CProvider& custom = {});

// max over the five flips of max_abs(M^T M - I)
double orthogonality_residual(const FlipSet& fs);

// --- isotropic refinement (n = 2) -------------------------------------------------

// Basis change a with a G a^T = [[0,1],[1,0]] for a symmetric 2 x 2 Gramian.
struct IsoBasisChange {
  CMatrix a;
  Complex c, cprime;
};

IsoBasisChange isotropic_change(const CMatrix& gram, std::optional<Complex> c = {});

const CMatrix& iso_j();  // [[0,1,1,0 pattern]] pairwise swap, 4 x 4

using AProvider = std::function<CMatrix(const Triple&)>;

// Flips on the isotropic bases a_ijk f_ijk; n must be 2. The optional provider
// overrides the per-triangle 2 x 2 change of basis.
FlipSet isotropic_flips(const ZetaFamily& zf, const AProvider& custom = {});

// max over the five flips of max_abs(B^T J B - J) on the nontrivial 4 x 4 blocks
double j_orthogonality_residual(const FlipSet& fs);

}  // namespace pentagon

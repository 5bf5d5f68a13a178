#pragma once

#include <array>
#include <string>
#include <vector>

#include "pentagon/directsum.hpp"
#include "pentagon/grassmann.hpp"

namespace pentagon {

// --- face bookkeeping --------------------------------------------------------------

struct GeneratorLabel {
  Triple triple;
  int position;  // rank in the global generator order
  std::string name() const;
};

// The ten triangles on vertices 1..5, ordered by vertex digit sum with lexicographic
// tie-breaking. This fixes the global Grassmann generator order.
const std::vector<GeneratorLabel>& face_table();
int face_position(const Triple& t);  // GeneratorMismatch if absent
inline constexpr int kNumFaces = 10;

// Input/output faces of one tetrahedron, matching the flip it performs:
// x1, x2 are consumed (integrated), y1, y2 produced.
struct TetWiring {
  std::array<int, 4> tet;
  Triple x1, x2, y1, y2;
  friend bool operator==(const TetWiring&, const TetWiring&) = default;
};

// Wirings for the five tetrahedra in flip order 1234, 1345, 1245, 2345, 1235.
const std::array<TetWiring, 5>& tet_wirings();

// --- Gaussian weights ---------------------------------------------------------------

// W = exp(a x1 x2 + sum_ij b_ij x_i y_j + c y1 y2) with delta = det b nonzero.
struct GaussWeight {
  Complex a{}, c{};
  std::array<std::array<Complex, 2>, 2> b{};
  TetWiring faces;

  Complex delta() const;
};

GaussWeight make_gauss_weight(Complex a, const std::array<std::array<Complex, 2>, 2>& b,
                              Complex c, const TetWiring& faces);

// The weight as an element of the global 10-generator face algebra.
GrassmannElement weight_element(const GaussWeight& w);

// The weight in a local 4-generator algebra ordered (x1, x2, y1, y2).
GrassmannElement weight_element_local(const GaussWeight& w);

// 4 x 4 matrix of the induced transformation on operators, basis
// (d/d1, v1, d/d2, v2) with v = x on the source side and y on the image side.
CMatrix canonical_matrix(const GaussWeight& w);

// Independent oracle: pushes each operator row through the kernel map
// f |-> integral of W f dx1 dx2 on the local algebra and returns the largest
// coefficient discrepancy against the canonical_matrix combination.
double verify_canonical(const GaussWeight& w);

// Inverts canonical_matrix; throws NotGaussianGeneric when the entries do not
// reconstruct a Gaussian weight within tol.
GaussWeight weight_from_matrix(const CMatrix& m, const TetWiring& faces, double tol = 1e-9);

// --- pentagon at the Grassmann level ------------------------------------------------

struct PentagonGrassmannResult {
  double deviation;  // max relative coefficient deviation of rhs - konst * lhs
  Complex konst;
  GrassmannElement lhs, rhs;  // integrated sides over the face algebra
};

// weights ordered (1234, 1345, 1245, 2345, 1235); throws InconsistentRatio when the
// two sides fail to be proportional within consistency_tol, ZeroSide when either
// side vanishes.
PentagonGrassmannResult pentagon_grassmann(const std::array<GaussWeight, 5>& w,
                                           double consistency_tol = 1e-6);

// Matrix-level pentagon residual of the canonical matrices under their 6 x 6
// slot embeddings (the direct-sum block pattern at n = 2).
double matrix_pentagon_residual(const std::array<GaussWeight, 5>& w);

// Extract the five weights of an isotropic FlipSet (n = 2).
std::array<GaussWeight, 5> weights_from_flips(const FlipSet& fs, double tol = 1e-9);

// Isotropic flips with the two isotropic covectors of each triangle ordered so
// that every flip block carries a Gaussian weight. Whether a flip is Gaussian
// generic depends only on the XOR of the line orderings of its four triangles,
// and the five parities always admit a simultaneous solution (each triangle
// sits in exactly two flips), found here by GF(2) elimination.
FlipSet isotropic_flips_generic(const ZetaFamily& zf);

}  // namespace pentagon

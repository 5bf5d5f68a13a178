#pragma once

#include "pentagon/metric.hpp"
#include "pentagon/weights.hpp"

namespace pentagon {

// Vertex parameter of the nilpotent-deformation family: the 2 x 2 matrix
// lambda * I + mu * E with E = [[1, i], [i, -1]], E^2 = 0.
struct LmPoint {
  double lambda = 0.0;
  double mu = 0.0;
};

using LmFamily = std::array<LmPoint, 5>;

CMatrix lm_nilpotent();  // E
CMatrix lm_matrix(double lambda, double mu);

// Components of a matrix of the form lambda * I + mu * E; throws
// DegenerateParameters when m is not of that shape within tol * scale.
struct LmParts {
  Complex lambda, mu;
};

LmParts lm_parts(const CMatrix& m, double tol = 1e-9);

// Symmetric n = 2 family built from lm_matrix per vertex. All lambda must be
// pairwise distinct (the pair differences have determinant lambda_ij^2).
ZetaFamily zeta_from_lm(const LmFamily& p);

// Coupling of the mu differences across the first tetrahedron; vanishes exactly
// when all four mu agree.
double mu_coupling(const LmFamily& p);

// The same number as a 3 x 3 determinant (independent evaluation route).
double mu_coupling_det(const LmFamily& p);

// Closed form of the first flip's nontrivial 4 x 4 block in the paired isotropic
// basis. Rows 1 and 3 (0-based 0 and 2) carry exact zeros in columns 2 and 4.
CMatrix exotic_flip_block(const LmFamily& p);

// max |entry| over the four structurally zero positions of an exotic block
double exotic_zero_mass(const CMatrix& block);

// Basis change tuned to lm-form Gramians: a * gram * a^T = [[0,1],[1,0]], with the
// free per-triangle scale on the two rows as diag(scale, 1/scale).
CMatrix exotic_a(const CMatrix& gram, Complex scale = 1.0);

using ScaleProvider = std::function<Complex(const Triple&)>;

// Isotropic flips of the lm family using exotic_a per triangle (scale defaults
// to 1, which reproduces exotic_flip_block in the first flip's block exactly).
FlipSet exotic_flips(const LmFamily& p, const ScaleProvider& scale = {});

// Writes sample as diag(left) * reference * diag(right) by propagating entry
// ratios across the nonzero pattern of reference; residual is the relative
// reconstruction error (small iff the two matrices differ by such a conjugation).
struct DiagonalConjugation {
  Eigen::VectorXcd left, right;
  double residual;
};

DiagonalConjugation solve_diagonal_conjugation(const CMatrix& reference, const CMatrix& sample,
                                               double zero_tol = 1e-12);

// |a * c - delta|: zero exactly on weights carrying the exotic torsion, 1 on the
// unit-b reference weight with a = c = 0.
double check_constraint_u(const GaussWeight& w);

}  // namespace pentagon

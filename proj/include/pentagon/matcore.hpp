#pragma once

#include <Eigen/Dense>
#include <complex>

#include "pentagon/errors.hpp"

namespace pentagon {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kDefaultConditionCap = 1e12;

// Largest entry magnitude (0 for an empty matrix).
double max_abs(const CMatrix& m);

double sym_residual(const CMatrix& m);
bool is_symmetric(const CMatrix& m, double tol = 1e-10);

// Throws SingularMatrix if any entry is NaN or infinite.
void ensure_finite(const CMatrix& m, const char* what);

// Inverse with an infinity-norm condition estimate; throws SingularMatrix if the
// estimate exceeds cap or the matrix is rank deficient.
CMatrix inverse(const CMatrix& m, double cond_cap = kDefaultConditionCap);

// Solves X * a = b for full-row-rank a (rows of b must lie in the row space of a).
// Throws SingularMatrix on rank deficiency or a large solve residual.
CMatrix solve_right(const CMatrix& b, const CMatrix& a);

struct TakagiResult {
  CMatrix q;               // unitary
  Eigen::VectorXd sigma;   // nonnegative, descending
};

// Symmetric Takagi decomposition m = q * diag(sigma) * q^T for complex symmetric m.
// Throws NotSymmetric if m is not symmetric within tol * scale.
TakagiResult takagi(const CMatrix& m, double sym_tol = 1e-10);

// Returns c with c * c^T = m (c = q * diag(sqrt(sigma))). Throws SingularMatrix if m
// is singular beyond cond_cap, NotSymmetric if m is not symmetric.
CMatrix factor_sym(const CMatrix& m, double cond_cap = kDefaultConditionCap);

}  // namespace pentagon

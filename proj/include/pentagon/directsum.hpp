#pragma once

#include <array>
#include <functional>

#include "pentagon/matcore.hpp"

namespace pentagon {

// Triangle on vertices of the 5-point complex, 1 <= i < j < k <= 5.
struct Triple {
  int i, j, k;
  friend bool operator==(const Triple&, const Triple&) = default;
};

// Five n x n parameter matrices, one per vertex. All pairwise differences must be
// invertible. Symmetry is required by the metric modules; the flag relaxes it for
// the metric-free construction.
struct ZetaFamily {
  int n = 0;
  bool symmetric = true;
  std::array<CMatrix, 5> zeta;

  const CMatrix& z(int vertex) const { return zeta[static_cast<std::size_t>(vertex - 1)]; }
};

ZetaFamily make_zeta_family(std::array<CMatrix, 5> mats, bool require_symmetric = true,
                            double cond_cap = kDefaultConditionCap);

// zeta_i - zeta_j
CMatrix zeta_diff(const ZetaFamily& zf, int i, int j);

// Basis of the triangle space ijk: n rows in C^{5n} annihilated by both defining
// block relations, with block i equal to lead.
struct TriangleBasis {
  Triple triple;
  std::array<CMatrix, 5> blocks;  // n x n each; zero off the triple
  CMatrix stacked() const;        // n x 5n
};

TriangleBasis triangle_basis(const ZetaFamily& zf, const Triple& t);
TriangleBasis triangle_basis(const ZetaFamily& zf, const Triple& t, const CMatrix& lead);

// Residual of the two defining row relations; ~1e-15 for well-conditioned input.
double basis_relation_residual(const ZetaFamily& zf, const TriangleBasis& b);

// The five flips. Each is 3n x 3n, identity outside a 2n x 2n block whose slot
// pair is fixed per flip (block sparsity pattern).
struct FlipSet {
  int n = 0;
  CMatrix P, Q, R, S, T;
};

struct FlipInfo {
  char name;
  std::array<Triple, 3> before;  // stacked in digit-sum order
  std::array<Triple, 3> after;
  std::array<int, 2> slots;      // the two changing slots (0-based)
  std::array<int, 4> tet;        // tetrahedron vertices
};

const std::array<FlipInfo, 5>& flip_table();

using LeadProvider = std::function<CMatrix(const Triple&)>;

FlipSet build_flips(const ZetaFamily& zf);
FlipSet build_flips_with_leads(const ZetaFamily& zf, const LeadProvider& lead);

// max-abs entry of Q*P - T*S*R
double check_pentagon(const FlipSet& fs);

const CMatrix& flip_matrix(const FlipSet& fs, int which);  // 0..4 = P..T

// Extract / place the nontrivial 2n x 2n block for a slot pair.
CMatrix flip_block(const CMatrix& flip, const std::array<int, 2>& slots, int n);
CMatrix embed_flip_block(const CMatrix& block, const std::array<int, 2>& slots, int n);

// Entries outside the flip's sparsity pattern (should be exactly zero by construction).
double off_pattern_mass(const CMatrix& flip, const std::array<int, 2>& slots, int n);

// --- scalar specialization (n = 1): rotation solution -----------------------------

struct AnglePair {
  Complex cos_phi, sin_phi;
};

// Angle data for the tetrahedron on (zi, zj, zk, zl); principal square roots with
// explicit branch signs (no global branch rule is imposed for complex input).
AnglePair kashaev_angles(const std::array<Complex, 4>& zeta4, int cos_branch = +1,
                         int sin_branch = +1);

// The five 3 x 3 rotation factors assembled as a FlipSet (n = 1).
FlipSet kashaev_flipset(const std::array<Complex, 5>& zeta5, int cos_branch = +1,
                        int sin_branch = +1);

}  // namespace pentagon

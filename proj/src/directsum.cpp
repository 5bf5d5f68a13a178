#include "pentagon/directsum.hpp"

#include <cmath>
#include <string>

namespace pentagon {

ZetaFamily make_zeta_family(std::array<CMatrix, 5> mats, bool require_symmetric,
                            double cond_cap) {
  ZetaFamily zf;
  zf.n = static_cast<int>(mats[0].rows());
  if (zf.n < 1) throw DegenerateParameters("zeta family: empty matrices");
  for (int v = 0; v < 5; ++v) {
    const CMatrix& m = mats[static_cast<std::size_t>(v)];
    if (m.rows() != zf.n || m.cols() != zf.n)
      throw DegenerateParameters("zeta family: zeta" + std::to_string(v + 1) + " has wrong shape");
    ensure_finite(m, "zeta family");
    if (require_symmetric && !is_symmetric(m))
      throw NotSymmetric("zeta family: zeta" + std::to_string(v + 1) + " not symmetric");
  }
  zf.symmetric = require_symmetric;
  zf.zeta = std::move(mats);
  for (int i = 1; i <= 5; ++i)
    for (int j = i + 1; j <= 5; ++j) {
      try {
        (void)inverse(zeta_diff(zf, i, j), cond_cap);
      } catch (const SingularMatrix&) {
        throw SingularMatrix("zeta family: zeta" + std::to_string(i) + " - zeta" +
                             std::to_string(j) + " not invertible under the condition cap");
      }
    }
  return zf;
}

CMatrix zeta_diff(const ZetaFamily& zf, int i, int j) { return zf.z(i) - zf.z(j); }

CMatrix TriangleBasis::stacked() const {
  int n = static_cast<int>(blocks[0].rows());
  CMatrix m = CMatrix::Zero(n, 5 * n);
  for (int v = 0; v < 5; ++v) m.middleCols(v * n, n) = blocks[static_cast<std::size_t>(v)];
  return m;
}

TriangleBasis triangle_basis(const ZetaFamily& zf, const Triple& t) {
  return triangle_basis(zf, t, CMatrix::Identity(zf.n, zf.n));
}

TriangleBasis triangle_basis(const ZetaFamily& zf, const Triple& t, const CMatrix& lead) {
  TriangleBasis b;
  b.triple = t;
  for (auto& blk : b.blocks) blk = CMatrix::Zero(zf.n, zf.n);
  // Block i carries the lead; blocks j and k are fixed by the two row relations.
  b.blocks[static_cast<std::size_t>(t.i - 1)] = lead;
  b.blocks[static_cast<std::size_t>(t.j - 1)] = lead * zeta_diff(zf, t.i, t.k) * inverse(zeta_diff(zf, t.k, t.j));
  b.blocks[static_cast<std::size_t>(t.k - 1)] = lead * zeta_diff(zf, t.i, t.j) * inverse(zeta_diff(zf, t.j, t.k));
  return b;
}

double basis_relation_residual(const ZetaFamily& zf, const TriangleBasis& b) {
  CMatrix sum = CMatrix::Zero(zf.n, zf.n);
  CMatrix wsum = CMatrix::Zero(zf.n, zf.n);
  for (int v = 1; v <= 5; ++v) {
    sum += b.blocks[static_cast<std::size_t>(v - 1)];
    wsum += b.blocks[static_cast<std::size_t>(v - 1)] * zf.z(v);
  }
  return std::max(max_abs(sum), max_abs(wsum));
}

const std::array<FlipInfo, 5>& flip_table() {
  static const std::array<FlipInfo, 5> table = {{
      {'P',
       {{{1, 2, 4}, {2, 3, 4}, {1, 4, 5}}},
       {{{1, 2, 3}, {1, 3, 4}, {1, 4, 5}}},
       {0, 1},
       {1, 2, 3, 4}},
      {'Q',
       {{{1, 2, 3}, {1, 3, 4}, {1, 4, 5}}},
       {{{1, 2, 3}, {1, 3, 5}, {3, 4, 5}}},
       {1, 2},
       {1, 3, 4, 5}},
      {'R',
       {{{1, 2, 4}, {2, 3, 4}, {1, 4, 5}}},
       {{{1, 2, 5}, {2, 3, 4}, {2, 4, 5}}},
       {0, 2},
       {1, 2, 4, 5}},
      {'S',
       {{{1, 2, 5}, {2, 3, 4}, {2, 4, 5}}},
       {{{1, 2, 5}, {2, 3, 5}, {3, 4, 5}}},
       {1, 2},
       {2, 3, 4, 5}},
      {'T',
       {{{1, 2, 5}, {2, 3, 5}, {3, 4, 5}}},
       {{{1, 2, 3}, {1, 3, 5}, {3, 4, 5}}},
       {0, 1},
       {1, 2, 3, 5}},
  }};
  return table;
}

namespace {

CMatrix vstack2(const CMatrix& a, const CMatrix& b) {
  CMatrix m(a.rows() + b.rows(), a.cols());
  m.topRows(a.rows()) = a;
  m.bottomRows(b.rows()) = b;
  return m;
}

CMatrix build_one_flip(const ZetaFamily& zf, const FlipInfo& info, const LeadProvider& lead) {
  int n = zf.n;
  auto basis = [&](const Triple& t) { return triangle_basis(zf, t, lead(t)).stacked(); };
  int s1 = info.slots[0], s2 = info.slots[1];
  CMatrix fb = vstack2(basis(info.before[static_cast<std::size_t>(s1)]),
                       basis(info.before[static_cast<std::size_t>(s2)]));
  CMatrix fa = vstack2(basis(info.after[static_cast<std::size_t>(s1)]),
                       basis(info.after[static_cast<std::size_t>(s2)]));
  CMatrix block = solve_right(fa, fb);
  return embed_flip_block(block, info.slots, n);
}

}  // namespace

FlipSet build_flips(const ZetaFamily& zf) {
  CMatrix id = CMatrix::Identity(zf.n, zf.n);
  return build_flips_with_leads(zf, [&](const Triple&) { return id; });
}

FlipSet build_flips_with_leads(const ZetaFamily& zf, const LeadProvider& lead) {
  const auto& table = flip_table();
  FlipSet fs;
  fs.n = zf.n;
  fs.P = build_one_flip(zf, table[0], lead);
  fs.Q = build_one_flip(zf, table[1], lead);
  fs.R = build_one_flip(zf, table[2], lead);
  fs.S = build_one_flip(zf, table[3], lead);
  fs.T = build_one_flip(zf, table[4], lead);
  return fs;
}

double check_pentagon(const FlipSet& fs) { return max_abs(fs.Q * fs.P - fs.T * fs.S * fs.R); }

const CMatrix& flip_matrix(const FlipSet& fs, int which) {
  switch (which) {
    case 0: return fs.P;
    case 1: return fs.Q;
    case 2: return fs.R;
    case 3: return fs.S;
    default: return fs.T;
  }
}

CMatrix flip_block(const CMatrix& flip, const std::array<int, 2>& slots, int n) {
  CMatrix b(2 * n, 2 * n);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      b.block(r * n, c * n, n, n) = flip.block(slots[static_cast<std::size_t>(r)] * n,
                                               slots[static_cast<std::size_t>(c)] * n, n, n);
  return b;
}

CMatrix embed_flip_block(const CMatrix& block, const std::array<int, 2>& slots, int n) {
  CMatrix m = CMatrix::Identity(3 * n, 3 * n);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      m.block(slots[static_cast<std::size_t>(r)] * n, slots[static_cast<std::size_t>(c)] * n, n,
              n) = block.block(r * n, c * n, n, n);
  return m;
}

double off_pattern_mass(const CMatrix& flip, const std::array<int, 2>& slots, int n) {
  CMatrix rebuilt = embed_flip_block(flip_block(flip, slots, n), slots, n);
  return max_abs(flip - rebuilt);
}

AnglePair kashaev_angles(const std::array<Complex, 4>& z, int cos_branch, int sin_branch) {
  auto d = [&](int a, int b) {
    Complex v = z[static_cast<std::size_t>(a)] - z[static_cast<std::size_t>(b)];
    if (std::abs(v) == 0.0) throw DegenerateParameters("kashaev_angles: coincident parameters");
    return v;
  };
  Complex denom = d(0, 2) * d(1, 3);
  AnglePair p;
  p.cos_phi = static_cast<double>(cos_branch) * std::sqrt(d(0, 3) * d(1, 2) / denom);
  p.sin_phi = static_cast<double>(sin_branch) * std::sqrt(d(0, 1) * d(2, 3) / denom);
  return p;
}

namespace {

// Rotation embedded per the flip's slot pair. The corner pattern (slots 0,2) places
// +sin in the upper right; the adjacent patterns follow the block-sparsity layout.
CMatrix rotation_for_slots(const AnglePair& a, const std::array<int, 2>& slots) {
  CMatrix m = CMatrix::Identity(3, 3);
  Complex c = a.cos_phi, s = a.sin_phi;
  if (slots == std::array<int, 2>{0, 1}) {
    m(0, 0) = c; m(0, 1) = -s;
    m(1, 0) = s; m(1, 1) = c;
  } else if (slots == std::array<int, 2>{1, 2}) {
    m(1, 1) = c; m(1, 2) = s;
    m(2, 1) = -s; m(2, 2) = c;
  } else {
    m(0, 0) = c; m(0, 2) = s;
    m(2, 0) = -s; m(2, 2) = c;
  }
  return m;
}

}  // namespace

FlipSet kashaev_flipset(const std::array<Complex, 5>& z, int cos_branch, int sin_branch) {
  const auto& table = flip_table();
  FlipSet fs;
  fs.n = 1;
  std::array<CMatrix, 5> mats;
  for (std::size_t f = 0; f < 5; ++f) {
    std::array<Complex, 4> corner;
    for (int v = 0; v < 4; ++v)
      corner[static_cast<std::size_t>(v)] =
          z[static_cast<std::size_t>(table[f].tet[static_cast<std::size_t>(v)] - 1)];
    mats[f] = rotation_for_slots(kashaev_angles(corner, cos_branch, sin_branch), table[f].slots);
  }
  fs.P = mats[0]; fs.Q = mats[1]; fs.R = mats[2]; fs.S = mats[3]; fs.T = mats[4];
  return fs;
}

}  // namespace pentagon

#include "pentagon/exotic.hpp"

#include <cmath>
#include <deque>

namespace pentagon {

namespace {
constexpr Complex kI{0.0, 1.0};
}

CMatrix lm_nilpotent() {
  CMatrix e(2, 2);
  e << 1.0, kI, kI, -1.0;
  return e;
}

CMatrix lm_matrix(double lambda, double mu) {
  return lambda * CMatrix::Identity(2, 2) + mu * lm_nilpotent();
}

LmParts lm_parts(const CMatrix& m, double tol) {
  if (m.rows() != 2 || m.cols() != 2) throw DegenerateParameters("lm_parts: not 2x2");
  LmParts p;
  p.lambda = (m(0, 0) + m(1, 1)) / 2.0;
  p.mu = (m(0, 0) - m(1, 1)) / 2.0;
  double scale = std::max(1e-300, max_abs(m));
  if (max_abs(m - (p.lambda * CMatrix::Identity(2, 2) + p.mu * lm_nilpotent())) > tol * scale)
    throw DegenerateParameters("lm_parts: matrix is not lambda*I + mu*E");
  return p;
}

ZetaFamily zeta_from_lm(const LmFamily& p) {
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = i + 1; j < 5; ++j)
      if (p[i].lambda == p[j].lambda)
        throw DegenerateParameters("lm family: coincident lambda values");
  std::array<CMatrix, 5> mats;
  for (std::size_t v = 0; v < 5; ++v) mats[v] = lm_matrix(p[v].lambda, p[v].mu);
  return make_zeta_family(std::move(mats));
}

namespace {

double ld(const LmFamily& p, int i, int j) { return p[i - 1].lambda - p[j - 1].lambda; }
double md(const LmFamily& p, int i, int j) { return p[i - 1].mu - p[j - 1].mu; }

void require_distinct_lambda4(const LmFamily& p) {
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j)
      if (ld(p, j, i) == 0.0)
        throw DegenerateParameters("lm family: coincident lambda values");
}

}  // namespace

double mu_coupling(const LmFamily& p) {
  require_distinct_lambda4(p);
  return md(p, 2, 1) * ld(p, 3, 1) * ld(p, 4, 1) * ld(p, 4, 3) -
         md(p, 3, 1) * ld(p, 2, 1) * ld(p, 4, 1) * ld(p, 4, 2) +
         md(p, 4, 1) * ld(p, 2, 1) * ld(p, 3, 1) * ld(p, 3, 2);
}

double mu_coupling_det(const LmFamily& p) {
  require_distinct_lambda4(p);
  Eigen::Matrix3d m;
  for (int col = 0; col < 3; ++col) {
    double l = ld(p, col + 2, 1);
    m(0, col) = md(p, col + 2, 1);
    m(1, col) = l;
    m(2, col) = l * l;
  }
  return m.determinant();
}

CMatrix exotic_flip_block(const LmFamily& p) {
  require_distinct_lambda4(p);
  double l21 = ld(p, 2, 1), l31 = ld(p, 3, 1), l41 = ld(p, 4, 1);
  double l32 = ld(p, 3, 2), l42 = ld(p, 4, 2), l43 = ld(p, 4, 3);
  double a = mu_coupling(p);
  CMatrix m = CMatrix::Zero(4, 4);
  m(0, 0) = l32 * l41 / (l31 * l42);
  m(0, 2) = -l32 / l31;
  m(1, 0) = -l21 * a / (l31 * l32 * l42 * l42);
  m(1, 1) = 1.0;
  m(1, 2) = -a / (l31 * l42 * l43);
  m(1, 3) = -l21 * l43 / (l32 * l42);
  m(2, 0) = l21 * l43 / (l31 * l42);
  m(2, 2) = l32 / l31;
  m(3, 0) = l41 * a / (l31 * l42 * l42 * l43);
  m(3, 1) = 1.0;
  m(3, 2) = -a / (l31 * l42 * l43);
  m(3, 3) = l41 / l42;
  return m;
}

double exotic_zero_mass(const CMatrix& block) {
  if (block.rows() != 4 || block.cols() != 4)
    throw DegenerateParameters("exotic_zero_mass: not 4x4");
  double m = 0.0;
  for (int r : {0, 2})
    for (int c : {1, 3}) m = std::max(m, std::abs(block(r, c)));
  return m;
}

CMatrix exotic_a(const CMatrix& gram, Complex scale) {
  LmParts g = lm_parts(gram);
  if (std::abs(g.lambda) <= 1e-12 * std::max(1.0, max_abs(gram)))
    throw DegenerateGram("exotic_a: lambda part of the Gramian vanishes");
  if (scale == Complex(0.0)) throw DegenerateParameters("exotic_a: zero scale");
  CMatrix a(2, 2);
  a << 2.0, 2.0 * kI, g.lambda - g.mu, -kI * (g.lambda + g.mu);
  a.row(0) *= scale;
  a.row(1) *= 1.0 / scale;
  return a / (2.0 * g.lambda);
}

FlipSet exotic_flips(const LmFamily& p, const ScaleProvider& scale) {
  ZetaFamily zf = zeta_from_lm(p);
  AProvider provider = [&zf, &scale](const Triple& t) {
    Complex c = scale ? scale(t) : Complex(1.0);
    return exotic_a(triangle_gram(zf, t), c);
  };
  return isotropic_flips(zf, provider);
}

DiagonalConjugation solve_diagonal_conjugation(const CMatrix& reference, const CMatrix& sample,
                                               double zero_tol) {
  if (reference.rows() != sample.rows() || reference.cols() != sample.cols())
    throw DegenerateParameters("solve_diagonal_conjugation: shape mismatch");
  Eigen::Index nr = reference.rows(), nc = reference.cols();
  double cutoff = zero_tol * std::max(1.0, max_abs(reference));

  DiagonalConjugation out;
  out.left = Eigen::VectorXcd::Zero(nr);
  out.right = Eigen::VectorXcd::Zero(nc);
  std::vector<bool> lknown(static_cast<std::size_t>(nr), false);
  std::vector<bool> rknown(static_cast<std::size_t>(nc), false);

  // Propagate ratios across connected components of the nonzero pattern; each
  // component carries one gauge degree of freedom, fixed by seeding left = 1.
  for (Eigen::Index seed = 0; seed < nr; ++seed) {
    if (lknown[static_cast<std::size_t>(seed)]) continue;
    out.left(seed) = 1.0;
    lknown[static_cast<std::size_t>(seed)] = true;
    std::deque<std::pair<bool, Eigen::Index>> queue{{true, seed}};
    while (!queue.empty()) {
      auto [is_row, idx] = queue.front();
      queue.pop_front();
      if (is_row) {
        for (Eigen::Index j = 0; j < nc; ++j) {
          if (rknown[static_cast<std::size_t>(j)] || std::abs(reference(idx, j)) <= cutoff)
            continue;
          out.right(j) = sample(idx, j) / (reference(idx, j) * out.left(idx));
          rknown[static_cast<std::size_t>(j)] = true;
          queue.emplace_back(false, j);
        }
      } else {
        for (Eigen::Index i = 0; i < nr; ++i) {
          if (lknown[static_cast<std::size_t>(i)] || std::abs(reference(i, idx)) <= cutoff)
            continue;
          out.left(i) = sample(i, idx) / (reference(i, idx) * out.right(idx));
          lknown[static_cast<std::size_t>(i)] = true;
          queue.emplace_back(true, i);
        }
      }
    }
  }
  for (Eigen::Index j = 0; j < nc; ++j)
    if (!rknown[static_cast<std::size_t>(j)]) out.right(j) = 1.0;

  CMatrix rebuilt = out.left.asDiagonal() * reference * out.right.asDiagonal();
  out.residual = max_abs(rebuilt - sample) / std::max(1.0, max_abs(sample));
  return out;
}

double check_constraint_u(const GaussWeight& w) { return std::abs(w.a * w.c - w.delta()); }

}  // namespace pentagon

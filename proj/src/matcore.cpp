#include "pentagon/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace pentagon {

double max_abs(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

double sym_residual(const CMatrix& m) { return max_abs(m - m.transpose().eval()); }

bool is_symmetric(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  double scale = std::max(1.0, max_abs(m));
  return sym_residual(m) <= tol * scale;
}

void ensure_finite(const CMatrix& m, const char* what) {
  if (!m.allFinite()) throw SingularMatrix(std::string(what) + ": non-finite entries");
}

namespace {

double inf_op_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

}  // namespace

CMatrix inverse(const CMatrix& m, double cond_cap) {
  if (m.rows() != m.cols()) throw SingularMatrix("inverse: matrix not square");
  if (m.rows() == 0) return m;
  Eigen::FullPivLU<CMatrix> lu(m);
  if (!lu.isInvertible()) throw SingularMatrix("inverse: rank deficient");
  CMatrix inv = lu.inverse();
  ensure_finite(inv, "inverse");
  double cond = inf_op_norm(m) * inf_op_norm(inv);
  if (!(cond <= cond_cap))
    throw SingularMatrix("inverse: condition estimate " + std::to_string(cond) + " exceeds cap");
  return inv;
}

CMatrix solve_right(const CMatrix& b, const CMatrix& a) {
  // X * a = b  <=>  a^T X^T = b^T
  if (a.cols() != b.cols()) throw SingularMatrix("solve_right: shape mismatch");
  Eigen::CompleteOrthogonalDecomposition<CMatrix> cod(a.transpose());
  if (cod.rank() < a.rows()) throw SingularMatrix("solve_right: stacked basis rank deficient");
  CMatrix x = cod.solve(b.transpose()).transpose();
  ensure_finite(x, "solve_right");
  double scale = std::max({1.0, max_abs(a), max_abs(b)});
  if (max_abs(x * a - b) > 1e-8 * scale)
    throw SingularMatrix("solve_right: residual too large, rows outside span");
  return x;
}

namespace {

// Sign gauge per Takagi vector: make the largest entry's real part positive
// (imaginary part positive when the real part is negligible). Only +-1 is a
// valid gauge here; a general phase breaks m * conj(z) = sigma * z.
void normalize_column_sign(Eigen::VectorXcd& z) {
  Eigen::Index imax = 0;
  z.cwiseAbs().maxCoeff(&imax);
  Complex w = z(imax);
  bool flip = w.real() < 0.0 || (std::abs(w.real()) <= 1e-14 * std::abs(w.imag()) && w.imag() < 0.0);
  if (flip) z = -z;
}

TakagiResult takagi_diagonal(const CMatrix& m) {
  Eigen::Index n = m.rows();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return std::abs(m(a, a)) > std::abs(m(b, b)); });
  TakagiResult r;
  r.q = CMatrix::Zero(n, n);
  r.sigma = Eigen::VectorXd(n);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index src = order[static_cast<std::size_t>(col)];
    Complex d = m(src, src);
    double s = std::abs(d);
    r.sigma(col) = s;
    r.q(src, col) = s == 0.0 ? Complex(1.0, 0.0) : std::sqrt(d / s);
    Eigen::VectorXcd z = r.q.col(col);
    normalize_column_sign(z);
    r.q.col(col) = z;
  }
  return r;
}

}  // namespace

TakagiResult takagi(const CMatrix& m, double sym_tol) {
  if (m.rows() != m.cols()) throw NotSymmetric("takagi: matrix not square");
  double scale = std::max(1.0, max_abs(m));
  if (sym_residual(m) > sym_tol * scale) throw NotSymmetric("takagi: matrix not symmetric");
  Eigen::Index n = m.rows();
  if (n == 0) return {CMatrix(0, 0), Eigen::VectorXd(0)};

  CMatrix a = (m + m.transpose().eval()) / 2.0;
  if (a.cwiseAbs().sum() == a.diagonal().cwiseAbs().sum()) return takagi_diagonal(a);

  // Real symmetric embedding: eigenvectors (u; v) of [[Re a, Im a], [Im a, -Re a]]
  // with eigenvalue sigma >= 0 give con-eigenvectors z = u + i v, a * conj(z) = sigma z.
  Eigen::MatrixXd big(2 * n, 2 * n);
  big.topLeftCorner(n, n) = a.real();
  big.topRightCorner(n, n) = a.imag();
  big.bottomLeftCorner(n, n) = a.imag();
  big.bottomRightCorner(n, n) = -a.real();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(big);
  if (es.info() != Eigen::Success) throw SingularMatrix("takagi: eigensolver failed");

  double zero_tol = 1e-13 * std::max(1.0, std::abs(es.eigenvalues()(2 * n - 1)));
  std::vector<std::pair<double, Eigen::VectorXcd>> picked;
  std::vector<Eigen::VectorXd> zero_vecs;
  for (Eigen::Index i = 0; i < 2 * n; ++i) {
    double ev = es.eigenvalues()(i);
    if (ev > zero_tol) {
      Eigen::VectorXcd z = es.eigenvectors().col(i).head(n) +
                           Complex(0, 1) * es.eigenvectors().col(i).tail(n);
      picked.emplace_back(ev, std::move(z));
    } else if (ev >= -zero_tol) {
      zero_vecs.push_back(es.eigenvectors().col(i));
    }
  }
  // The zero eigenspace is invariant under w = (u; v) |-> (-v; u); keep one vector
  // per such pair, projecting the partner direction out of the remainder.
  std::size_t want_zero = static_cast<std::size_t>(n) - picked.size();
  std::vector<Eigen::VectorXd> kept;
  for (const auto& w0 : zero_vecs) {
    if (kept.size() >= 2 * want_zero) break;
    Eigen::VectorXd w = w0;
    for (const auto& k : kept) w -= k.dot(w) * k;
    if (w.norm() < 1e-8) continue;
    w.normalize();
    Eigen::VectorXd jw(2 * n);
    jw.head(n) = -w.tail(n);
    jw.tail(n) = w.head(n);
    kept.push_back(w);
    kept.push_back(jw);
    picked.emplace_back(0.0, (w.head(n) + Complex(0, 1) * w.tail(n)).eval());
  }
  if (picked.size() != static_cast<std::size_t>(n))
    throw SingularMatrix("takagi: con-eigenvector selection failed");

  std::stable_sort(picked.begin(), picked.end(),
                   [](const auto& x, const auto& y) { return x.first > y.first; });

  TakagiResult r;
  r.q = CMatrix(n, n);
  r.sigma = Eigen::VectorXd(n);
  for (Eigen::Index c = 0; c < n; ++c) {
    r.sigma(c) = picked[static_cast<std::size_t>(c)].first;
    Eigen::VectorXcd z = picked[static_cast<std::size_t>(c)].second;
    normalize_column_sign(z);
    r.q.col(c) = z;
  }
  ensure_finite(r.q, "takagi");
  return r;
}

CMatrix factor_sym(const CMatrix& m, double cond_cap) {
  TakagiResult t = takagi(m);
  Eigen::Index n = m.rows();
  if (n == 0) return m;
  double smax = t.sigma(0);
  double smin = t.sigma(n - 1);
  if (smax == 0.0 || smin == 0.0 || smax / smin > cond_cap)
    throw SingularMatrix("factor_sym: singular within condition cap");
  CMatrix c = t.q * t.sigma.cwiseSqrt().asDiagonal();
  ensure_finite(c, "factor_sym");
  return c;
}

}  // namespace pentagon

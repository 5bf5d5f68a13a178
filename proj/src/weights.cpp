#include "pentagon/weights.hpp"

#include <algorithm>
#include <cmath>

#include "pentagon/metric.hpp"

namespace pentagon {

std::string GeneratorLabel::name() const {
  return "x" + std::to_string(triple.i) + std::to_string(triple.j) + std::to_string(triple.k);
}

const std::vector<GeneratorLabel>& face_table() {
  static const std::vector<GeneratorLabel> table = [] {
    std::vector<Triple> faces;
    for (int i = 1; i <= 5; ++i)
      for (int j = i + 1; j <= 5; ++j)
        for (int k = j + 1; k <= 5; ++k) faces.push_back({i, j, k});
    std::sort(faces.begin(), faces.end(), [](const Triple& a, const Triple& b) {
      int sa = a.i + a.j + a.k, sb = b.i + b.j + b.k;
      if (sa != sb) return sa < sb;
      return std::array{a.i, a.j, a.k} < std::array{b.i, b.j, b.k};
    });
    std::vector<GeneratorLabel> t;
    for (std::size_t p = 0; p < faces.size(); ++p)
      t.push_back({faces[p], static_cast<int>(p)});
    return t;
  }();
  return table;
}

int face_position(const Triple& t) {
  for (const auto& lbl : face_table())
    if (lbl.triple == t) return lbl.position;
  throw GeneratorMismatch("face_position: no such triangle");
}

const std::array<TetWiring, 5>& tet_wirings() {
  static const std::array<TetWiring, 5> w = [] {
    std::array<TetWiring, 5> out;
    const auto& flips = flip_table();
    for (std::size_t f = 0; f < 5; ++f) {
      const FlipInfo& fi = flips[f];
      int s1 = fi.slots[0], s2 = fi.slots[1];
      out[f].tet = fi.tet;
      out[f].x1 = fi.before[static_cast<std::size_t>(s1)];
      out[f].x2 = fi.before[static_cast<std::size_t>(s2)];
      out[f].y1 = fi.after[static_cast<std::size_t>(s1)];
      out[f].y2 = fi.after[static_cast<std::size_t>(s2)];
    }
    return out;
  }();
  return w;
}

Complex GaussWeight::delta() const { return b[0][0] * b[1][1] - b[0][1] * b[1][0]; }

GaussWeight make_gauss_weight(Complex a, const std::array<std::array<Complex, 2>, 2>& b,
                              Complex c, const TetWiring& faces) {
  GaussWeight w;
  w.a = a;
  w.b = b;
  w.c = c;
  w.faces = faces;
  double scale = 0.0;
  for (const auto& row : b)
    for (Complex v : row) scale = std::max(scale, std::abs(v));
  if (std::abs(w.delta()) <= 1e-14 * std::max(1e-280, scale * scale))
    throw DegenerateDelta("gauss weight: delta vanishes");
  return w;
}

namespace {

GrassmannElement weight_exponent(const GaussWeight& w, int num_gens,
                                 const std::array<int, 4>& gens) {
  auto gen = [&](int slot) { return GrassmannElement::generator(num_gens, gens[static_cast<std::size_t>(slot)]); };
  GrassmannElement x1 = gen(0), x2 = gen(1), y1 = gen(2), y2 = gen(3);
  GrassmannElement q = w.a * (x1 * x2) + w.c * (y1 * y2);
  q += w.b[0][0] * (x1 * y1) + w.b[0][1] * (x1 * y2);
  q += w.b[1][0] * (x2 * y1) + w.b[1][1] * (x2 * y2);
  return q;
}

std::array<int, 4> global_gens(const TetWiring& f) {
  return {face_position(f.x1), face_position(f.x2), face_position(f.y1), face_position(f.y2)};
}

}  // namespace

GrassmannElement weight_element(const GaussWeight& w) {
  return g_exp(weight_exponent(w, kNumFaces, global_gens(w.faces)));
}

GrassmannElement weight_element_local(const GaussWeight& w) {
  return g_exp(weight_exponent(w, 4, {0, 1, 2, 3}));
}

CMatrix canonical_matrix(const GaussWeight& w) {
  Complex d = w.delta();
  if (std::abs(d) == 0.0) throw DegenerateDelta("canonical_matrix: delta vanishes");
  Complex a = w.a, c = w.c;
  const auto& b = w.b;
  Complex acd = a * c - d;
  CMatrix m(4, 4);
  m << c * b[1][0], b[0][0] * acd, -c * b[0][0], b[1][0] * acd,
      -b[1][1], -a * b[0][1], b[0][1], -a * b[1][1],
      c * b[1][1], b[0][1] * acd, -c * b[0][1], b[1][1] * acd,
      b[1][0], a * b[0][0], -b[0][0], a * b[1][0];
  return m / d;
}

double verify_canonical(const GaussWeight& w) {
  const int x1 = 0, x2 = 1, y1 = 2, y2 = 3;
  GrassmannElement wl = weight_element_local(w);
  CMatrix m = canonical_matrix(w);

  auto kernel = [&](const GrassmannElement& f) { return berezin(wl * f, {x1, x2}); };
  using Op = std::function<GrassmannElement(const GrassmannElement&)>;
  auto dgen = [](int i) {
    return Op([i](const GrassmannElement& f) { return left_deriv(i, f); });
  };
  auto mgen = [](int i) {
    return Op([i](const GrassmannElement& f) {
      return GrassmannElement::generator(f.num_gens(), i) * f;
    });
  };
  std::array<Op, 4> dx = {dgen(x1), mgen(x1), dgen(x2), mgen(x2)};
  std::array<Op, 4> dy = {dgen(y1), mgen(y1), dgen(y2), mgen(y2)};

  double residual = 0.0;
  for (std::uint32_t fmask : {0u, 1u << x1, 1u << x2, (1u << x1) | (1u << x2)}) {
    GrassmannElement f = GrassmannElement::monomial(4, fmask, 1.0);
    GrassmannElement kf = kernel(f);
    for (int r = 0; r < 4; ++r) {
      GrassmannElement lhs = dy[static_cast<std::size_t>(r)](kf);
      GrassmannElement pushed(4);
      for (int col = 0; col < 4; ++col)
        pushed += m(r, col) * dx[static_cast<std::size_t>(col)](f);
      GrassmannElement rhs = kernel(pushed);
      residual = std::max(residual, (lhs - rhs).max_abs_coeff());
    }
  }
  return residual;
}

GaussWeight weight_from_matrix(const CMatrix& m, const TetWiring& faces, double tol) {
  if (m.rows() != 4 || m.cols() != 4) throw NotGaussianGeneric("weight_from_matrix: not 4x4");
  Complex den = m(1, 0) * m(3, 2) - m(1, 2) * m(3, 0);
  if (std::abs(den) <= 1e-14 * std::max(1.0, max_abs(m) * max_abs(m)))
    throw NotGaussianGeneric("weight_from_matrix: b-block entries degenerate");
  Complex d = 1.0 / den;
  std::array<std::array<Complex, 2>, 2> b;
  b[0][0] = -d * m(3, 2);
  b[0][1] = d * m(1, 2);
  b[1][0] = d * m(3, 0);
  b[1][1] = -d * m(1, 0);

  // a and c from the largest available b entry in the relevant row pairs.
  struct Cand {
    Complex num, den;
  };
  auto pick = [](const std::array<Cand, 4>& cands) {
    const Cand* best = &cands[0];
    for (const Cand& c : cands)
      if (std::abs(c.den) > std::abs(best->den)) best = &c;
    return best->num / best->den;
  };
  Complex a = pick({Cand{-d * m(1, 1), b[0][1]}, Cand{-d * m(1, 3), b[1][1]},
                    Cand{d * m(3, 1), b[0][0]}, Cand{d * m(3, 3), b[1][0]}});
  Complex c = pick({Cand{d * m(0, 0), b[1][0]}, Cand{-d * m(0, 2), b[0][0]},
                    Cand{d * m(2, 0), b[1][1]}, Cand{-d * m(2, 2), b[0][1]}});

  GaussWeight w;
  try {
    w = make_gauss_weight(a, b, c, faces);
  } catch (const DegenerateDelta&) {
    throw NotGaussianGeneric("weight_from_matrix: reconstructed delta vanishes");
  }
  double rec = max_abs(canonical_matrix(w) - m);
  if (rec > tol * std::max(1.0, max_abs(m)))
    throw NotGaussianGeneric("weight_from_matrix: reconstruction residual " + std::to_string(rec));
  return w;
}

namespace {

void require_standard_wiring(const std::array<GaussWeight, 5>& w) {
  const auto& expected = tet_wirings();
  for (std::size_t t = 0; t < 5; ++t)
    if (!(w[t].faces == expected[t]))
      throw GeneratorMismatch("pentagon_grassmann: weights not wired per the flip complex");
}

}  // namespace

PentagonGrassmannResult pentagon_grassmann(const std::array<GaussWeight, 5>& w,
                                           double consistency_tol) {
  require_standard_wiring(w);
  GrassmannElement w1234 = weight_element(w[0]);
  GrassmannElement w1345 = weight_element(w[1]);
  GrassmannElement w1245 = weight_element(w[2]);
  GrassmannElement w2345 = weight_element(w[3]);
  GrassmannElement w1235 = weight_element(w[4]);

  GrassmannElement lhs = berezin(w1234 * w1345, {face_position({1, 3, 4})});
  GrassmannElement rhs = berezin(w1245 * w2345 * w1235,
                                 {face_position({1, 2, 5}), face_position({2, 3, 5}),
                                  face_position({2, 4, 5})});

  double lmax = lhs.max_abs_coeff();
  if (lmax == 0.0) throw ZeroSide("pentagon_grassmann: integrated lhs vanishes");
  std::uint32_t pivot = 0;
  for (const auto& [mask, c] : lhs.terms())
    if (std::abs(c) == lmax) pivot = mask;
  Complex konst = rhs.coeff(pivot) / lhs.coeff(pivot);
  if (std::abs(konst) == 0.0) throw ZeroSide("pentagon_grassmann: integrated rhs vanishes");

  GrassmannElement diff = rhs - konst * lhs;
  double scale = std::max(rhs.max_abs_coeff(), std::abs(konst) * lmax);
  double deviation = diff.max_abs_coeff() / scale;
  if (deviation > consistency_tol)
    throw InconsistentRatio("pentagon_grassmann: sides not proportional, deviation " +
                                std::to_string(deviation),
                            deviation);
  return {deviation, konst, std::move(lhs), std::move(rhs)};
}

double matrix_pentagon_residual(const std::array<GaussWeight, 5>& w) {
  require_standard_wiring(w);
  FlipSet fs;
  fs.n = 2;
  const auto& flips = flip_table();
  std::array<CMatrix, 5> m;
  for (std::size_t f = 0; f < 5; ++f)
    m[f] = embed_flip_block(canonical_matrix(w[f]), flips[f].slots, 2);
  fs.P = m[0]; fs.Q = m[1]; fs.R = m[2]; fs.S = m[3]; fs.T = m[4];
  return check_pentagon(fs);
}

FlipSet isotropic_flips_generic(const ZetaFamily& zf) {
  if (zf.n != 2) throw DegenerateParameters("isotropic_flips_generic: requires n = 2");
  std::array<CMatrix, kNumFaces> a;
  for (const GeneratorLabel& lbl : face_table())
    a[static_cast<std::size_t>(lbl.position)] =
        isotropic_change(triangle_gram(zf, lbl.triple)).a;
  AProvider plain = [&a](const Triple& t) { return a[static_cast<std::size_t>(face_position(t))]; };
  FlipSet fs = isotropic_flips(zf, plain);

  // Row f: face-incidence mask of flip f in bits 0..9, required parity in bit 16.
  const auto& table = flip_table();
  std::array<std::uint32_t, 5> rows{};
  bool any_parity = false;
  for (int f = 0; f < 5; ++f) {
    const FlipInfo& fi = table[static_cast<std::size_t>(f)];
    CMatrix m = flip_block(flip_matrix(fs, f), fi.slots, 2);
    Complex den = m(1, 0) * m(3, 2) - m(1, 2) * m(3, 0);
    double scale = max_abs(m);
    std::uint32_t parity = std::abs(den) > 1e-10 * std::max(1.0, scale * scale) ? 0u : 1u;
    any_parity |= parity != 0;
    std::uint32_t inc = 0;
    int s1 = fi.slots[0], s2 = fi.slots[1];
    for (const Triple& t :
         {fi.before[static_cast<std::size_t>(s1)], fi.before[static_cast<std::size_t>(s2)],
          fi.after[static_cast<std::size_t>(s1)], fi.after[static_cast<std::size_t>(s2)]})
      inc |= 1u << face_position(t);
    rows[static_cast<std::size_t>(f)] = inc | (parity << 16);
  }
  if (!any_parity) return fs;

  std::array<int, 5> pivot_col{-1, -1, -1, -1, -1};
  int rank = 0;
  for (int col = 0; col < kNumFaces && rank < 5; ++col) {
    int sel = -1;
    for (int r = rank; r < 5; ++r)
      if (rows[static_cast<std::size_t>(r)] >> col & 1u) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    std::swap(rows[static_cast<std::size_t>(rank)], rows[static_cast<std::size_t>(sel)]);
    for (int r = 0; r < 5; ++r)
      if (r != rank && (rows[static_cast<std::size_t>(r)] >> col & 1u))
        rows[static_cast<std::size_t>(r)] ^= rows[static_cast<std::size_t>(rank)];
    pivot_col[static_cast<std::size_t>(rank++)] = col;
  }
  for (int r = rank; r < 5; ++r)
    if (rows[static_cast<std::size_t>(r)] >> 16 & 1u)
      throw NotGaussianGeneric(
          "isotropic_flips_generic: no line ordering makes every flip generic");
  std::array<int, kNumFaces> gauge{};
  for (int r = 0; r < rank; ++r)
    if (rows[static_cast<std::size_t>(r)] >> 16 & 1u)
      gauge[static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(r)])] = 1;

  AProvider gauged = [&a, &gauge](const Triple& t) {
    std::size_t p = static_cast<std::size_t>(face_position(t));
    if (!gauge[p]) return a[p];
    CMatrix s = a[p];
    s.row(0).swap(s.row(1));
    return s;
  };
  return isotropic_flips(zf, gauged);
}

std::array<GaussWeight, 5> weights_from_flips(const FlipSet& fs, double tol) {
  if (fs.n != 2) throw DegenerateParameters("weights_from_flips: requires n = 2");
  const auto& flips = flip_table();
  const auto& wirings = tet_wirings();
  std::array<GaussWeight, 5> out;
  for (std::size_t f = 0; f < 5; ++f) {
    CMatrix block = flip_block(flip_matrix(fs, static_cast<int>(f)), flips[f].slots, 2);
    out[f] = weight_from_matrix(block, wirings[f], tol);
  }
  return out;
}

}  // namespace pentagon

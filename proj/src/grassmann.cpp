#include "pentagon/grassmann.hpp"

#include <bit>
#include <cmath>
#include <sstream>

namespace pentagon {

namespace {

constexpr int kMaxGens = 24;

// (-1)^{#{(i, j) : i in a, j in b, i > j}}: transpositions needed to merge two
// canonically ordered monomials.
int merge_sign(std::uint32_t a, std::uint32_t b) {
  int swaps = 0;
  while (b) {
    int j = std::countr_zero(b);
    swaps += std::popcount(a >> (j + 1));
    b &= b - 1;
  }
  return (swaps & 1) ? -1 : +1;
}

}  // namespace

GrassmannElement::GrassmannElement(int num_gens) : num_gens_(num_gens) {
  if (num_gens < 0 || num_gens > kMaxGens)
    throw GeneratorMismatch("grassmann: generator count out of range");
}

GrassmannElement GrassmannElement::scalar(int num_gens, GComplex v) {
  GrassmannElement e(num_gens);
  e.add_term(0, v);
  return e;
}

GrassmannElement GrassmannElement::generator(int num_gens, int i) {
  return monomial(num_gens, 1u << i, 1.0);
}

GrassmannElement GrassmannElement::monomial(int num_gens, std::uint32_t mask, GComplex coeff) {
  GrassmannElement e(num_gens);
  if (mask >> num_gens) throw GeneratorMismatch("grassmann: monomial outside the algebra");
  e.add_term(mask, coeff);
  return e;
}

GComplex GrassmannElement::coeff(std::uint32_t mask) const {
  auto it = terms_.find(mask);
  return it == terms_.end() ? GComplex(0.0) : it->second;
}

double GrassmannElement::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [mask, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

bool GrassmannElement::is_even() const {
  for (const auto& [mask, c] : terms_)
    if (std::popcount(mask) & 1) return false;
  return true;
}

void GrassmannElement::add_term(std::uint32_t mask, GComplex c) {
  if (c == GComplex(0.0)) return;
  auto [it, inserted] = terms_.try_emplace(mask, c);
  if (!inserted) {
    it->second += c;
    if (it->second == GComplex(0.0)) terms_.erase(it);
  }
}

void GrassmannElement::check_same_algebra(const GrassmannElement& o) const {
  if (num_gens_ != o.num_gens_)
    throw GeneratorMismatch("grassmann: elements live in different algebras");
}

GrassmannElement& GrassmannElement::operator+=(const GrassmannElement& o) {
  check_same_algebra(o);
  for (const auto& [mask, c] : o.terms_) add_term(mask, c);
  return *this;
}

GrassmannElement& GrassmannElement::operator-=(const GrassmannElement& o) {
  check_same_algebra(o);
  for (const auto& [mask, c] : o.terms_) add_term(mask, -c);
  return *this;
}

GrassmannElement& GrassmannElement::operator*=(GComplex s) {
  if (s == GComplex(0.0)) {
    terms_.clear();
    return *this;
  }
  for (auto& [mask, c] : terms_) c *= s;
  return *this;
}

GrassmannElement operator*(const GrassmannElement& a, const GrassmannElement& b) {
  a.check_same_algebra(b);
  GrassmannElement r(a.num_gens_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      if (ma & mb) continue;  // repeated generator
      r.add_term(ma | mb, static_cast<double>(merge_sign(ma, mb)) * ca * cb);
    }
  return r;
}

GrassmannElement g_mul(const GrassmannElement& a, const GrassmannElement& b) { return a * b; }

GrassmannElement g_exp(const GrassmannElement& f) {
  if (f.scalar_part() != GComplex(0.0))
    throw NotNilpotentSafe("g_exp: nonzero scalar term");
  if (!f.is_even()) throw NotNilpotentSafe("g_exp: odd terms present");
  GrassmannElement acc = GrassmannElement::unit(f.num_gens());
  GrassmannElement power = acc;
  for (int k = 1; k <= f.num_gens() + 1; ++k) {
    power = power * f * GComplex(1.0 / k);
    if (power.is_zero()) return acc;
    acc += power;
  }
  throw NotNilpotentSafe("g_exp: series failed to terminate");
}

GrassmannElement left_deriv(int i, const GrassmannElement& f) {
  std::uint32_t bit = 1u << i;
  GrassmannElement r(f.num_gens());
  for (const auto& [mask, c] : f.terms()) {
    if (!(mask & bit)) continue;
    int below = std::popcount(mask & (bit - 1));
    r += GrassmannElement::monomial(f.num_gens(), mask ^ bit, (below & 1) ? -c : c);
  }
  return r;
}

GrassmannElement right_deriv(const GrassmannElement& f, int i) {
  std::uint32_t bit = 1u << i;
  GrassmannElement r(f.num_gens());
  for (const auto& [mask, c] : f.terms()) {
    if (!(mask & bit)) continue;
    int above = std::popcount(mask >> (i + 1));
    r += GrassmannElement::monomial(f.num_gens(), mask ^ bit, (above & 1) ? -c : c);
  }
  return r;
}

GrassmannElement berezin(const GrassmannElement& f, const std::vector<int>& order) {
  std::uint32_t seen = 0;
  GrassmannElement r = f;
  for (int i : order) {
    if (i < 0 || i >= f.num_gens() || (seen & (1u << i)))
      throw GeneratorMismatch("berezin: integration variables must be distinct and in range");
    seen |= 1u << i;
    r = right_deriv(r, i);
  }
  return r;
}

std::string GrassmannElement::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  auto gen_name = [&](int i) {
    if (static_cast<std::size_t>(i) < names.size()) return names[static_cast<std::size_t>(i)];
    return "x" + std::to_string(i);
  };
  auto fmt_real = [](double v) {
    std::ostringstream os;
    os << v;
    return os.str();
  };
  std::ostringstream out;
  bool first = true;
  for (const auto& [mask, c] : terms_) {
    std::string vars;
    for (std::uint32_t m = mask; m;) {
      int i = std::countr_zero(m);
      m &= m - 1;
      if (!vars.empty()) vars += "*";
      vars += gen_name(i);
    }
    bool negative = c.imag() == 0.0 && c.real() < 0.0;
    GComplex shown = negative ? -c : c;
    std::string coeff_str;
    if (shown.imag() == 0.0)
      coeff_str = fmt_real(shown.real());
    else
      coeff_str = "(" + fmt_real(shown.real()) + "," + fmt_real(shown.imag()) + ")";
    std::string term;
    if (vars.empty())
      term = coeff_str;
    else if (coeff_str == "1")
      term = vars;
    else
      term = coeff_str + "*" + vars;
    if (first) {
      out << (negative ? "-" : "") << term;
      first = false;
    } else {
      out << (negative ? " - " : " + ") << term;
    }
  }
  return out.str();
}

}  // namespace pentagon

#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pentagon/errors.hpp"

namespace pentagon {

using GComplex = std::complex<double>;

// Element of the Grassmann algebra on num_gens anticommuting generators.
// Terms are kept as bitmask -> coefficient over canonically ordered monomials
// (ascending generator index); the packed masks make reordering signs O(1).
class GrassmannElement {
 public:
  GrassmannElement() = default;
  explicit GrassmannElement(int num_gens);

  static GrassmannElement scalar(int num_gens, GComplex v);
  static GrassmannElement unit(int num_gens) { return scalar(num_gens, 1.0); }
  static GrassmannElement generator(int num_gens, int i);
  static GrassmannElement monomial(int num_gens, std::uint32_t mask, GComplex coeff);

  int num_gens() const { return num_gens_; }
  bool is_zero() const { return terms_.empty(); }
  GComplex coeff(std::uint32_t mask) const;
  GComplex scalar_part() const { return coeff(0); }
  const std::map<std::uint32_t, GComplex>& terms() const { return terms_; }

  double max_abs_coeff() const;
  bool is_even() const;  // every stored monomial has even degree

  GrassmannElement& operator+=(const GrassmannElement& o);
  GrassmannElement& operator-=(const GrassmannElement& o);
  GrassmannElement& operator*=(GComplex s);

  friend GrassmannElement operator+(GrassmannElement a, const GrassmannElement& b) { return a += b; }
  friend GrassmannElement operator-(GrassmannElement a, const GrassmannElement& b) { return a -= b; }
  friend GrassmannElement operator*(GrassmannElement a, GComplex s) { return a *= s; }
  friend GrassmannElement operator*(GComplex s, GrassmannElement a) { return a *= s; }
  friend GrassmannElement operator*(const GrassmannElement& a, const GrassmannElement& b);
  friend GrassmannElement operator-(GrassmannElement a) { return a *= -1.0; }

  // "1 - x0*x1 + (0,2)*x2" with optional generator names.
  std::string to_string(const std::vector<std::string>& names = {}) const;

 private:
  void add_term(std::uint32_t mask, GComplex c);
  void check_same_algebra(const GrassmannElement& o) const;

  int num_gens_ = 0;
  std::map<std::uint32_t, GComplex> terms_;
};

GrassmannElement g_mul(const GrassmannElement& a, const GrassmannElement& b);

// Terminating exponential series; f must be even with zero scalar term.
GrassmannElement g_exp(const GrassmannElement& f);

// d/dx_i from the left: x_i f |-> f when f is free of x_i.
GrassmannElement left_deriv(int i, const GrassmannElement& f);

// d/dx_i from the right: f x_i |-> f when f is free of x_i.
GrassmannElement right_deriv(const GrassmannElement& f, int i);

// Iterated Berezin integral; the first listed generator is the innermost integral
// (so order = {y, x} computes integral over dy, then dx).
GrassmannElement berezin(const GrassmannElement& f, const std::vector<int>& order);

}  // namespace pentagon

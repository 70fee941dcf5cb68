#pragma once

#include "sft/numeric.hpp"

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace sft {

/// Univariate polynomial over Z in the variable t, dense ascending
/// coefficients with trailing zeros stripped (the zero polynomial has no
/// coefficients at all).
class IntPoly {
public:
  IntPoly() = default;
  IntPoly(long c) { // NOLINT: constants convert implicitly, like the ring maps
    if (c != 0)
      coeffs_.emplace_back(c);
  }
  IntPoly(const Integer &c) {
    if (c != 0)
      coeffs_.push_back(c);
  }
  explicit IntPoly(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) {
    normalize();
  }
  IntPoly(std::initializer_list<long> coeffs) {
    for (long c : coeffs)
      coeffs_.emplace_back(c);
    normalize();
  }

  /// c·t^k
  static IntPoly monomial(const Integer &c, std::size_t k);
  static IntPoly t() { return monomial(1, 1); }

  bool is_zero() const { return coeffs_.empty(); }
  /// Degree; -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  const std::vector<Integer> &coeffs() const { return coeffs_; }
  /// Coefficient of t^k (zero past the degree).
  Integer coeff(std::size_t k) const {
    return k < coeffs_.size() ? coeffs_[k] : Integer(0);
  }
  Integer constant_term() const { return coeff(0); }
  Integer leading() const { return coeffs_.empty() ? Integer(0) : coeffs_.back(); }

  bool all_nonnegative() const;
  Integer eval(const Integer &x) const;
  Rational eval(const Rational &x) const;

  /// p(t^k)
  IntPoly substitute_power(std::size_t k) const;
  /// t^deg·p(1/t) with deg the given formal degree (default: actual degree).
  IntPoly reversed(std::size_t formal_degree) const;
  IntPoly reversed() const { return reversed(coeffs_.empty() ? 0 : degree()); }
  /// Drops every coefficient of t^k for k > n.
  IntPoly truncated(std::size_t n) const;

  IntPoly &operator+=(const IntPoly &o);
  IntPoly &operator-=(const IntPoly &o);
  IntPoly &operator*=(const IntPoly &o) { return *this = *this * o; }
  friend IntPoly operator+(IntPoly a, const IntPoly &b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly &b) { return a -= b; }
  friend IntPoly operator-(IntPoly a);
  friend IntPoly operator*(const IntPoly &a, const IntPoly &b);
  friend bool operator==(const IntPoly &a, const IntPoly &b) {
    return a.coeffs_ == b.coeffs_;
  }

  /// Text form "c0+c1*t+c2*t^2" (zero terms skipped, no spaces); "0" for zero.
  std::string str() const;
  /// Inverse of str(); also accepts terms in any order, repeated powers,
  /// implicit coefficients ("t^3", "-t") and surrounding whitespace.
  static IntPoly parse(std::string_view text);

private:
  void normalize();
  std::vector<Integer> coeffs_;
};

std::ostream &operator<<(std::ostream &os, const IntPoly &p);

/// Product of (1 - r_i t) over the given roots.
IntPoly one_minus_roots(std::initializer_list<long> roots);

} // namespace sft

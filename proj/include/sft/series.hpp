#pragma once

#include "sft/int_poly.hpp"
#include "sft/matrix.hpp"

#include <cstddef>
#include <vector>

namespace sft {

/// Power series over Q truncated modulo t^{order+1}.
class RationalSeries {
public:
  explicit RationalSeries(std::size_t order)
      : coeffs_(order + 1, Rational(0)) {}
  RationalSeries(std::size_t order, const IntPoly &p);
  RationalSeries(std::size_t order, std::vector<Rational> c);

  std::size_t order() const { return coeffs_.size() - 1; }
  const std::vector<Rational> &coeffs() const { return coeffs_; }
  const Rational &operator[](std::size_t k) const { return coeffs_[k]; }
  Rational &operator[](std::size_t k) { return coeffs_[k]; }

  friend RationalSeries operator+(const RationalSeries &a, const RationalSeries &b);
  friend RationalSeries operator*(const RationalSeries &a, const RationalSeries &b);
  friend bool operator==(const RationalSeries &a, const RationalSeries &b) {
    return a.coeffs_ == b.coeffs_;
  }

  /// 1/this; constant term must be nonzero.
  RationalSeries reciprocal() const;
  /// exp(this); constant term must be zero.
  RationalSeries exp() const;

private:
  std::vector<Rational> coeffs_;
};

/// 1/det(I - tA) through t^order.
RationalSeries zeta_series(const IntMatrix &a, std::size_t order);
/// exp(Σ trace(A^n)·t^n/n) through t^order, traces from direct powering.
RationalSeries zeta_series_exp(const IntMatrix &a, std::size_t order);

} // namespace sft

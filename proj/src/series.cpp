#include "sft/series.hpp"

#include "sft/linalg.hpp"

namespace sft {

RationalSeries::RationalSeries(std::size_t order, const IntPoly &p)
    : coeffs_(order + 1, Rational(0)) {
  for (std::size_t k = 0; k <= order; ++k)
    coeffs_[k] = p.coeff(k);
}

RationalSeries::RationalSeries(std::size_t order, std::vector<Rational> c)
    : coeffs_(std::move(c)) {
  coeffs_.resize(order + 1, Rational(0));
}

RationalSeries operator+(const RationalSeries &a, const RationalSeries &b) {
  if (a.order() != b.order())
    throw DimensionError("series orders differ");
  RationalSeries r(a.order());
  for (std::size_t k = 0; k <= a.order(); ++k)
    r[k] = a[k] + b[k];
  return r;
}

RationalSeries operator*(const RationalSeries &a, const RationalSeries &b) {
  if (a.order() != b.order())
    throw DimensionError("series orders differ");
  const std::size_t n = a.order();
  RationalSeries r(n);
  for (std::size_t i = 0; i <= n; ++i) {
    if (a[i] == 0)
      continue;
    for (std::size_t j = 0; i + j <= n; ++j)
      r[i + j] += a[i] * b[j];
  }
  return r;
}

RationalSeries RationalSeries::reciprocal() const {
  if (coeffs_[0] == 0)
    throw DomainError("series reciprocal needs a nonzero constant term");
  const std::size_t n = order();
  RationalSeries r(n);
  Rational inv0 = 1 / coeffs_[0];
  r[0] = inv0;
  for (std::size_t k = 1; k <= n; ++k) {
    Rational s = 0;
    for (std::size_t i = 1; i <= k; ++i)
      s += coeffs_[i] * r[k - i];
    r[k] = -s * inv0;
  }
  return r;
}

RationalSeries RationalSeries::exp() const {
  if (coeffs_[0] != 0)
    throw DomainError("series exp needs a zero constant term");
  // e' = f'·e, so n·e_n = Σ_{k=1..n} k·f_k·e_{n-k}.
  const std::size_t n = order();
  RationalSeries e(n);
  e[0] = 1;
  for (std::size_t m = 1; m <= n; ++m) {
    Rational s = 0;
    for (std::size_t k = 1; k <= m; ++k)
      s += Rational(static_cast<unsigned long>(k)) * coeffs_[k] * e[m - k];
    e[m] = s / Rational(static_cast<unsigned long>(m));
  }
  return e;
}

RationalSeries zeta_series(const IntMatrix &a, std::size_t order) {
  return RationalSeries(order, det_one_minus_tA(a)).reciprocal();
}

RationalSeries zeta_series_exp(const IntMatrix &a, std::size_t order) {
  if (!a.square())
    throw DimensionError("zeta of a non-square matrix");
  RationalSeries log_side(order);
  IntMatrix p = IntMatrix::identity(a.rows());
  for (std::size_t k = 1; k <= order; ++k) {
    p = p * a;
    log_side[k] = Rational(trace(p)) / Rational(static_cast<unsigned long>(k));
  }
  return log_side.exp();
}

} // namespace sft

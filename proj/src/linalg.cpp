#include "sft/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace sft {

IntPoly char_poly(const IntMatrix &a) {
  auto c = berkowitz(a);
  std::reverse(c.begin(), c.end());
  return IntPoly(std::move(c));
}

IntPoly det_one_minus_tA(const IntMatrix &a) {
  // t^n·χ(1/t): the Berkowitz coefficients already run from x^n downwards.
  return IntPoly(berkowitz(a));
}

IntPoly det(const PolyMatrix &m) { return det_berkowitz(m); }

Integer det_bareiss(IntMatrix a) {
  if (!a.square())
    throw DimensionError("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0)
    return 1;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0)
        ++p;
      if (p == n)
        return 0;
      for (std::size_t j = 0; j < n; ++j)
        std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

namespace {

// Row-reduces [a | b] in place over Q; returns rank of a.
std::size_t gauss_jordan(RatMatrix &a, RatMatrix *b) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0)
      ++p;
    if (p == a.rows())
      continue;
    for (std::size_t j = 0; j < a.cols(); ++j)
      std::swap(a(r, j), a(p, j));
    if (b)
      for (std::size_t j = 0; j < b->cols(); ++j)
        std::swap((*b)(r, j), (*b)(p, j));
    Rational inv = 1 / a(r, c);
    for (std::size_t j = 0; j < a.cols(); ++j)
      a(r, j) *= inv;
    if (b)
      for (std::size_t j = 0; j < b->cols(); ++j)
        (*b)(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0)
        continue;
      Rational f = a(i, c);
      for (std::size_t j = 0; j < a.cols(); ++j)
        a(i, j) -= f * a(r, j);
      if (b)
        for (std::size_t j = 0; j < b->cols(); ++j)
          (*b)(i, j) -= f * (*b)(r, j);
    }
    ++r;
  }
  return r;
}

} // namespace

Rational det(const RatMatrix &a) { return det_berkowitz(a); }

RatMatrix inverse(const RatMatrix &a) {
  if (!a.square())
    throw DimensionError("inverse of a non-square matrix");
  RatMatrix work = a;
  RatMatrix inv = RatMatrix::identity(a.rows());
  if (gauss_jordan(work, &inv) != a.rows())
    throw DomainError("matrix is singular");
  return inv;
}

IntMatrix inverse_unimodular(const IntMatrix &a) {
  if (!a.square() || abs(det_bareiss(a)) != 1)
    throw DomainError("matrix is not unimodular");
  return to_integer(inverse(to_rational(a)));
}

std::size_t rank(const IntMatrix &a) {
  RatMatrix work = to_rational(a);
  return gauss_jordan(work, nullptr);
}

namespace {

struct SnfWork {
  IntMatrix U, D, V;

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j)
      return;
    for (std::size_t c = 0; c < D.cols(); ++c)
      std::swap(D(i, c), D(j, c));
    for (std::size_t c = 0; c < U.cols(); ++c)
      std::swap(U(i, c), U(j, c));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j)
      return;
    for (std::size_t r = 0; r < D.rows(); ++r)
      std::swap(D(r, i), D(r, j));
    for (std::size_t r = 0; r < V.rows(); ++r)
      std::swap(V(r, i), V(r, j));
  }
  // row i += q·row j
  void add_row(std::size_t i, std::size_t j, const Integer &q) {
    for (std::size_t c = 0; c < D.cols(); ++c)
      D(i, c) += q * D(j, c);
    for (std::size_t c = 0; c < U.cols(); ++c)
      U(i, c) += q * U(j, c);
  }
  // col i += q·col j
  void add_col(std::size_t i, std::size_t j, const Integer &q) {
    for (std::size_t r = 0; r < D.rows(); ++r)
      D(r, i) += q * D(r, j);
    for (std::size_t r = 0; r < V.rows(); ++r)
      V(r, i) += q * V(r, j);
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < D.cols(); ++c)
      D(i, c) = -D(i, c);
    for (std::size_t c = 0; c < U.cols(); ++c)
      U(i, c) = -U(i, c);
  }
};

} // namespace

SmithForm smith_normal_form(const IntMatrix &m) {
  SnfWork w{IntMatrix::identity(m.rows()), m, IntMatrix::identity(m.cols())};
  const std::size_t rows = m.rows(), cols = m.cols();
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    while (true) {
      // Smallest nonzero |entry| of the trailing block goes to (t,t).
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (w.D(i, j) != 0 &&
              (pi == rows || mpz_cmpabs(w.D(i, j).get_mpz_t(), w.D(pi, pj).get_mpz_t()) < 0)) {
            pi = i;
            pj = j;
          }
      if (pi == rows)
        break;
      w.swap_rows(t, pi);
      w.swap_cols(t, pj);
      const Integer p = w.D(t, t);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (w.D(i, t) == 0)
          continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), w.D(i, t).get_mpz_t(), p.get_mpz_t());
        w.add_row(i, t, -q);
        if (w.D(i, t) != 0)
          clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (w.D(t, j) == 0)
          continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), w.D(t, j).get_mpz_t(), p.get_mpz_t());
        w.add_col(j, t, -q);
        if (w.D(t, j) != 0)
          clean = false;
      }
      if (!clean)
        continue;
      // Pivot must divide the whole trailing block; otherwise fold the
      // offending row into row t and go again.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(w.D(i, j).get_mpz_t(), p.get_mpz_t())) {
            w.add_row(t, i, 1);
            divides = false;
            break;
          }
      if (divides)
        break;
    }
    if (sgn(w.D(t, t)) < 0)
      w.negate_row(t);
  }
  return {std::move(w.U), std::move(w.D), std::move(w.V)};
}

Integer FGAbelianGroup::order() const {
  if (free_rank)
    return 0;
  Integer o = 1;
  for (const auto &d : torsion)
    o *= d;
  return o;
}

std::string FGAbelianGroup::str() const {
  if (trivial())
    return "0";
  std::ostringstream os;
  bool first = true;
  if (free_rank) {
    os << "Z";
    if (free_rank > 1)
      os << "^" << free_rank;
    first = false;
  }
  for (const auto &d : torsion) {
    os << (first ? "" : " + ") << "Z/" << d;
    first = false;
  }
  return os.str();
}

FGAbelianGroup cokernel(const IntMatrix &m) {
  auto snf = smith_normal_form(m);
  FGAbelianGroup g;
  std::size_t nonzero = 0;
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) {
    const Integer &d = snf.D(i, i);
    if (d == 0)
      continue;
    ++nonzero;
    if (d > 1)
      g.torsion.push_back(d);
  }
  g.free_rank = m.rows() - nonzero;
  return g;
}

IntMatrix evaluate_at_one(const PolyMatrix &m) {
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      r(i, j) = m(i, j).eval(Integer(1));
  return r;
}

PolyMatrix one_minus(const PolyMatrix &a) {
  return PolyMatrix::identity(a.rows()) - a;
}

PolyMatrix times_t(const IntMatrix &a) {
  PolyMatrix p(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      p(i, j) = IntPoly::monomial(a(i, j), 1);
  return p;
}

PolyMatrix to_poly(const IntMatrix &a) {
  PolyMatrix p(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      p(i, j) = IntPoly(a(i, j));
  return p;
}

} // namespace sft

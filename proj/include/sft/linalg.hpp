#pragma once

#include "sft/int_poly.hpp"
#include "sft/matrix.hpp"

#include <string>
#include <vector>

namespace sft {

using PolyMatrix = Matrix<IntPoly>;

/// Berkowitz's division-free recurrence. Returns c with
/// det(xI - A) = c[0]·x^n + c[1]·x^{n-1} + ... + c[n], so c[0] = 1.
/// Works over any commutative ring.
template <class T> std::vector<T> berkowitz(const Matrix<T> &a) {
  if (!a.square())
    throw DimensionError("characteristic polynomial of a non-square matrix");
  const std::size_t n = a.rows();
  std::vector<T> c{T(1)};
  for (std::size_t k = 0; k < n; ++k) {
    // Leading principal block of size k+1 = [[B, col],[row, akk]].
    std::vector<T> toe(k + 2, T(0));
    toe[0] = T(1);
    toe[1] = T(0) - a(k, k);
    std::vector<T> v(k, T(0)); // B^j · col
    for (std::size_t i = 0; i < k; ++i)
      v[i] = a(i, k);
    for (std::size_t j = 2; j <= k + 1; ++j) {
      T s(0);
      for (std::size_t i = 0; i < k; ++i)
        s += a(k, i) * v[i];
      toe[j] = T(0) - s;
      if (j == k + 1)
        break;
      std::vector<T> w(k, T(0));
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t i = 0; i < k; ++i)
          w[r] += a(r, i) * v[i];
      v.swap(w);
    }
    std::vector<T> next(k + 2, T(0));
    for (std::size_t i = 0; i < k + 2; ++i)
      for (std::size_t j = 0; j <= i && j < c.size(); ++j)
        next[i] += toe[i - j] * c[j];
    c.swap(next);
  }
  return c;
}

/// det(A) over any commutative ring, via the Berkowitz coefficients.
template <class T> T det_berkowitz(const Matrix<T> &a) {
  auto c = berkowitz(a);
  T d = c.back();
  return (a.rows() % 2) ? T(0) - d : d;
}

/// Monic det(tI - A).
IntPoly char_poly(const IntMatrix &a);
/// det(I - tA); constant term 1, degree at most n.
IntPoly det_one_minus_tA(const IntMatrix &a);
/// det(M) for a matrix over Z[t].
IntPoly det(const PolyMatrix &m);
/// Fraction-free Gaussian elimination determinant.
Integer det_bareiss(IntMatrix a);
Rational det(const RatMatrix &a);

/// Inverse over Q; throws DomainError when singular.
RatMatrix inverse(const RatMatrix &a);
/// Inverse of a unimodular integer matrix; throws NotRealizableError if the
/// inverse is not integral.
IntMatrix inverse_unimodular(const IntMatrix &a);

size_t rank(const IntMatrix &a);

struct SmithForm {
  IntMatrix U, D, V; // U·M·V = D
};

/// Smith normal form with transforms. Diagonal entries are nonnegative and
/// each divides the next; zeros come last.
SmithForm smith_normal_form(const IntMatrix &m);

/// Finitely generated abelian group Z^free_rank ⊕ Z/d1 ⊕ ... with
/// 2 <= d1 | d2 | ...
struct FGAbelianGroup {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;

  bool trivial() const { return free_rank == 0 && torsion.empty(); }
  /// Order when finite, 0 when infinite.
  Integer order() const;
  /// "Z^2 + Z/2 + Z/6", "0" for the trivial group.
  std::string str() const;
  friend bool operator==(const FGAbelianGroup &, const FGAbelianGroup &) =
      default;
};

/// Z^rows / image(M).
FGAbelianGroup cokernel(const IntMatrix &m);

/// Entrywise t -> 1.
IntMatrix evaluate_at_one(const PolyMatrix &m);
/// I - A for a matrix over Z[t].
PolyMatrix one_minus(const PolyMatrix &a);
/// t·A lifted to Z[t].
PolyMatrix times_t(const IntMatrix &a);
PolyMatrix to_poly(const IntMatrix &a);

} // namespace sft

#pragma once

// Newton's identities in the det(I - tA) normalisation:
//   det(I - tA) = 1 - f1·t - ... - fN·t^N,  τk = trace(A^k)
//   τk = k·fk + Σ_{i<k} fi·τ_{k-i}   (k <= N)
//   τk = Σ_{i<=N} fi·τ_{k-i}          (k > N)

#include "sft/error.hpp"
#include "sft/int_poly.hpp"

#include <cstddef>
#include <vector>

namespace sft {

/// Traces τ1..τn from the coefficients of a polynomial with constant term 1,
/// over any commutative ring containing Z.
template <class T>
std::vector<T> traces_from_coeffs(const std::vector<T> &p, std::size_t n) {
  if (p.empty() || p[0] != T(1))
    throw DomainError("power sums need a polynomial with constant term 1");
  const std::size_t deg = p.size() - 1;
  std::vector<T> f(deg + 1, T(0)); // f[i] = -p[i]
  for (std::size_t i = 1; i <= deg; ++i)
    f[i] = T(0) - p[i];
  std::vector<T> tau(n + 1, T(0));
  for (std::size_t k = 1; k <= n; ++k) {
    T s = k <= deg ? T(static_cast<long>(k)) * f[k] : T(0);
    for (std::size_t i = 1; i < k && i <= deg; ++i)
      s += f[i] * tau[k - i];
    tau[k] = s;
  }
  tau.erase(tau.begin());
  return tau;
}

/// τ1..τN of any matrix with det(I - tA) = p. Throws DomainError unless p(0) = 1.
std::vector<Integer> traces_from_poly(const IntPoly &p, std::size_t n);

/// Recovers the polynomial 1 - f1·t - ... - fm·t^m (m = taus.size()) from a
/// trace prefix. Throws NotRealizableError when some fk is not an integer.
IntPoly poly_from_traces(const std::vector<Integer> &taus);

/// Same recurrence over Q; never fails.
std::vector<Rational> poly_from_traces_rational(const std::vector<Rational> &taus);

} // namespace sft

#include "sft/number_theory.hpp"

#include "sft/error.hpp"

#include <algorithm>

namespace sft {

int mobius(std::uint64_t n) {
  if (n == 0)
    throw DomainError("mobius(0) is undefined");
  int mu = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p)
      continue;
    n /= p;
    if (n % p == 0)
      return 0;
    mu = -mu;
  }
  if (n > 1)
    mu = -mu;
  return mu;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  if (n == 0)
    throw DomainError("divisors(0) is undefined");
  std::vector<std::uint64_t> lo, hi;
  for (std::uint64_t d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      lo.push_back(d);
      if (d != n / d)
        hi.push_back(n / d);
    }
  lo.insert(lo.end(), hi.rbegin(), hi.rend());
  return lo;
}

std::vector<Integer> prime_factors(const Integer &n) {
  Integer m = abs(n);
  std::vector<Integer> ps;
  if (m <= 1)
    return ps;
  for (Integer p = 2; p * p <= m; ++p) {
    if (!mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t()))
      continue;
    ps.push_back(p);
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t()))
      m /= p;
  }
  if (m > 1)
    ps.push_back(m);
  return ps;
}

template <class T> T net_trace(std::span<const T> taus, std::uint64_t n) {
  if (n == 0 || n > taus.size())
    throw DomainError("net_trace index out of range");
  T acc = 0;
  for (auto d : divisors(n)) {
    int mu = mobius(n / d);
    if (mu > 0)
      acc += taus[d - 1];
    else if (mu < 0)
      acc -= taus[d - 1];
  }
  return acc;
}

template Integer net_trace(std::span<const Integer>, std::uint64_t);
template Rational net_trace(std::span<const Rational>, std::uint64_t);

ExtendedGcd extended_gcd(const Integer &a, const Integer &b) {
  ExtendedGcd r;
  mpz_gcdext(r.g.get_mpz_t(), r.s.get_mpz_t(), r.t.get_mpz_t(), a.get_mpz_t(),
             b.get_mpz_t());
  return r;
}

std::optional<Integer> inverse_mod(const Integer &x, const Integer &m) {
  Integer r;
  if (m <= 0)
    throw DomainError("inverse_mod: modulus must be positive");
  if (!mpz_invert(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t())) {
    if (m == 1)
      return Integer(0);
    return std::nullopt;
  }
  return mod_floor(r, m);
}

} // namespace sft

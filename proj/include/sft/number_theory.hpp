#pragma once

#include "sft/numeric.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace sft {

/// Möbius function; throws DomainError for n = 0.
int mobius(std::uint64_t n);
/// Ascending positive divisors of n >= 1.
std::vector<std::uint64_t> divisors(std::uint64_t n);
/// Distinct prime factors of |n|, ascending (empty for 0 and ±1).
std::vector<Integer> prime_factors(const Integer &n);

/// Σ_{d|n} μ(n/d)·taus[d-1]; n is 1-based and must not exceed taus.size().
template <class T> T net_trace(std::span<const T> taus, std::uint64_t n);

extern template Integer net_trace(std::span<const Integer>, std::uint64_t);
extern template Rational net_trace(std::span<const Rational>, std::uint64_t);

struct ExtendedGcd {
  Integer g, s, t; // g = s·a + t·b, g >= 0
};
ExtendedGcd extended_gcd(const Integer &a, const Integer &b);

/// x^{-1} mod m, or nullopt when gcd(x, m) != 1.
std::optional<Integer> inverse_mod(const Integer &x, const Integer &m);

} // namespace sft

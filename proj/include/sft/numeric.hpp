#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace sft {

using Integer = mpz_class;
using Rational = mpq_class;

inline Integer floor_div(const Integer &a, const Integer &b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

/// Least nonnegative residue of a modulo m (m > 0).
inline Integer mod_floor(const Integer &a, const Integer &m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline bool is_integral(const Rational &q) { return q.get_den() == 1; }

inline std::string to_string(const Integer &z) { return z.get_str(); }
inline std::string to_string(const Rational &q) { return q.get_str(); }

} // namespace sft

#include "sft/newton.hpp"

namespace sft {

std::vector<Integer> traces_from_poly(const IntPoly &p, std::size_t n) {
  return traces_from_coeffs(p.coeffs(), n);
}

namespace {

template <class T, class Div>
std::vector<T> invert_newton(const std::vector<T> &taus, Div divide) {
  const std::size_t m = taus.size();
  std::vector<T> f(m + 1, T(0));
  for (std::size_t k = 1; k <= m; ++k) {
    T s = taus[k - 1];
    for (std::size_t i = 1; i < k; ++i)
      s -= f[i] * taus[k - i - 1];
    f[k] = divide(s, k);
  }
  std::vector<T> p(m + 1, T(0));
  p[0] = T(1);
  for (std::size_t k = 1; k <= m; ++k)
    p[k] = T(0) - f[k];
  return p;
}

} // namespace

IntPoly poly_from_traces(const std::vector<Integer> &taus) {
  if (taus.empty())
    throw DomainError("poly_from_traces needs at least one trace");
  auto p = invert_newton(taus, [](const Integer &s, std::size_t k) {
    Integer kk = static_cast<unsigned long>(k);
    if (!mpz_divisible_p(s.get_mpz_t(), kk.get_mpz_t()))
      throw NotRealizableError("coefficient f" + std::to_string(k) + " = " +
                               s.get_str() + "/" + std::to_string(k) +
                               " is not an integer");
    Integer q = s / kk;
    return q;
  });
  return IntPoly(std::move(p));
}

std::vector<Rational> poly_from_traces_rational(const std::vector<Rational> &taus) {
  auto p = invert_newton(taus, [](const Rational &s, std::size_t k) {
    Rational q = s / Rational(static_cast<unsigned long>(k));
    return q;
  });
  while (p.size() > 1 && p.back() == 0)
    p.pop_back();
  return p;
}

} // namespace sft

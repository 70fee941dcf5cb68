#include "sft/int_poly.hpp"

#include "sft/error.hpp"

#include <cctype>
#include <sstream>

namespace sft {

IntPoly IntPoly::monomial(const Integer &c, std::size_t k) {
  if (c == 0)
    return {};
  std::vector<Integer> v(k + 1, Integer(0));
  v[k] = c;
  return IntPoly(std::move(v));
}

void IntPoly::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0)
    coeffs_.pop_back();
}

bool IntPoly::all_nonnegative() const {
  for (const auto &c : coeffs_)
    if (sgn(c) < 0)
      return false;
  return true;
}

Integer IntPoly::eval(const Integer &x) const {
  Integer acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * x + *it;
  return acc;
}

Rational IntPoly::eval(const Rational &x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * x + Rational(*it);
  return acc;
}

IntPoly IntPoly::substitute_power(std::size_t k) const {
  if (k == 0)
    throw DomainError("substitute_power: exponent must be positive");
  if (coeffs_.empty())
    return {};
  std::vector<Integer> v((coeffs_.size() - 1) * k + 1, Integer(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    v[i * k] = coeffs_[i];
  return IntPoly(std::move(v));
}

IntPoly IntPoly::reversed(std::size_t formal_degree) const {
  if (coeffs_.empty())
    return {};
  if (static_cast<long>(formal_degree) < degree())
    throw DomainError("reversed: formal degree below actual degree");
  std::vector<Integer> v(formal_degree + 1, Integer(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    v[formal_degree - i] = coeffs_[i];
  return IntPoly(std::move(v));
}

IntPoly IntPoly::truncated(std::size_t n) const {
  if (coeffs_.size() <= n + 1)
    return *this;
  return IntPoly(std::vector<Integer>(coeffs_.begin(), coeffs_.begin() + n + 1));
}

IntPoly &IntPoly::operator+=(const IntPoly &o) {
  if (o.coeffs_.size() > coeffs_.size())
    coeffs_.resize(o.coeffs_.size(), Integer(0));
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i)
    coeffs_[i] += o.coeffs_[i];
  normalize();
  return *this;
}

IntPoly &IntPoly::operator-=(const IntPoly &o) {
  if (o.coeffs_.size() > coeffs_.size())
    coeffs_.resize(o.coeffs_.size(), Integer(0));
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i)
    coeffs_[i] -= o.coeffs_[i];
  normalize();
  return *this;
}

IntPoly operator-(IntPoly a) {
  for (auto &c : a.coeffs_)
    c = -c;
  return a;
}

IntPoly operator*(const IntPoly &a, const IntPoly &b) {
  if (a.coeffs_.empty() || b.coeffs_.empty())
    return {};
  std::vector<Integer> v(a.coeffs_.size() + b.coeffs_.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0)
      continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
      v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return IntPoly(std::move(v));
}

std::string IntPoly::str() const {
  if (coeffs_.empty())
    return "0";
  std::string out;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const Integer &c = coeffs_[k];
    if (c == 0)
      continue;
    std::string mag = Integer(abs(c)).get_str();
    if (sgn(c) < 0)
      out += '-';
    else if (!out.empty())
      out += '+';
    if (k == 0) {
      out += mag;
      continue;
    }
    if (mag != "1")
      out += mag + "*";
    out += 't';
    if (k > 1)
      out += "^" + std::to_string(k);
  }
  return out;
}

namespace {

struct PolyParser {
  std::string_view s;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string &what) const {
    throw ParseError("bad polynomial '" + std::string(s) + "': " + what, 1,
                     pos + 1);
  }
  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }
  bool at(char c) {
    skip_ws();
    return pos < s.size() && s[pos] == c;
  }
  bool digit() {
    skip_ws();
    return pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]));
  }
  std::string digits() {
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
      ++pos;
    return std::string(s.substr(start, pos - start));
  }

  IntPoly run() {
    IntPoly acc;
    skip_ws();
    if (pos == s.size())
      fail("empty");
    bool first = true;
    while (true) {
      skip_ws();
      if (pos == s.size())
        break;
      int sign = 1;
      bool had_sign = false;
      while (at('+') || at('-')) {
        if (s[pos] == '-')
          sign = -sign;
        ++pos;
        had_sign = true;
      }
      if (!first && !had_sign)
        fail("expected '+' or '-'");
      first = false;
      Integer c = 1;
      bool had_coeff = false;
      if (digit()) {
        c = Integer(digits());
        had_coeff = true;
      }
      std::size_t k = 0;
      if (at('*')) {
        if (!had_coeff)
          fail("'*' without coefficient");
        ++pos;
        if (!at('t'))
          fail("expected 't' after '*'");
      }
      if (at('t')) {
        ++pos;
        k = 1;
        if (at('^')) {
          ++pos;
          if (!digit())
            fail("expected exponent");
          k = std::stoul(digits());
        }
      } else if (!had_coeff) {
        fail("expected a term");
      }
      acc += IntPoly::monomial(sign * c, k);
    }
    return acc;
  }
};

} // namespace

IntPoly IntPoly::parse(std::string_view text) { return PolyParser{text}.run(); }

std::ostream &operator<<(std::ostream &os, const IntPoly &p) {
  return os << p.str();
}

IntPoly one_minus_roots(std::initializer_list<long> roots) {
  IntPoly p = 1;
  for (long r : roots)
    p *= IntPoly{1, -r};
  return p;
}

} // namespace sft

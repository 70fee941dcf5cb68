#include "sft/niep.hpp"

#include "sft/linalg.hpp"
#include "sft/newton.hpp"
#include "sft/number_theory.hpp"
#include "sft/structure.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace sft {

CandidateSpectrum::CandidateSpectrum(std::vector<Rational> ascending)
    : poly_(std::move(ascending)) {
  for (auto &c : poly_)
    c.canonicalize();
  while (poly_.size() > 1 && poly_.back() == 0)
    poly_.pop_back();
  if (poly_.size() < 2)
    throw DomainError("candidate spectrum needs a polynomial of degree >= 1");
  if (poly_.back() != 1)
    throw DomainError("candidate spectrum polynomial must be monic");
  if (poly_.front() == 0)
    throw DomainError("candidate spectrum polynomial has a zero root");
}

CandidateSpectrum CandidateSpectrum::from_poly(const IntPoly &p) {
  std::vector<Rational> c;
  for (const auto &x : p.coeffs())
    c.emplace_back(x);
  return CandidateSpectrum(std::move(c));
}

CandidateSpectrum CandidateSpectrum::from_roots(const std::vector<Rational> &roots) {
  std::vector<Rational> p{Rational(1)};
  for (const auto &r : roots) {
    if (r == 0)
      throw DomainError("candidate spectrum lists a zero root");
    std::vector<Rational> q(p.size() + 1, Rational(0));
    for (std::size_t i = 0; i < p.size(); ++i) {
      q[i + 1] += p[i];
      q[i] -= r * p[i];
    }
    p = std::move(q);
  }
  return CandidateSpectrum(std::move(p));
}

CandidateSpectrum CandidateSpectrum::from_det(const IntPoly &q) {
  if (q.constant_term() != 1)
    throw DomainError("det(I - tA) must have constant term 1");
  const auto &c = q.coeffs();
  std::vector<Rational> p;
  for (auto it = c.rbegin(); it != c.rend(); ++it)
    p.emplace_back(*it);
  return CandidateSpectrum(std::move(p));
}

std::vector<Rational> CandidateSpectrum::reversed() const {
  return {poly_.rbegin(), poly_.rend()};
}

bool CandidateSpectrum::integral() const {
  return std::all_of(poly_.begin(), poly_.end(),
                     [](const Rational &c) { return is_integral(c); });
}

std::string CandidateSpectrum::str() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = poly_.size(); k-- > 0;) {
    const Rational &c = poly_[k];
    if (c == 0)
      continue;
    Rational a = abs(c);
    if (!first)
      os << (sgn(c) < 0 ? "-" : "+");
    else if (sgn(c) < 0)
      os << "-";
    first = false;
    const bool unit = a == 1;
    if (!unit || k == 0)
      os << a.get_str();
    if (k > 0) {
      if (!unit)
        os << "*";
      os << "t";
      if (k > 1)
        os << "^" << k;
    }
  }
  return os.str();
}

std::vector<Rational> power_sums(const CandidateSpectrum &spec, std::size_t n) {
  return traces_from_coeffs<Rational>(spec.reversed(), n);
}

namespace {

Rational eval(const std::vector<Rational> &p, const Rational &x) {
  Rational s = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it)
    s = s * x + *it;
  return s;
}

// p / (t - r), exact remainder assumed zero.
std::vector<Rational> deflate(const std::vector<Rational> &p, const Rational &r) {
  std::vector<Rational> q(p.size() - 1);
  Rational carry = 0;
  for (std::size_t i = p.size(); i-- > 1;) {
    carry = carry * r + p[i];
    q[i - 1] = carry;
  }
  return q;
}

std::vector<Integer> positive_divisors(const Integer &n) {
  std::vector<Integer> divs{Integer(1)};
  Integer rest = abs(n);
  for (const auto &q : prime_factors(n)) {
    std::size_t e = 0;
    while (rest % q == 0) {
      rest /= q;
      ++e;
    }
    const std::size_t base = divs.size();
    Integer pw = 1;
    for (std::size_t k = 1; k <= e; ++k) {
      pw *= q;
      for (std::size_t i = 0; i < base; ++i)
        divs.push_back(divs[i] * pw);
    }
  }
  return divs;
}

} // namespace

std::vector<std::pair<Rational, std::size_t>>
rational_roots(const CandidateSpectrum &spec) {
  const auto &p = spec.poly();
  Integer l = 1;
  for (const auto &c : p)
    l = lcm(l, Integer(c.get_den()));
  const Integer c0 = Integer(p.front() * l), cn = l;
  // Divisor enumeration stays cheap only for moderate coefficients.
  if (abs(c0) > Integer("1000000000000") || cn > Integer("1000000000000"))
    return {};
  std::vector<std::pair<Rational, std::size_t>> out;
  std::vector<Rational> rest = p;
  for (const auto &a : positive_divisors(c0))
    for (const auto &b : positive_divisors(cn))
      for (int s : {1, -1}) {
        Rational r(a * s, b);
        r.canonicalize();
        if (r.get_den() != b)
          continue; // seen in lowest terms already
        std::size_t mult = 0;
        while (rest.size() > 1 && eval(rest, r) == 0) {
          rest = deflate(rest, r);
          ++mult;
        }
        if (mult)
          out.emplace_back(r, mult);
      }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::complex<double>> numeric_roots(const CandidateSpectrum &spec) {
  const auto &p = spec.poly();
  const std::size_t n = spec.degree();
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                            static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i + 1 < n; ++i)
    c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i + 1)) = 1;
  for (std::size_t j = 0; j < n; ++j)
    c(static_cast<Eigen::Index>(n - 1), static_cast<Eigen::Index>(j)) =
        -p[j].get_d();
  Eigen::EigenSolver<Eigen::MatrixXd> es(c, false);
  std::vector<std::complex<double>> out;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    out.push_back(es.eigenvalues()[i]);
  return out;
}

const char *verdict_name(PerronVerdict v) {
  switch (v) {
  case PerronVerdict::Pass:
    return "pass";
  case PerronVerdict::Fail:
    return "fail";
  case PerronVerdict::Uncertain:
    return "numeric-uncertain";
  }
  return "?";
}

PerronResult check_perron(const CandidateSpectrum &spec, double tol) {
  PerronResult res;
  auto roots = numeric_roots(spec);
  std::optional<std::size_t> top;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const auto z = roots[i];
    if (std::abs(z.imag()) <= tol * std::max(1.0, std::abs(z)) &&
        z.real() > tol && (!top || z.real() > roots[*top].real()))
      top = i;
  }
  if (!top) {
    res.verdict = PerronVerdict::Fail;
    res.detail = "no positive real root";
    return res;
  }
  const double lam = roots[*top].real();
  res.dominant = lam;
  double other = 0;
  for (std::size_t i = 0; i < roots.size(); ++i)
    if (i != *top)
      other = std::max(other, std::abs(roots[i]));
  const double band = tol * std::max(1.0, lam);
  auto rr = rational_roots(spec);
  for (const auto &[r, mult] : rr)
    if (std::abs(r.get_d() - lam) <= band) {
      res.exact_root = r;
      if (mult > 1) {
        res.verdict = PerronVerdict::Fail;
        res.exact = true;
        res.detail = "dominant root " + r.get_str() + " is repeated";
        return res;
      }
    }
  if (other > lam + band) {
    res.verdict = PerronVerdict::Fail;
    res.detail = "a root of larger modulus exists";
    return res;
  }
  if (other < lam - band) {
    res.verdict = PerronVerdict::Pass;
    res.exact = res.exact_root.has_value();
    res.detail = res.exact ? "dominant root " + res.exact_root->get_str()
                           : "numeric dominant root";
    return res;
  }
  if (res.exact_root) {
    Rational neg = -*res.exact_root;
    for (const auto &[r, mult] : rr)
      if (r == neg) {
        res.verdict = PerronVerdict::Fail;
        res.exact = true;
        res.detail = "root " + neg.get_str() + " has the same modulus";
        return res;
      }
  }
  res.verdict = PerronVerdict::Uncertain;
  res.detail = "another root is within tolerance of the dominant modulus";
  return res;
}

SpectrumReport check_conditions(const CandidateSpectrum &spec,
                                SpectrumRing ring, std::size_t horizon) {
  if (horizon == 0)
    throw DomainError("check_conditions: horizon must be >= 1");
  SpectrumReport r;
  r.ring = ring;
  r.horizon = horizon;
  r.perron = check_perron(spec);
  r.traces = power_sums(spec, horizon);
  r.coefficients_ok = ring == SpectrumRing::Dense || spec.integral();
  if (ring == SpectrumRing::Z) {
    for (std::size_t n = 1; n <= horizon; ++n) {
      Rational v = net_trace<Rational>(r.traces, n);
      if (sgn(v) < 0) {
        r.net_trace_violation = n;
        r.net_trace_value = v;
        break;
      }
    }
  } else {
    for (std::size_t n = 1; n <= horizon && !r.trace_violation; ++n)
      if (sgn(r.traces[n - 1]) < 0)
        r.trace_violation = n;
    for (std::size_t n = 1; n <= horizon && !r.growth_violation; ++n) {
      if (sgn(r.traces[n - 1]) <= 0)
        continue;
      for (std::size_t k = 2; n * k <= horizon; ++k)
        if (sgn(r.traces[n * k - 1]) <= 0) {
          r.growth_violation = std::make_pair(n, k);
          break;
        }
    }
  }
  r.jll_min_size = jll_min_size_bound(spec, std::min<std::size_t>(horizon, 32));
  return r;
}

JllResult jll_check(const IntMatrix &a, std::size_t max_m, std::size_t max_k) {
  require_nonnegative_square(a, "jll_check");
  const Integer n = static_cast<unsigned long>(a.rows());
  std::map<std::size_t, Integer> tr;
  auto trace_pow = [&](std::size_t e) -> const Integer & {
    auto it = tr.find(e);
    if (it == tr.end())
      it = tr.emplace(e, trace(power(a, e))).first;
    return it->second;
  };
  JllResult res;
  for (std::size_t m = 1; m <= max_m; ++m)
    for (std::size_t k = 1; k <= max_k; ++k) {
      Integer lhs, rhs;
      mpz_pow_ui(lhs.get_mpz_t(), n.get_mpz_t(), k - 1);
      lhs *= trace_pow(m * k);
      mpz_pow_ui(rhs.get_mpz_t(), trace_pow(m).get_mpz_t(), k);
      if (lhs < rhs) {
        res.ok = false;
        res.violation = std::make_pair(m, k);
        return res;
      }
    }
  return res;
}

std::size_t jll_min_size_bound(const CandidateSpectrum &spec, std::size_t max_k) {
  if (max_k < 2)
    return 1;
  auto s = power_sums(spec, max_k);
  if (sgn(s[0]) <= 0)
    return 1;
  Integer best = 1;
  for (std::size_t k = 2; k <= max_k; ++k) {
    if (sgn(s[k - 1]) <= 0)
      continue;
    Rational target = s[0];
    for (std::size_t i = 1; i < k; ++i)
      target *= s[0];
    target /= s[k - 1];
    auto enough = [&](const Integer &n) {
      Integer pw;
      mpz_pow_ui(pw.get_mpz_t(), n.get_mpz_t(), k - 1);
      return Rational(pw) >= target;
    };
    Integer lo = 1, hi = 1;
    while (!enough(hi)) {
      lo = hi;
      hi *= 2;
    }
    while (lo < hi) { // smallest n in [lo, hi] with enough(n)
      Integer mid = (lo + hi) / 2;
      if (enough(mid))
        hi = mid;
      else
        lo = mid + 1;
    }
    best = std::max(best, hi);
  }
  if (!best.fits_ulong_p())
    throw BudgetExceededError("jll_min_size_bound: bound does not fit");
  return best.get_ui();
}

RatMatrix suleimanova_realize(const std::vector<Rational> &lams) {
  if (lams.empty())
    throw PreconditionError("suleimanova_realize: empty spectrum");
  if (sgn(lams[0]) <= 0)
    throw PreconditionError("suleimanova_realize: first value must be positive");
  Rational sum = 0;
  for (std::size_t i = 0; i < lams.size(); ++i) {
    if (i > 0 && sgn(lams[i]) > 0)
      throw PreconditionError("suleimanova_realize: value " +
                              std::to_string(i + 1) + " is positive");
    sum += lams[i];
  }
  if (sgn(sum) < 0)
    throw PreconditionError("suleimanova_realize: negative trace");
  std::vector<Rational> p{Rational(1)};
  for (const auto &r : lams) {
    std::vector<Rational> q(p.size() + 1, Rational(0));
    for (std::size_t i = 0; i < p.size(); ++i) {
      q[i + 1] += p[i];
      q[i] -= r * p[i];
    }
    p = std::move(q);
  }
  const std::size_t n = lams.size();
  RatMatrix c(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i)
    c(i, i + 1) = 1;
  for (std::size_t j = 0; j < n; ++j)
    c(n - 1, j) = -p[j];
  for (const auto &x : c.entries())
    if (sgn(x) < 0)
      throw InternalError("suleimanova_realize: negative companion entry");
  auto cp = berkowitz(c); // descending
  for (std::size_t k = 0; k <= n; ++k)
    if (cp[k] != p[n - k])
      throw InternalError("suleimanova_realize: characteristic polynomial differs");
  return c;
}

IntMatrix inflate_period(const IntMatrix &d, std::size_t p) {
  require_nonnegative_square(d, "inflate_period");
  if (p == 0)
    throw DomainError("inflate_period: p must be >= 1");
  if (p == 1)
    return d;
  const std::size_t n = d.rows();
  IntMatrix a(n * p, n * p);
  const IntMatrix id = IntMatrix::identity(n);
  a.set_block(0, n, d);
  for (std::size_t i = 1; i + 1 < p; ++i)
    a.set_block(i * n, (i + 1) * n, id);
  a.set_block((p - 1) * n, 0, id);
  if (det_one_minus_tA(a) != spectrum_pth_root_poly(det_one_minus_tA(d), p))
    throw InternalError("inflate_period: det(I - tA) != det(I - t^p D)");
  return a;
}

IntPoly spectrum_pth_root_poly(const IntPoly &q, std::size_t p) {
  if (p == 0)
    throw DomainError("spectrum_pth_root_poly: p must be >= 1");
  return q.substitute_power(p);
}

std::optional<std::size_t> eventually_positive(const IntMatrix &a,
                                               std::size_t kmax) {
  if (!a.square())
    throw DimensionError("eventually_positive: matrix must be square");
  if (a.rows() == 0)
    return std::nullopt;
  IntMatrix p = a;
  for (std::size_t k = 1; k <= kmax; ++k) {
    if (is_positive(p))
      return k;
    if (k < kmax)
      p = p * a;
  }
  return std::nullopt;
}

LaffeyQuantities laffey_quantities(const CandidateSpectrum &spec, std::size_t n) {
  if (eval(spec.poly(), Rational(1)) != 0)
    throw PreconditionError("laffey_quantities: Perron value must be 1");
  LaffeyQuantities lq;
  auto roots = numeric_roots(spec);
  std::size_t one = 0;
  for (std::size_t i = 1; i < roots.size(); ++i)
    if (std::abs(roots[i] - 1.0) < std::abs(roots[one] - 1.0))
      one = i;
  double sub = 0;
  for (std::size_t i = 0; i < roots.size(); ++i)
    if (i != one)
      sub = std::max(sub, std::abs(roots[i]));
  lq.G = 1 - sub;
  auto rr = rational_roots(spec);
  std::size_t total = 0;
  for (const auto &e : rr)
    total += e.second;
  if (total == spec.degree()) {
    Rational m = 0;
    for (const auto &[r, mult] : rr) {
      if (r == 1 && mult == 1)
        continue;
      m = std::max(m, Rational(abs(r)));
    }
    lq.G_exact = 1 - m;
  }
  if (spec.degree() > 1 && n >= 2) {
    auto s = power_sums(spec, n);
    lq.M_at = 2;
    for (std::size_t k = 3; k <= n; ++k)
      if (s[k - 1] < s[lq.M_at - 1])
        lq.M_at = k;
    lq.M = s[lq.M_at - 1];
  }
  lq.bound = "N <= kappa_n * (1/(M*G))^n";
  return lq;
}

} // namespace sft

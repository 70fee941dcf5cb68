#include "oracles.hpp"

#include "sft/linalg.hpp"
#include "sft/niep.hpp"
#include "sft/structure.hpp"

#include <doctest.h>

using namespace sft;

namespace {

// Σ λ^n directly from the roots.
Rational root_power_sum(const std::vector<Rational> &roots, std::size_t n) {
  Rational s = 0;
  for (const Rational &r : roots) {
    Rational p = 1;
    for (std::size_t k = 0; k < n; ++k)
      p *= r;
    s += p;
  }
  return s;
}

IntMatrix random_primitive(std::mt19937_64 &rng, std::size_t n) {
  while (true) {
    IntMatrix a = oracle::random_matrix(rng, n, n, -1, 2);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (a(i, j) < 0)
          a(i, j) = 0;
    if (is_primitive(a).primitive)
      return a;
  }
}

CandidateSpectrum ascending(std::initializer_list<Rational> c) {
  return CandidateSpectrum(std::vector<Rational>(c));
}

} // namespace

TEST_CASE("candidate spectra") {
  CHECK_THROWS(ascending({Rational(0), Rational(1)}));
  CHECK_THROWS(ascending({Rational(1), Rational(2)}));
  auto s = CandidateSpectrum::from_roots({Rational(5), Rational(-1), Rational(-2)});
  CHECK(s.degree() == 3);
  CHECK(s.integral());
  CHECK(s.poly() == std::vector<Rational>{Rational(-10), Rational(-13), Rational(-2), Rational(1)});
  auto d = CandidateSpectrum::from_det(IntPoly{1, -3, 2});
  CHECK(d.poly() == std::vector<Rational>{Rational(2), Rational(-3), Rational(1)});
  CHECK(CandidateSpectrum::from_det(IntPoly{1, -3, 2, 0, 0}).degree() == 2);
}

TEST_CASE("power sums") {
  // (t-2)(t-1)(t^2+1)^2
  IntPoly p = IntPoly{-2, 1} * IntPoly{-1, 1} * IntPoly{1, 0, 1} * IntPoly{1, 0, 1};
  auto lam = CandidateSpectrum::from_poly(p);
  auto s = power_sums(lam, 4);
  CHECK(s[0] == 3);
  CHECK(s[1] == 1);
  auto eight = CandidateSpectrum::from_roots({Rational(8), Rational(7), Rational(7)});
  CHECK(power_sums(eight, 1)[0] == 22);
  auto single = CandidateSpectrum::from_roots({Rational(3)});
  auto s3 = power_sums(single, 5);
  for (std::size_t k = 0; k < 5; ++k)
    CHECK(s3[k] == root_power_sum({Rational(3)}, k + 1));

  std::mt19937_64 rng(167);
  std::uniform_int_distribution<long> num(-9, 9), den(1, 4);
  for (int i = 0; i < 100; ++i) {
    std::vector<Rational> roots;
    for (int k = 0; k < 1 + i % 5; ++k) {
      Rational r(num(rng), den(rng));
      r.canonicalize();
      if (r == 0)
        r = 1;
      roots.push_back(r);
    }
    auto spec = CandidateSpectrum::from_roots(roots);
    auto sums = power_sums(spec, 8);
    for (std::size_t n = 1; n <= 8; ++n)
      CHECK(sums[n - 1] == root_power_sum(roots, n));
    std::size_t total = 0;
    for (auto &[root, mult] : rational_roots(spec)) {
      CHECK(std::count(roots.begin(), roots.end(), root) == static_cast<long>(mult));
      total += mult;
    }
    CHECK(total == roots.size());
  }
}

TEST_CASE("Perron check") {
  auto ok = check_perron(CandidateSpectrum::from_roots({Rational(2), Rational(1)}));
  CHECK(ok.verdict == PerronVerdict::Pass);
  CHECK(ok.exact);
  CHECK(ok.exact_root == std::optional<Rational>(Rational(2)));
  CHECK(check_perron(CandidateSpectrum::from_poly(IntPoly{1, 0, 1})).verdict ==
        PerronVerdict::Fail);
  CHECK(check_perron(CandidateSpectrum::from_roots({Rational(2), Rational(-2)})).verdict ==
        PerronVerdict::Fail);
  // golden ratio: dominant but irrational
  auto phi = check_perron(CandidateSpectrum::from_poly(IntPoly{-1, -1, 1}));
  CHECK(phi.verdict == PerronVerdict::Pass);
  CHECK_FALSE(phi.exact);
  CHECK(std::string(verdict_name(PerronVerdict::Uncertain)) == "numeric-uncertain");
}

TEST_CASE("spectral conditions") {
  IntPoly p = IntPoly{-2, 1} * IntPoly{-1, 1} * IntPoly{1, 0, 1} * IntPoly{1, 0, 1};
  auto lam = CandidateSpectrum::from_poly(p);
  SpectrumReport z = check_conditions(lam, SpectrumRing::Z, 32);
  CHECK(z.net_trace_violation == std::optional<std::size_t>(2));
  CHECK(z.net_trace_value == -2);
  CHECK_FALSE(z.ok());
  SpectrumReport dense = check_conditions(lam, SpectrumRing::Dense, 32);
  CHECK(dense.traces_ok());
  CHECK(dense.ok());

  auto t = CandidateSpectrum::from_roots({Rational(3), Rational(-1), Rational(-1)});
  SpectrumReport r = check_conditions(t, SpectrumRing::Z, 40);
  CHECK(r.traces[0] == 1);
  CHECK(r.traces[1] == 11);
  CHECK(r.traces[2] == 25);
  CHECK(r.ok());
}

TEST_CASE("necessary conditions hold for spectra of primitive matrices") {
  std::mt19937_64 rng(173);
  for (int i = 0; i < 40; ++i) {
    IntMatrix a = random_primitive(rng, 1 + i % 4);
    auto spec = CandidateSpectrum::from_det(det_one_minus_tA(a));
    SpectrumReport z = check_conditions(spec, SpectrumRing::Z, 24);
    CHECK(z.traces_ok());
    CHECK(z.perron.verdict != PerronVerdict::Fail);
    SpectrumReport d = check_conditions(spec, SpectrumRing::Dense, 24);
    CHECK(d.traces_ok());
    CHECK(d.jll_min_size <= a.rows());
  }
}

TEST_CASE("JLL inequalities") {
  CHECK(jll_check(int_matrix(1, 1, {2}), 1, 3).ok);
  std::mt19937_64 rng(179);
  for (int i = 0; i < 60; ++i) {
    std::size_t n = 1 + i % 4;
    IntMatrix a = oracle::random_matrix(rng, n, n, 0, 3);
    CHECK(jll_check(a, 4, 4).ok);
  }
  CHECK_THROWS_AS(jll_check(int_matrix(2, 2, {1, 3, -3, 1}), 2, 2), DomainError);

  // (t - 1)(t^2 + 9/20): s1 = 1, s2 = 1/10
  auto eps = ascending({Rational(-9, 20), Rational(9, 20), Rational(-1), Rational(1)});
  CHECK(power_sums(eps, 2)[1] == Rational(1, 10));
  CHECK(jll_min_size_bound(eps, 6) >= 10);
  CHECK(jll_min_size_bound(CandidateSpectrum::from_roots({Rational(2)}), 6) == 1);
  auto quarter = ascending({Rational(81, 100), Rational(-162, 100), Rational(181, 100),
                            Rational(-2), Rational(1)});
  auto qs = power_sums(quarter, 2);
  CHECK(qs[0] == 2);
  std::size_t want = 1;
  while (Rational(static_cast<long>(want)) * qs[1] < 4)
    ++want;
  CHECK(jll_min_size_bound(quarter, 2) == want);
}

TEST_CASE("Suleimanova companion") {
  RatMatrix c = suleimanova_realize({Rational(5), Rational(-1), Rational(-2)});
  CHECK(to_integer(c) == int_matrix(3, 3, {0, 1, 0, 0, 0, 1, 10, 13, 2}));
  CHECK(to_integer(suleimanova_realize({Rational(1)})) == int_matrix(1, 1, {1}));
  RatMatrix four = suleimanova_realize({Rational(3), Rational(-1), Rational(-1), Rational(-1)});
  CHECK(to_integer(four) ==
        int_matrix(4, 4, {0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 3, 8, 6, 0}));
  CHECK_THROWS_AS(suleimanova_realize({Rational(1), Rational(-2)}), PreconditionError);
  CHECK_THROWS_AS(suleimanova_realize({Rational(3), Rational(1)}), PreconditionError);

  std::mt19937_64 rng(181);
  std::uniform_int_distribution<long> neg(1, 6);
  for (int i = 0; i < 50; ++i) {
    std::vector<Rational> lams{Rational(0)};
    Rational sum = 0;
    for (int k = 0; k < i % 4; ++k) {
      Rational l(-neg(rng), 1 + static_cast<long>(rng() % 3));
      l.canonicalize();
      lams.push_back(l);
      sum -= l;
    }
    lams[0] = sum + 1;
    RatMatrix m = suleimanova_realize(lams);
    for (const auto &e : m.entries())
      CHECK(sgn(e) >= 0);
    auto cp = berkowitz(m);
    auto want = CandidateSpectrum::from_roots(lams).poly();
    std::reverse(want.begin(), want.end());
    CHECK(cp == want);
  }
}

TEST_CASE("period inflation") {
  CHECK(inflate_period(int_matrix(1, 1, {2}), 2) == int_matrix(2, 2, {0, 2, 1, 0}));
  CHECK(det_one_minus_tA(inflate_period(int_matrix(1, 1, {2}), 2)) == IntPoly{1, 0, -2});
  IntMatrix d = int_matrix(2, 2, {1, 1, 1, 0});
  CHECK(inflate_period(d, 1) == d);
  IntPoly q = IntPoly{1, -8} * IntPoly{1, -7} * IntPoly{1, -7};
  CHECK(spectrum_pth_root_poly(q, 3) == q.substitute_power(3));

  std::mt19937_64 rng(191);
  for (int i = 0; i < 50; ++i) {
    IntMatrix dd = random_primitive(rng, 1 + i % 3);
    std::size_t p = 1 + i % 5;
    IntMatrix a = inflate_period(dd, p);
    CHECK(oracle::det_one_minus_tA(a) == det_one_minus_tA(dd).substitute_power(p));
    CHECK(is_irreducible(a));
    CHECK(period(a) == p);
    for (std::size_t n = 1; n <= 10; ++n)
      if (n % p != 0)
        CHECK(trace(power(a, n)) == 0);
  }
}

TEST_CASE("eventual positivity") {
  CHECK(eventually_positive(int_matrix(2, 2, {1, 1, 1, 0}), 10) ==
        std::optional<std::size_t>(2));
  CHECK_FALSE(eventually_positive(int_matrix(2, 2, {0, 1, 1, 0}), 50).has_value());
  CHECK_FALSE(eventually_positive(IntMatrix::identity(2), 50).has_value());
  CHECK(eventually_positive(int_matrix(2, 2, {2, 1, 1, 0}), 5).has_value());
}

TEST_CASE("Laffey quantities") {
  auto lq = laffey_quantities(CandidateSpectrum::from_roots({Rational(1), Rational(-3, 4)}), 8);
  REQUIRE(lq.G_exact.has_value());
  CHECK(*lq.G_exact == Rational(1, 4));

  std::vector<Rational> roots{Rational(1), Rational(1, 2), Rational(1, 2)};
  auto half = laffey_quantities(CandidateSpectrum::from_roots(roots), 10);
  CHECK(*half.G_exact == Rational(1, 2));
  Rational best = root_power_sum(roots, 2);
  std::size_t at = 2;
  for (std::size_t n = 3; n <= 10; ++n)
    if (root_power_sum(roots, n) < best) {
      best = root_power_sum(roots, n);
      at = n;
    }
  REQUIRE(half.M.has_value());
  CHECK(*half.M == best);
  CHECK(*half.M == Rational(513, 512));
  CHECK(half.M_at == at);

  auto one = laffey_quantities(CandidateSpectrum::from_roots({Rational(1)}), 10);
  CHECK(one.G == doctest::Approx(1.0));
  CHECK_FALSE(one.M.has_value());
  CHECK_THROWS(laffey_quantities(CandidateSpectrum::from_roots({Rational(2)}), 5));
}

#include "oracles.hpp"

#include "sft/gyration.hpp"
#include "sft/structure.hpp"

#include <doctest.h>

#include <algorithm>

using namespace sft;

namespace {

// The three displayed sums, term by term, with no shortcuts.
int sgc2_oracle(const IntMatrix &R, const IntMatrix &S) {
  const std::size_t m = R.rows(), n = R.cols();
  Integer total = 0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          if (k > l)
            total += R(i, k) * S(k, i) * R(j, l) * S(l, j);
          if (k >= l)
            total += R(i, k) * S(k, j) * R(j, l) * S(l, i);
        }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      total += R(i, j) * (R(i, j) - 1) / 2 * S(j, i) * S(j, i);
  Integer r = total % 2;
  return r == 0 ? 0 : 1;
}

IntMatrix random_nondegenerate(std::mt19937_64 &rng, std::size_t n, long hi) {
  while (true) {
    IntMatrix a = oracle::random_matrix(rng, n, n, -1, hi);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (a(i, j) < 0)
          a(i, j) = 0;
    if (nondegenerate_core(a).core.rows() == n)
      return a;
  }
}

// Brute force: all cyclic words of length n whose consecutive edges chain.
std::size_t count_closed_words(const IntMatrix &a, std::size_t n) {
  EdgeSet es(a);
  std::size_t count = 0;
  std::vector<std::size_t> w(n, 0);
  const std::size_t e = es.size();
  if (e == 0)
    return 0;
  while (true) {
    bool ok = true;
    for (std::size_t m = 0; m < n && ok; ++m)
      ok = es.edges[w[m]].to == es.edges[w[(m + 1) % n]].from;
    count += ok;
    std::size_t pos = 0;
    while (pos < n && w[pos] == e - 1)
      w[pos++] = 0;
    if (pos == n)
      break;
    ++w[pos];
  }
  return count;
}

} // namespace

TEST_CASE("periodic point tables") {
  IntMatrix two = int_matrix(1, 1, {2});
  auto t2 = enumerate_periodic(two, 2);
  CHECK(t2.points.size() == 4);
  CHECK(t2.orbits.size() == 3);
  std::size_t fixed = 0, two_orbits = 0;
  for (std::size_t o = 0; o < t2.orbits.size(); ++o)
    (t2.least_period[o] == 1 ? fixed : two_orbits) += 1;
  CHECK(fixed == 2);
  CHECK(two_orbits == 1);
  CHECK(enumerate_periodic(int_matrix(2, 2, {0, 1, 1, 0}), 1).points.empty());
  CHECK_THROWS_AS(enumerate_periodic(int_matrix(1, 1, {9}), 8, 1000), BudgetExceededError);
  CHECK(rotate(Word{0, 1, 2}, 1) == Word{1, 2, 0});

  std::mt19937_64 rng(131);
  for (int i = 0; i < 30; ++i) {
    std::size_t n = 1 + i % 3;
    IntMatrix a = oracle::random_matrix(rng, n, n, 0, 2);
    for (std::size_t k = 1; k <= 4; ++k) {
      auto t = enumerate_periodic(a, k);
      CHECK(t.points.size() == oracle::closed_walks(a, k));
      CHECK(t.points.size() == count_closed_words(a, k));
      std::size_t least_k = 0;
      for (std::size_t o = 0; o < t.orbits.size(); ++o) {
        CHECK(t.orbits[o].size() == t.least_period[o]);
        CHECK(t.representative[o] == *std::min_element(t.orbits[o].begin(), t.orbits[o].end()));
        if (t.least_period[o] == k)
          ++least_k;
      }
      CHECK(Integer(static_cast<long>(least_k * k)) ==
            fix_counts(a, k).least_period_counts[k - 1]);
    }
  }
}

TEST_CASE("block codes") {
  IntMatrix three = int_matrix(1, 1, {3});
  BlockCode plus;
  plus.domain = plus.range = three;
  plus.table = {{Word{0}, 1}, {Word{1}, 2}, {Word{2}, 0}};
  CHECK(verify_block_code(plus).ok());
  BlockCode minus = plus;
  minus.table = {{Word{0}, 2}, {Word{1}, 0}, {Word{2}, 1}};
  CHECK(verify_automorphism({plus, minus}).ok());
  CHECK_FALSE(verify_automorphism({plus, plus}).ok());
  CHECK(is_identity_code(compose_codes(plus, minus)));

  for (std::size_t n = 1; n <= 4; ++n) {
    auto t = enumerate_periodic(three, n);
    PeriodicMap pmap = apply_code_periodic(plus, t, t);
    CHECK(pmap.bijective);
    for (std::size_t p = 0; p < t.points.size(); ++p) {
      std::size_t q = pmap.point_map[pmap.point_map[pmap.point_map[p]]];
      CHECK(q == p);
      if (n >= 1)
        CHECK(pmap.point_map[p] != p);
    }
  }

  BlockCode missing = plus;
  missing.table.erase(Word{2});
  CHECK_FALSE(verify_block_code(missing).ok());
  BlockCode round = block_code_from_json(to_json(plus));
  CHECK(round.table == plus.table);

  IntMatrix golden = int_matrix(2, 2, {1, 1, 1, 0});
  CHECK(verify_block_code(shift_code(golden)).ok());
  CHECK(is_identity_code(identity_code(golden)));
  CHECK_FALSE(is_identity_code(shift_code(golden)));
}

TEST_CASE("simple graph symmetry") {
  // vertex 0 has a loop and two parallel edges to vertex 1
  IntMatrix a = int_matrix(2, 2, {1, 2, 1, 0});
  EdgeSet es(a);
  std::size_t c = es.id(0, 1, 0), d = es.id(0, 1, 1);
  std::vector<std::size_t> perm(es.size());
  for (std::size_t e = 0; e < perm.size(); ++e)
    perm[e] = e;
  std::swap(perm[c], perm[d]);
  BlockCode sym = simple_graph_symmetry(a, perm);
  CHECK(verify_block_code(sym).ok());
  for (std::size_t n = 1; n <= 5; ++n) {
    auto t = enumerate_periodic(a, n);
    auto pmap = apply_code_periodic(sym, t, t);
    CHECK(pmap.bijective);
    for (std::size_t p = 0; p < t.points.size(); ++p) {
      CHECK(pmap.point_map[pmap.point_map[p]] == p);
      const Word &w = t.points[p];
      bool touches = std::find(w.begin(), w.end(), c) != w.end() ||
                     std::find(w.begin(), w.end(), d) != w.end();
      CHECK((pmap.point_map[p] == p) == !touches);
    }
  }
  std::vector<std::size_t> ident(es.size());
  for (std::size_t e = 0; e < ident.size(); ++e)
    ident[e] = e;
  CHECK(is_identity_code(simple_graph_symmetry(a, ident)));
  std::vector<std::size_t> bad = ident;
  std::swap(bad[es.id(0, 0, 0)], bad[c]);
  CHECK_THROWS_AS(simple_graph_symmetry(a, bad), PreconditionError);
}

TEST_CASE("c(R,S) identities") {
  std::mt19937_64 rng(137);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 1 + trial % 3;
    IntMatrix a = random_nondegenerate(rng, n, 2);
    IntMatrix id = IntMatrix::identity(n);
    BlockCode left = conjugacy_from_esse(id, a);
    BlockCode right = conjugacy_from_esse(a, id);
    for (std::size_t k = 1; k <= 6; ++k) {
      if (oracle::closed_walks(a, k) > 20000)
        break;
      auto t = enumerate_periodic(a, k);
      auto m1 = apply_code_periodic(left, t, t);
      auto m2 = apply_code_periodic(right, t, t);
      for (std::size_t p = 0; p < t.points.size(); ++p) {
        CHECK(m1.point_map[p] == p);
        CHECK(t.points[m2.point_map[p]] == rotate(t.points[p], 1));
      }
    }
  }
  CHECK_THROWS_AS(conjugacy_from_esse(int_matrix(1, 1, {1}), int_matrix(1, 1, {0})),
                  PreconditionError);
}

TEST_CASE("c(S,R) after c(R,S) is the shift for zero-one matrices") {
  std::mt19937_64 rng(139);
  int done = 0;
  for (int trial = 0; trial < 5000 && done < 20; ++trial) {
    std::size_t m = 1 + trial % 3, n = 1 + (trial / 3) % 3;
    IntMatrix r = oracle::random_matrix(rng, m, n, 0, 1);
    IntMatrix s = oracle::random_matrix(rng, n, m, 0, 1);
    IntMatrix a = r * s, b = s * r;
    bool zero_one = true;
    for (const auto &e : a.entries())
      zero_one = zero_one && e <= 1;
    for (const auto &e : b.entries())
      zero_one = zero_one && e <= 1;
    if (!zero_one || nondegenerate_core(a).core.rows() != m ||
        nondegenerate_core(b).core.rows() != n)
      continue;
    ++done;
    BlockCode rs = conjugacy_from_esse(r, s), sr = conjugacy_from_esse(s, r);
    CHECK(verify_block_code(rs).ok());
    PeriodicAction both = compose(code_action(sr), code_action(rs));
    for (std::size_t k = 1; k <= 6; ++k) {
      auto ta = enumerate_periodic(a, k);
      auto tb = enumerate_periodic(b, k);
      auto fwd = apply_code_periodic(rs, ta, tb);
      CHECK(fwd.bijective);
      for (std::size_t p = 0; p < ta.points.size(); ++p) {
        // commutes with rotation
        std::size_t rp = ta.index.at(rotate(ta.points[p], 1));
        CHECK(tb.points[fwd.point_map[rp]] == rotate(tb.points[fwd.point_map[p]], 1));
        CHECK(both(ta.points[p]) == rotate(ta.points[p], 1));
      }
    }
  }
  CHECK(done == 20);
}

TEST_CASE("gyration numbers") {
  IntMatrix two = int_matrix(1, 1, {2});
  for (std::size_t k = 1; k <= 6; ++k) {
    GyrationData id = gyration(two, identity_action(), k);
    CHECK(id.g == 0);
    CHECK(id.sign == 0);
    GyrationData sh = gyration(two, shift_action(), k);
    CHECK(sh.g == sh.orbit_count % k);
    CHECK(sh.sign == 0);
  }
  CHECK(sgcc(two, shift_action(), 6) == 3);
  PeriodicAction one = one_orbit_shift(Word{0, 0, 0, 0, 0, 1});
  CHECK(gyration(two, one, 6).g == 1);
  CHECK(sgcc(two, one, 6) == 1);
  CHECK(sgcc(two, shift_action(), 5) == gyration(two, shift_action(), 5).g);
}

TEST_CASE("gyration does not depend on the orbit representatives") {
  IntMatrix three = int_matrix(1, 1, {3});
  BlockCode plus;
  plus.domain = plus.range = three;
  plus.table = {{Word{0}, 1}, {Word{1}, 2}, {Word{2}, 0}};
  std::vector<PeriodicAction> actions{shift_action(), code_action(plus),
                                      compose(shift_action(), code_action(plus)),
                                      one_orbit_shift(Word{0, 1, 2, 2})};
  std::mt19937_64 rng(149);
  for (const auto &act : actions)
    for (std::size_t k = 1; k <= 4; ++k) {
      GyrationData base = gyration(three, act, k);
      for (int rep = 0; rep < 5; ++rep) {
        std::vector<std::size_t> off(base.orbit_count);
        for (auto &o : off)
          o = rng() % k;
        GyrationData g = gyration(three, act, k, &off);
        CHECK(g.g == base.g);
        CHECK(g.sign == base.sign);
      }
    }
}

TEST_CASE("SGCC is additive under composition") {
  IntMatrix three = int_matrix(1, 1, {3});
  BlockCode plus;
  plus.domain = plus.range = three;
  plus.table = {{Word{0}, 1}, {Word{1}, 2}, {Word{2}, 0}};
  BlockCode swap01 = plus;
  swap01.table = {{Word{0}, 1}, {Word{1}, 0}, {Word{2}, 2}};
  std::vector<PeriodicAction> acts{shift_action(), code_action(plus), code_action(swap01),
                                   one_orbit_shift(Word{0, 0, 1, 2}),
                                   one_orbit_shift(Word{0, 1})};
  for (std::size_t m : {2u, 4u}) {
    for (const auto &x : acts)
      for (const auto &y : acts) {
        std::size_t lhs = sgcc(three, compose(x, y), m);
        std::size_t rhs = (sgcc(three, x, m) + sgcc(three, y, m)) % m;
        CHECK(lhs == rhs);
      }
  }
}

TEST_CASE("sgc2 formula") {
  CHECK(sgc2(int_matrix(1, 2, {1, 1}), int_matrix(2, 1, {1, 1})) == 0);
  CHECK(sgc2(int_matrix(2, 2, {0, 1, 0, 0}), IntMatrix::identity(2)) == 0);
  CHECK(sgc2(int_matrix(1, 1, {2}), int_matrix(1, 1, {1})) == 1);
  CHECK_THROWS_AS(sgc2(int_matrix(1, 2, {1, 1}), int_matrix(1, 1, {1})), DimensionError);
  std::mt19937_64 rng(151);
  for (int i = 0; i < 300; ++i) {
    std::size_t m = 1 + i % 3, n = 1 + (i / 3) % 3;
    IntMatrix r = oracle::random_matrix(rng, m, n, -3, 3);
    IntMatrix s = oracle::random_matrix(rng, n, m, -3, 3);
    CHECK(sgc2(r, s) == sgc2_oracle(r, s));
  }
}

TEST_CASE("triangles and the cocycle identity") {
  std::mt19937_64 rng(157);
  for (int i = 0; i < 1000; ++i) {
    Triangle t = random_triangle(rng, 3, -2, 2);
    REQUIRE(verify_triangle(t).ok());
    int lhs = (sgc2_oracle(t.e1.R, t.e1.S) + sgc2_oracle(t.e2.R, t.e2.S)) % 2;
    CHECK(lhs == sgc2_oracle(t.e3.R, t.e3.S));
    CHECK((sgc2(t.e1.R, t.e1.S) + sgc2(t.e2.R, t.e2.S)) % 2 == sgc2(t.e3.R, t.e3.S));
  }
  Triangle t = random_triangle(rng, 3, 1, 2);
  t.e2.S(0, 0) += 1;
  CHECK_FALSE(verify_triangle(t).ok());
}

TEST_CASE("path sgc2") {
  CHECK(path_sgc2(SsePath{}) == 0);
  EsseWitness w{int_matrix(1, 1, {2}), int_matrix(1, 1, {1}), Ring::Z};
  SsePath p{{{w, +1}}};
  CHECK(path_sgc2(p) == 1);
  SsePath back{{{w, +1}, {w, -1}}};
  CHECK(path_sgc2(back) == 0);
  SsePath broken{{{w, +1}, {EsseWitness{int_matrix(1, 1, {3}), int_matrix(1, 1, {1}), Ring::Z}, +1}}};
  CHECK_THROWS_AS(path_sgc2(broken), PreconditionError);
}

TEST_CASE("sgc2 vanishes on nonnegative edges in trace-zero components") {
  std::mt19937_64 rng(163);
  std::size_t edges = 0;
  for (int i = 0; i < 40 && edges < 200; ++i) {
    std::size_t n = 2 + i % 2;
    IntMatrix a(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = r + 1; c < n; ++c)
        a(r, c) = static_cast<long>(rng() % 3);
    REQUIRE(trace(a) == 0);
    REQUIRE(trace(a * a) == 0);
    NeighborOptions opt;
    opt.max_inner = n;
    opt.max_entry = 2;
    opt.max_results = 40;
    for (const Neighbor &nb : esse_neighbors(a, opt).neighbors) {
      CHECK(sgc2(nb.witness.R, nb.witness.S) == 0);
      ++edges;
    }
  }
  CHECK(edges >= 50);
}

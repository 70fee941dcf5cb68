#include "sft/gyration.hpp"

#include "sft/matrix_io.hpp"
#include "sft/structure.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace sft {

namespace {

constexpr std::size_t kMaxEdges = 1000000;

std::size_t small(const Integer &z, const char *what) {
  if (sgn(z) < 0 || !z.fits_ulong_p() || z.get_ui() > kMaxEdges)
    throw BudgetExceededError(std::string(what) + ": entry too large");
  return z.get_ui();
}

std::string word_key(const Word &w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i)
      s += ',';
    s += std::to_string(w[i]);
  }
  return s;
}

Word parse_word_key(const std::string &s) {
  Word w;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      std::size_t pos = 0;
      unsigned long v = std::stoul(tok, &pos);
      if (pos != tok.size())
        throw ParseError("bad word key '" + s + "'");
      w.push_back(static_cast<std::uint32_t>(v));
    } catch (const std::logic_error &) {
      throw ParseError("bad word key '" + s + "'");
    }
  }
  return w;
}

} // namespace

EdgeSet::EdgeSet(const IntMatrix &a) : n(a.rows()) {
  require_nonnegative_square(a, "edge set");
  first.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      first[i * n + j] = edges.size();
      const std::size_t m = small(a(i, j), "edge set");
      if (edges.size() + m > kMaxEdges)
        throw BudgetExceededError("edge set: too many edges");
      for (std::size_t c = 0; c < m; ++c)
        edges.push_back({i, j, c});
    }
}

std::size_t EdgeSet::id(std::size_t i, std::size_t j, std::size_t copy) const {
  return first[i * n + j] + copy;
}

std::vector<Word> legal_words(const IntMatrix &a, std::size_t length,
                              std::size_t budget) {
  EdgeSet es(a);
  std::vector<Word> out;
  if (length == 0) {
    out.emplace_back();
    return out;
  }
  // out-edges of v are the contiguous id range [first[v*n], first[v*n]+row sum)
  std::vector<std::size_t> lo(es.n), hi(es.n);
  for (std::size_t v = 0; v < es.n; ++v) {
    lo[v] = es.n ? es.first[v * es.n] : 0;
    hi[v] = v + 1 < es.n ? es.first[(v + 1) * es.n] : es.size();
  }
  Word w;
  auto rec = [&](auto &&self) -> void {
    if (w.size() == length) {
      if (out.size() >= budget)
        throw BudgetExceededError("legal_words: budget exceeded");
      out.push_back(w);
      return;
    }
    const std::size_t v = es.edges[w.back()].to;
    for (std::size_t e = lo[v]; e < hi[v]; ++e) {
      w.push_back(static_cast<std::uint32_t>(e));
      self(self);
      w.pop_back();
    }
  };
  for (std::size_t e = 0; e < es.size(); ++e) {
    w.assign(1, static_cast<std::uint32_t>(e));
    rec(rec);
  }
  return out;
}

Word rotate(const Word &w, std::size_t r) {
  const std::size_t n = w.size();
  Word out(n);
  for (std::size_t m = 0; m < n; ++m)
    out[m] = w[(m + r) % n];
  return out;
}

PeriodicOrbitTable enumerate_periodic(const IntMatrix &a, std::size_t n,
                                      std::size_t budget) {
  if (n == 0)
    throw DomainError("enumerate_periodic: n must be >= 1");
  require_nonnegative_square(a, "enumerate_periodic");
  const Integer tr = trace(power(a, n));
  if (tr > Integer(static_cast<unsigned long>(budget)))
    throw BudgetExceededError("enumerate_periodic: trace(A^" +
                              std::to_string(n) + ") = " + tr.get_str() +
                              " exceeds budget");
  EdgeSet es(a);
  PeriodicOrbitTable t;
  t.n = n;
  std::vector<std::size_t> lo(es.n), hi(es.n);
  for (std::size_t v = 0; v < es.n; ++v) {
    lo[v] = es.first[v * es.n];
    hi[v] = v + 1 < es.n ? es.first[(v + 1) * es.n] : es.size();
  }
  Word w;
  std::size_t start = 0;
  auto rec = [&](auto &&self) -> void {
    const std::size_t v = es.edges[w.back()].to;
    if (w.size() == n) {
      if (v == start)
        t.points.push_back(w);
      return;
    }
    for (std::size_t e = lo[v]; e < hi[v]; ++e) {
      w.push_back(static_cast<std::uint32_t>(e));
      self(self);
      w.pop_back();
    }
  };
  for (std::size_t e = 0; e < es.size(); ++e) {
    start = es.edges[e].from;
    w.assign(1, static_cast<std::uint32_t>(e));
    rec(rec);
  }
  if (Integer(static_cast<unsigned long>(t.points.size())) != tr)
    throw InternalError("enumerate_periodic: point count differs from trace");
  for (std::size_t i = 0; i < t.points.size(); ++i)
    t.index.emplace(t.points[i], i);
  t.orbit_of.assign(t.points.size(), SIZE_MAX);
  // Points are lexicographic, so the first unassigned one is the least
  // rotation of its orbit.
  for (std::size_t i = 0; i < t.points.size(); ++i) {
    if (t.orbit_of[i] != SIZE_MAX)
      continue;
    const std::size_t o = t.orbits.size();
    t.orbits.emplace_back();
    t.representative.push_back(i);
    for (std::size_t r = 0; r < n; ++r) {
      const std::size_t p = t.index.at(rotate(t.points[i], r));
      if (t.orbit_of[p] == SIZE_MAX) {
        t.orbit_of[p] = o;
        t.orbits[o].push_back(p);
      }
    }
    t.least_period.push_back(t.orbits[o].size());
  }
  return t;
}

Verdict verify_block_code(const BlockCode &code) {
  if (code.j > code.k)
    return Verdict::fail(Failure::Dimension, "window must satisfy j <= k");
  EdgeSet dom(code.domain), ran(code.range);
  const std::size_t w = code.window();
  for (const auto &word : legal_words(code.domain, w)) {
    auto it = code.table.find(word);
    if (it == code.table.end())
      return Verdict::fail(Failure::Equation,
                           "no image for word " + word_key(word));
    if (it->second >= ran.size())
      return Verdict::fail(Failure::Equation,
                           "image of " + word_key(word) + " is not a symbol");
  }
  for (const auto &kv : code.table)
    if (kv.first.size() != w)
      return Verdict::fail(Failure::Dimension,
                           "table word " + word_key(kv.first) +
                               " has the wrong length");
  for (const auto &word : legal_words(code.domain, w + 1)) {
    Word a(word.begin(), word.end() - 1), b(word.begin() + 1, word.end());
    const auto y0 = code.table.at(a), y1 = code.table.at(b);
    if (ran.edges[y0].to != ran.edges[y1].from)
      return Verdict::fail(Failure::Equation,
                           "image of " + word_key(word) + " is not legal");
  }
  return Verdict::pass();
}

BlockCode identity_code(const IntMatrix &a) {
  BlockCode c{a, a, 0, 0, {}};
  EdgeSet es(a);
  for (std::size_t e = 0; e < es.size(); ++e)
    c.table.emplace(Word{static_cast<std::uint32_t>(e)},
                    static_cast<std::uint32_t>(e));
  return c;
}

BlockCode shift_code(const IntMatrix &a) {
  BlockCode c = identity_code(a);
  c.j = c.k = 1;
  return c;
}

BlockCode compose_codes(const BlockCode &outer, const BlockCode &inner) {
  if (inner.range != outer.domain)
    throw DimensionError("compose_codes: inner range differs from outer domain");
  BlockCode c{inner.domain, outer.range, inner.j + outer.j, inner.k + outer.k,
              {}};
  const std::size_t w1 = inner.window(), w2 = outer.window();
  for (const auto &word : legal_words(inner.domain, w1 + w2 - 1)) {
    Word y(w2);
    for (std::size_t t = 0; t < w2; ++t) {
      Word piece(word.begin() + t, word.begin() + t + w1);
      auto it = inner.table.find(piece);
      if (it == inner.table.end())
        throw DomainError("compose_codes: inner code has no image for " +
                          word_key(piece));
      y[t] = it->second;
    }
    auto it = outer.table.find(y);
    if (it == outer.table.end())
      throw DomainError("compose_codes: outer code has no image for " +
                        word_key(y));
    c.table.emplace(word, it->second);
  }
  return c;
}

bool is_identity_code(const BlockCode &code) {
  if (code.domain != code.range || code.j > 0 || code.k < 0)
    return false;
  const std::size_t centre = static_cast<std::size_t>(-code.j);
  for (const auto &word : legal_words(code.domain, code.window())) {
    auto it = code.table.find(word);
    if (it == code.table.end() || it->second != word[centre])
      return false;
  }
  return true;
}

Verdict verify_automorphism(const Automorphism &alpha) {
  const auto &f = alpha.forward, &g = alpha.inverse;
  if (f.domain != f.range || g.domain != g.range || f.domain != g.domain)
    return Verdict::fail(Failure::Dimension,
                         "automorphism codes must act on one matrix");
  if (auto v = verify_block_code(f); !v)
    return Verdict::fail(v.failure, "forward: " + v.detail);
  if (auto v = verify_block_code(g); !v)
    return Verdict::fail(v.failure, "inverse: " + v.detail);
  if (!is_identity_code(compose_codes(g, f)))
    return Verdict::fail(Failure::Equation, "inverse after forward is not Id");
  if (!is_identity_code(compose_codes(f, g)))
    return Verdict::fail(Failure::Equation, "forward after inverse is not Id");
  return Verdict::pass();
}

nlohmann::json to_json(const BlockCode &code) {
  nlohmann::json table = nlohmann::json::object();
  for (const auto &kv : code.table)
    table[word_key(kv.first)] = kv.second;
  return {{"domain", to_json(code.domain)},
          {"range", to_json(code.range)},
          {"window", {code.j, code.k}},
          {"table", table}};
}

BlockCode block_code_from_json(const nlohmann::json &j) {
  if (!j.is_object() || !j.contains("domain") || !j.contains("table"))
    throw ParseError("block code needs \"domain\" and \"table\"");
  BlockCode c;
  c.domain = int_matrix_from_json_any(j.at("domain"));
  c.range = j.contains("range") ? int_matrix_from_json_any(j.at("range"))
                                : c.domain;
  if (j.contains("window")) {
    const auto &w = j.at("window");
    if (!w.is_array() || w.size() != 2 || !w[0].is_number_integer() ||
        !w[1].is_number_integer())
      throw ParseError("\"window\" must be [j, k]");
    c.j = w[0].get<long>();
    c.k = w[1].get<long>();
  }
  if (!j.at("table").is_object())
    throw ParseError("\"table\" must map word keys to symbols");
  for (const auto &[key, val] : j.at("table").items()) {
    if (!val.is_number_unsigned())
      throw ParseError("table value for '" + key + "' must be a symbol");
    c.table.emplace(parse_word_key(key), val.get<std::uint32_t>());
  }
  return c;
}

PeriodicAction code_action(const BlockCode &code) {
  return [code](const Word &x) {
    const std::size_t n = x.size(), w = code.window();
    const long ln = static_cast<long>(n);
    Word y(n), piece(w);
    for (std::size_t m = 0; m < n; ++m) {
      for (std::size_t t = 0; t < w; ++t) {
        long pos = static_cast<long>(m) + code.j + static_cast<long>(t);
        piece[t] = x[static_cast<std::size_t>(((pos % ln) + ln) % ln)];
      }
      auto it = code.table.find(piece);
      if (it == code.table.end())
        throw DomainError("block code has no image for " + word_key(piece));
      y[m] = it->second;
    }
    return y;
  };
}

PeriodicAction automorphism_action(const Automorphism &alpha) {
  return code_action(alpha.forward);
}

PeriodicAction shift_action() {
  return [](const Word &x) { return rotate(x, 1); };
}

PeriodicAction identity_action() {
  return [](const Word &x) { return x; };
}

PeriodicAction one_orbit_shift(const Word &word) {
  return [word](const Word &x) {
    if (x.size() != word.size())
      return x;
    for (std::size_t r = 0; r < x.size(); ++r)
      if (rotate(word, r) == x)
        return rotate(x, 1);
    return x;
  };
}

PeriodicAction compose(PeriodicAction outer, PeriodicAction inner) {
  return [outer = std::move(outer), inner = std::move(inner)](const Word &x) {
    return outer(inner(x));
  };
}

PeriodicMap apply_periodic(const PeriodicAction &act,
                           const PeriodicOrbitTable &from,
                           const PeriodicOrbitTable &to) {
  if (from.n != to.n)
    throw DimensionError("apply_periodic: period levels differ");
  PeriodicMap pm;
  pm.point_map.resize(from.points.size());
  std::vector<char> hit(to.points.size(), 0);
  pm.bijective = from.points.size() == to.points.size();
  for (std::size_t i = 0; i < from.points.size(); ++i) {
    const Word y = act(from.points[i]);
    auto it = to.index.find(y);
    if (it == to.index.end())
      throw DomainError("image " + word_key(y) + " is not a periodic point");
    pm.point_map[i] = it->second;
    if (hit[it->second]++)
      pm.bijective = false;
  }
  for (std::size_t o = 0; o < from.orbits.size(); ++o)
    pm.orbit_map.push_back(
        to.orbit_of[pm.point_map[from.representative[o]]]);
  return pm;
}

PeriodicMap apply_code_periodic(const BlockCode &code,
                                const PeriodicOrbitTable &from,
                                const PeriodicOrbitTable &to) {
  return apply_periodic(code_action(code), from, to);
}

GyrationData gyration(const IntMatrix &a, const PeriodicAction &alpha,
                      std::size_t k, const std::vector<std::size_t> *offsets) {
  const PeriodicOrbitTable t = enumerate_periodic(a, k);
  GyrationData g;
  g.k = k;
  std::vector<std::size_t> q, pos(t.orbits.size(), SIZE_MAX);
  for (std::size_t o = 0; o < t.orbits.size(); ++o)
    if (t.least_period[o] == k) {
      pos[o] = q.size();
      q.push_back(o);
    }
  g.orbit_count = q.size();
  if (offsets && offsets->size() != q.size())
    throw DimensionError("gyration: one offset per orbit of least period k");
  std::vector<Word> rep(q.size());
  for (std::size_t i = 0; i < q.size(); ++i)
    rep[i] = rotate(t.points[t.representative[q[i]]],
                    offsets ? (*offsets)[i] % k : 0);
  g.xi.resize(q.size());
  g.r.resize(q.size());
  std::vector<char> hit(q.size(), 0);
  std::size_t sum = 0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const Word y = alpha(rep[i]);
    auto it = t.index.find(y);
    if (it == t.index.end() || pos[t.orbit_of[it->second]] == SIZE_MAX)
      throw PreconditionError("gyration: action does not preserve P_" +
                              std::to_string(k));
    const std::size_t target = pos[t.orbit_of[it->second]];
    if (hit[target]++)
      throw PreconditionError("gyration: action is not a bijection of P_" +
                              std::to_string(k));
    g.xi[i] = target;
    std::size_t r = 0;
    while (r < k && rotate(rep[target], r) != y)
      ++r;
    if (r == k)
      throw InternalError("gyration: no rotation matches");
    g.r[i] = r;
    sum += r;
  }
  g.g = k ? sum % k : 0;
  std::vector<char> seen(q.size(), 0);
  std::size_t cycles = 0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (seen[i])
      continue;
    ++cycles;
    for (std::size_t c = i; !seen[c]; c = g.xi[c])
      seen[c] = 1;
  }
  g.sign = static_cast<int>((q.size() - cycles) % 2);
  return g;
}

std::size_t sgcc(const IntMatrix &a, const PeriodicAction &alpha,
                 std::size_t m) {
  if (m == 0)
    throw DomainError("sgcc: m must be >= 1");
  std::size_t total = gyration(a, alpha, m).g;
  std::size_t signs = 0;
  for (std::size_t d = m; d % 2 == 0;) {
    d /= 2;
    signs += static_cast<std::size_t>(gyration(a, alpha, d).sign);
  }
  total += (m / 2) * signs;
  return total % m;
}

int sgc2(const IntMatrix &R, const IntMatrix &S) {
  if (R.rows() != S.cols() || R.cols() != S.rows())
    throw DimensionError("sgc2: R is " + R.shape_string() + ", S is " +
                         S.shape_string());
  const std::size_t m = R.rows(), n = R.cols();
  Integer sum = 0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          if (k > l)
            sum += R(i, k) * S(k, i) * R(j, l) * S(l, j);
          if (k >= l)
            sum += R(i, k) * S(k, j) * R(j, l) * S(l, i);
        }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Integer half = R(i, j) * (R(i, j) - 1) / 2;
      sum += half * S(j, i) * S(j, i);
    }
  return static_cast<int>(mod_floor(sum, Integer(2)).get_si());
}

int path_sgc2(const SsePath &path) {
  SseChain chain{path.edges, Ring::Z};
  for (auto &e : chain.edges)
    e.w.ring = Ring::Z;
  if (!chain.edges.empty()) {
    auto v = verify_sse_chain(chain);
    if (!v.verdict)
      throw PreconditionError(
          "path edge " + std::to_string(v.failing_edge.value_or(0) + 1) +
          " does not verify: " + v.verdict.detail);
  }
  long sum = 0;
  for (const auto &e : chain.edges)
    sum += e.orientation * sgc2(e.w.R, e.w.S);
  return static_cast<int>(((sum % 2) + 2) % 2);
}

Verdict verify_triangle(const Triangle &t) {
  const auto &R1 = t.e1.R, &S1 = t.e1.S, &R2 = t.e2.R, &S2 = t.e2.S,
             &R3 = t.e3.R, &S3 = t.e3.S;
  const std::size_t m = R1.rows(), n = R1.cols(), p = R2.cols();
  auto shape = [](const IntMatrix &x, std::size_t r, std::size_t c) {
    return x.rows() == r && x.cols() == c;
  };
  if (!shape(S1, n, m) || !shape(R2, n, p) || !shape(S2, p, n) ||
      !shape(R3, m, p) || !shape(S3, p, m))
    return Verdict::fail(Failure::Dimension, "triangle shapes incompatible");
  if (R1 * R2 != R3)
    return Verdict::fail(Failure::Equation, "R1 R2 != R3");
  if (R2 * S3 != S1)
    return Verdict::fail(Failure::Equation, "R2 S3 != S1");
  if (S3 * R1 != S2)
    return Verdict::fail(Failure::Equation, "S3 R1 != S2");
  if (R1 * S1 != R3 * S3)
    return Verdict::fail(Failure::Equation, "R1 S1 != R3 S3");
  if (S1 * R1 != R2 * S2)
    return Verdict::fail(Failure::Equation, "S1 R1 != R2 S2");
  if (S2 * R2 != S3 * R3)
    return Verdict::fail(Failure::Equation, "S2 R2 != S3 R3");
  return Verdict::pass();
}

Triangle random_triangle(std::mt19937_64 &rng, std::size_t max_size, long lo,
                         long hi) {
  if (max_size == 0 || lo > hi)
    throw DomainError("random_triangle: empty size or entry range");
  std::uniform_int_distribution<std::size_t> size(1, max_size);
  std::uniform_int_distribution<long> entry(lo, hi);
  const std::size_t m = size(rng), n = size(rng), p = size(rng);
  auto draw = [&](std::size_t r, std::size_t c) {
    IntMatrix x(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        x(i, j) = entry(rng);
    return x;
  };
  IntMatrix R1 = draw(m, n), R2 = draw(n, p), S3 = draw(p, m);
  Triangle t;
  t.e1 = {R1, R2 * S3, Ring::Z};
  t.e2 = {R2, S3 * R1, Ring::Z};
  t.e3 = {R1 * R2, S3, Ring::Z};
  return t;
}

BlockCode conjugacy_from_esse(const IntMatrix &R, const IntMatrix &S) {
  if (!is_nonnegative(R) || !is_nonnegative(S))
    throw PreconditionError("conjugacy_from_esse needs R, S over Z+");
  const IntMatrix A = R * S, B = S * R;
  if (nondegenerate_core(A).kept.size() != A.rows())
    throw PreconditionError(
        "conjugacy_from_esse: A = RS is degenerate; apply nondegenerate_core "
        "first");
  EdgeSet ea(A), eb(B);
  const std::size_t n = A.rows(), k = B.rows();
  auto at = [](const IntMatrix &x, std::size_t i, std::size_t j) {
    return small(x(i, j), "conjugacy_from_esse");
  };
  // A-edge -> (u, R-copy, S-copy), ordered by (u, R-copy, S-copy).
  struct Split {
    std::size_t u, rc, sc;
  };
  std::vector<Split> split(ea.size());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t c = 0;
      for (std::size_t u = 0; u < k; ++u) {
        const std::size_t r = at(R, i, u), s = at(S, u, j);
        for (std::size_t rc = 0; rc < r; ++rc)
          for (std::size_t sc = 0; sc < s; ++sc)
            split[ea.id(i, j, c++)] = {u, rc, sc};
      }
    }
  // B-edge (u, v) from S-edge (u, j, sc) and R-edge (j, v, rc), ordered by
  // (j, S-copy, R-copy).
  auto beta_inv = [&](std::size_t u, std::size_t j, std::size_t sc,
                      std::size_t v, std::size_t rc) {
    std::size_t c = 0;
    for (std::size_t j2 = 0; j2 < j; ++j2)
      c += at(S, u, j2) * at(R, j2, v);
    c += sc * at(R, j, v) + rc;
    return eb.id(u, v, c);
  };
  BlockCode code{A, B, 0, 1, {}};
  for (const auto &w : legal_words(A, 2)) {
    const auto &x0 = ea.edges[w[0]];
    const Split &a0 = split[w[0]], &a1 = split[w[1]];
    code.table.emplace(w, static_cast<std::uint32_t>(
                              beta_inv(a0.u, x0.to, a0.sc, a1.u, a1.rc)));
  }
  return code;
}

BlockCode simple_graph_symmetry(const IntMatrix &a,
                                const std::vector<std::size_t> &perm) {
  EdgeSet es(a);
  if (perm.size() != es.size())
    throw PreconditionError("simple_graph_symmetry: permutation has " +
                            std::to_string(perm.size()) + " entries, graph has " +
                            std::to_string(es.size()) + " edges");
  std::vector<char> hit(es.size(), 0);
  BlockCode c{a, a, 0, 0, {}};
  for (std::size_t e = 0; e < es.size(); ++e) {
    const std::size_t f = perm[e];
    if (f >= es.size() || hit[f]++)
      throw PreconditionError("simple_graph_symmetry: not a permutation");
    if (es.edges[f].from != es.edges[e].from || es.edges[f].to != es.edges[e].to)
      throw PreconditionError("simple_graph_symmetry: edge " +
                              std::to_string(e) + " is not parallel to edge " +
                              std::to_string(f));
    c.table.emplace(Word{static_cast<std::uint32_t>(e)},
                    static_cast<std::uint32_t>(f));
  }
  return c;
}

} // namespace sft

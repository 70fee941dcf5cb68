#include "sft/equivalence.hpp"

#include "sft/matrix_io.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace sft {

const char *ring_name(Ring r) { return r == Ring::Zplus ? "Z+" : "Z"; }

namespace {

std::string shapes(const IntMatrix &x, const IntMatrix &y) {
  return x.shape_string() + " and " + y.shape_string();
}

} // namespace

Verdict verify_esse(const IntMatrix &a, const IntMatrix &b,
                    const EsseWitness &w) {
  const auto &R = w.R, &S = w.S;
  if (!a.square() || !b.square())
    return Verdict::fail(Failure::Dimension, "A and B must be square");
  if (R.cols() != S.rows() || R.rows() != S.cols())
    return Verdict::fail(Failure::Dimension,
                         "R and S are not transposed shapes: " + shapes(R, S));
  if (R.rows() != a.rows() || S.rows() != b.rows())
    return Verdict::fail(Failure::Dimension,
                         "R is " + R.shape_string() + " but A, B are " +
                             shapes(a, b));
  if (w.ring == Ring::Zplus && (!is_nonnegative(R) || !is_nonnegative(S)))
    return Verdict::fail(Failure::Positivity, "R or S has a negative entry");
  if (R * S != a)
    return Verdict::fail(Failure::Equation, "A != RS");
  if (S * R != b)
    return Verdict::fail(Failure::Equation, "B != SR");
  return Verdict::pass();
}

namespace {

// (R, S) read forwards: A_{i-1} = R'S', A_i = S'R'.
std::pair<const IntMatrix &, const IntMatrix &> oriented(const ChainEdge &e) {
  if (e.orientation == 1)
    return {e.w.R, e.w.S};
  return {e.w.S, e.w.R};
}

} // namespace

ChainVerification verify_sse_chain(const SseChain &chain) {
  ChainVerification v;
  if (chain.edges.empty()) {
    v.verdict = Verdict::fail(Failure::Dimension, "chain has no edges");
    return v;
  }
  for (std::size_t i = 0; i < chain.edges.size(); ++i) {
    const auto &e = chain.edges[i];
    auto fail = [&](Verdict d) {
      v.verdict = std::move(d);
      v.failing_edge = i;
      return v;
    };
    if (e.orientation != 1 && e.orientation != -1)
      return fail(Verdict::fail(Failure::Equation, "orientation must be +1 or -1"));
    auto [R, S] = oriented(e);
    if (R.cols() != S.rows() || R.rows() != S.cols())
      return fail(Verdict::fail(Failure::Dimension,
                                "R and S are not transposed shapes: " + shapes(R, S)));
    if (chain.ring == Ring::Zplus && (!is_nonnegative(R) || !is_nonnegative(S)))
      return fail(Verdict::fail(Failure::Positivity, "negative entry over Z+"));
    IntMatrix src = R * S, dst = S * R;
    if (i == 0)
      v.source = src;
    else if (src != v.target)
      return fail(Verdict::fail(Failure::Equation,
                                "edge source does not match previous target"));
    v.target = std::move(dst);
  }
  v.lag = chain.edges.size();
  return v;
}

Verdict verify_se(const IntMatrix &a, const IntMatrix &b, const SeWitness &w) {
  const auto &R = w.R, &S = w.S;
  if (!a.square() || !b.square())
    return Verdict::fail(Failure::Dimension, "A and B must be square");
  if (R.rows() != a.rows() || R.cols() != b.rows() || S.rows() != b.rows() ||
      S.cols() != a.rows())
    return Verdict::fail(Failure::Dimension,
                         "R, S shapes " + shapes(R, S) + " do not fit A, B " +
                             shapes(a, b));
  if (w.lag == 0)
    return Verdict::fail(Failure::Equation, "lag must be positive");
  if (w.ring == Ring::Zplus && (!is_nonnegative(R) || !is_nonnegative(S)))
    return Verdict::fail(Failure::Positivity, "R or S has a negative entry");
  if (power(a, w.lag) != R * S)
    return Verdict::fail(Failure::Equation, "A^lag != RS");
  if (power(b, w.lag) != S * R)
    return Verdict::fail(Failure::Equation, "B^lag != SR");
  if (a * R != R * b)
    return Verdict::fail(Failure::Equation, "AR != RB");
  if (S * a != b * S)
    return Verdict::fail(Failure::Equation, "SA != BS");
  return Verdict::pass();
}

Verdict verify_se_rational(const RatMatrix &a, const RatMatrix &b,
                           const RatMatrix &R, const RatMatrix &S,
                           std::size_t lag) {
  if (!a.square() || !b.square() || R.rows() != a.rows() ||
      R.cols() != b.rows() || S.rows() != b.rows() || S.cols() != a.rows())
    return Verdict::fail(Failure::Dimension, "shapes do not fit");
  if (lag == 0)
    return Verdict::fail(Failure::Equation, "lag must be positive");
  if (power(a, lag) != R * S)
    return Verdict::fail(Failure::Equation, "A^lag != RS");
  if (power(b, lag) != S * R)
    return Verdict::fail(Failure::Equation, "B^lag != SR");
  if (a * R != R * b)
    return Verdict::fail(Failure::Equation, "AR != RB");
  if (S * a != b * S)
    return Verdict::fail(Failure::Equation, "SA != BS");
  return Verdict::pass();
}

SeWitness compress_sse_to_se(const SseChain &chain) {
  auto v = verify_sse_chain(chain);
  if (!v.verdict)
    throw PreconditionError("chain does not verify at edge " +
                            std::to_string(v.failing_edge.value_or(0)) + ": " +
                            v.verdict.detail);
  SeWitness se;
  se.ring = chain.ring;
  se.lag = chain.edges.size();
  auto [R0, S0] = oriented(chain.edges[0]);
  se.R = R0;
  se.S = S0;
  for (std::size_t i = 1; i < chain.edges.size(); ++i) {
    auto [R, S] = oriented(chain.edges[i]);
    se.R = se.R * R;
    se.S = S * se.S;
  }
  auto check = verify_se(v.source, v.target, se);
  if (!check)
    throw InternalError("compressed witness fails: " + check.detail);
  return se;
}

MallerShub maller_shub_witness(const EsseWitness &w) {
  const IntMatrix &R = w.R, &S = w.S;
  if (R.cols() != S.rows() || R.rows() != S.cols())
    throw DimensionError("R and S are not transposed shapes");
  const std::size_t n = R.rows(), m = R.cols();
  IntMatrix A = R * S, B = S * R;
  MallerShub ms;
  ms.U = IntMatrix::identity(n + m);
  ms.U.set_block(n, 0, S);
  ms.M1 = IntMatrix(n + m, n + m);
  ms.M1.set_block(0, 0, A);
  ms.M1.set_block(0, n, R);
  ms.M2 = IntMatrix(n + m, n + m);
  ms.M2.set_block(0, n, R);
  ms.M2.set_block(n, n, B);
  if (ms.U * ms.M1 != ms.M2 * ms.U)
    throw InternalError("Maller-Shub similarity failed");
  return ms;
}

Extension zero_extension(const IntMatrix &a, const IntMatrix &x, Side side) {
  if (!a.square())
    throw DimensionError("zero_extension: A must be square");
  const std::size_t n = a.rows();
  Extension e;
  e.witness.ring = (is_nonnegative(a) && is_nonnegative(x)) ? Ring::Zplus : Ring::Z;
  if (side == Side::Right) {
    if (x.rows() != n)
      throw DimensionError("zero_extension: X must have n rows");
    const std::size_t k = x.cols();
    e.matrix = IntMatrix(n + k, n + k);
    e.matrix.set_block(0, 0, a);
    e.matrix.set_block(0, n, x);
    // R = [A X], S = [I; 0]
    e.witness.R = IntMatrix(n, n + k);
    e.witness.R.set_block(0, 0, a);
    e.witness.R.set_block(0, n, x);
    e.witness.S = IntMatrix(n + k, n);
    e.witness.S.set_block(0, 0, IntMatrix::identity(n));
  } else {
    if (x.cols() != n)
      throw DimensionError("zero_extension: X must have n columns");
    const std::size_t k = x.rows();
    e.matrix = IntMatrix(n + k, n + k);
    e.matrix.set_block(0, 0, a);
    e.matrix.set_block(n, 0, x);
    // R = [I 0], S = [A; X]
    e.witness.R = IntMatrix(n, n + k);
    e.witness.R.set_block(0, 0, IntMatrix::identity(n));
    e.witness.S = IntMatrix(n + k, n);
    e.witness.S.set_block(0, 0, a);
    e.witness.S.set_block(n, 0, x);
  }
  return e;
}

std::optional<std::size_t> nilpotency_index(const IntMatrix &n) {
  if (!n.square())
    throw DimensionError("nilpotency_index: matrix must be square");
  if (n.rows() == 0)
    return 0;
  IntMatrix p = n;
  for (std::size_t m = 1; m <= n.rows(); ++m) {
    if (is_zero(p))
      return m;
    p = p * n;
  }
  return std::nullopt;
}

std::size_t sse_zero_lag_lower_bound(const IntMatrix &n) {
  auto m = nilpotency_index(n);
  if (!m)
    throw PreconditionError("matrix is not nilpotent");
  return *m >= 2 ? *m - 1 : 0;
}

IntMatrix nilpotent_extension(const IntMatrix &a, const IntMatrix &x,
                              const IntMatrix &nm, Side side) {
  if (!a.square() || !nm.square())
    throw DimensionError("nilpotent_extension: A and N must be square");
  if (!nilpotency_index(nm))
    throw PreconditionError("nilpotent_extension: N is not nilpotent");
  const std::size_t n = a.rows(), k = nm.rows();
  IntMatrix e(n + k, n + k);
  e.set_block(0, 0, a);
  e.set_block(n, n, nm);
  if (side == Side::Right) {
    if (x.rows() != n || x.cols() != k)
      throw DimensionError("nilpotent_extension: X must be n x k");
    e.set_block(0, n, x);
  } else {
    if (x.rows() != k || x.cols() != n)
      throw DimensionError("nilpotent_extension: X must be k x n");
    e.set_block(n, 0, x);
  }
  return e;
}

std::vector<Amalgamation> column_amalgamation_moves(const IntMatrix &c) {
  if (!c.square())
    throw DimensionError("amalgamation: matrix must be square");
  const std::size_t n = c.rows();
  auto column = [&](std::size_t j) {
    std::vector<Integer> v(n);
    for (std::size_t i = 0; i < n; ++i)
      v[i] = c(i, j);
    return v;
  };
  // Classes of identical columns, in order of first member.
  std::vector<std::vector<std::size_t>> classes;
  std::vector<bool> used(n, false);
  for (std::size_t j = 0; j < n; ++j) {
    if (used[j])
      continue;
    std::vector<std::size_t> cls{j};
    for (std::size_t l = j + 1; l < n; ++l)
      if (!used[l] && column(l) == column(j)) {
        cls.push_back(l);
        used[l] = true;
      }
    if (cls.size() > 1)
      classes.push_back(std::move(cls));
  }
  std::vector<Amalgamation> moves;
  for (const auto &cls : classes) {
    const std::size_t r = cls.size();
    // Every subset of size >= 2; classes wider than 10 use the full class.
    const std::size_t lo = r > 10 ? (std::size_t{1} << r) - 1 : 1;
    for (std::size_t mask = lo; mask < (std::size_t{1} << r); ++mask) {
      if (__builtin_popcountll(mask) < 2)
        continue;
      std::vector<std::size_t> merged;
      for (std::size_t b = 0; b < r; ++b)
        if (mask >> b & 1)
          merged.push_back(cls[b]);
      // New index of each old column; merged ones share the first's slot.
      std::vector<std::size_t> image(n);
      std::vector<std::size_t> kept;
      for (std::size_t j = 0; j < n; ++j) {
        bool is_merged = std::find(merged.begin(), merged.end(), j) != merged.end();
        if (is_merged && j != merged[0]) {
          image[j] = image[merged[0]];
          continue;
        }
        image[j] = kept.size();
        kept.push_back(j);
      }
      std::vector<std::size_t> all(n);
      std::iota(all.begin(), all.end(), 0);
      Amalgamation am;
      am.merged = merged;
      am.witness.R = c.select(all, kept);
      am.witness.S = IntMatrix(kept.size(), n);
      for (std::size_t j = 0; j < n; ++j)
        am.witness.S(image[j], j) = 1;
      am.witness.ring = is_nonnegative(c) ? Ring::Zplus : Ring::Z;
      am.D = am.witness.S * am.witness.R;
      moves.push_back(std::move(am));
    }
  }
  return moves;
}

std::vector<Amalgamation> row_amalgamation_moves(const IntMatrix &c) {
  auto moves = column_amalgamation_moves(c.transpose());
  for (auto &m : moves) {
    IntMatrix R = m.witness.S.transpose(), S = m.witness.R.transpose();
    m.witness.R = std::move(R);
    m.witness.S = std::move(S);
    m.D = m.D.transpose();
  }
  return moves;
}

IntMatrix permutation_canonical_form(const IntMatrix &b) {
  if (!b.square() || b.rows() > 5)
    return b;
  const std::size_t m = b.rows();
  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  IntMatrix best = b;
  do {
    IntMatrix p = b.select(perm, perm);
    if (std::lexicographical_compare(p.entries().begin(), p.entries().end(),
                                     best.entries().begin(), best.entries().end()))
      best = std::move(p);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

namespace {

// All factorisations A = RS for a fixed R, S in column-major lexicographic
// order.
std::vector<Neighbor> factor_with(const IntMatrix &a, const IntMatrix &R,
                                  long max_entry) {
  const std::size_t n = a.rows(), k = R.cols();
  // Per column j: all s in [0, e]^k with R·s = A[:, j].
  std::vector<std::vector<std::vector<long>>> sols(n);
  std::vector<long> s(k, 0);
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(s.begin(), s.end(), 0);
    while (true) {
      bool ok = true;
      for (std::size_t i = 0; i < n && ok; ++i) {
        Integer acc = 0;
        for (std::size_t l = 0; l < k; ++l)
          acc += R(i, l) * s[l];
        ok = acc == a(i, j);
      }
      if (ok)
        sols[j].push_back(s);
      std::size_t pos = k;
      while (pos > 0 && s[pos - 1] == max_entry)
        s[--pos] = 0;
      if (pos == 0)
        break;
      ++s[pos - 1];
    }
    if (sols[j].empty())
      return {};
  }
  std::vector<Neighbor> out;
  std::vector<std::size_t> pick(n, 0);
  while (true) {
    IntMatrix S(k, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < k; ++l)
        S(l, j) = sols[j][pick[j]][l];
    IntMatrix B = S * R;
    out.push_back({EsseWitness{R, std::move(S), Ring::Zplus}, std::move(B)});
    std::size_t pos = n;
    while (pos > 0 && pick[pos - 1] + 1 == sols[pos - 1].size())
      pick[--pos] = 0;
    if (pos == 0)
      break;
    ++pick[pos - 1];
  }
  return out;
}

IntMatrix decode_r(std::size_t idx, std::size_t n, std::size_t k, long base) {
  IntMatrix R(n, k);
  for (std::size_t p = n * k; p-- > 0;) {
    R(p / k, p % k) = static_cast<long>(idx % base);
    idx /= base;
  }
  return R;
}

template <bool Parallel>
NeighborResult enumerate_neighbors(const IntMatrix &a,
                                   const NeighborOptions &opt) {
  if (!a.square() || !is_nonnegative(a))
    throw DomainError("esse_neighbors: matrix must be square and nonnegative");
  if (opt.max_entry < 0)
    throw DomainError("esse_neighbors: max_entry must be nonnegative");
  NeighborResult res;
  const std::size_t n = a.rows();
  if (n == 0)
    return res;
  const long base = opt.max_entry + 1;
  std::vector<Neighbor> raw;
  std::size_t examined = 0;
  constexpr std::size_t kChunk = 4096;
  for (std::size_t k = 1; k <= opt.max_inner && !res.budget_exceeded; ++k) {
    // base^(n·k) candidate R matrices
    Integer total_z;
    mpz_ui_pow_ui(total_z.get_mpz_t(), static_cast<unsigned long>(base), n * k);
    const std::size_t total = total_z.fits_ulong_p() ? total_z.get_ui() : ~std::size_t{0};
    for (std::size_t lo = 0; lo < total; lo += kChunk) {
      if (examined >= opt.max_candidates) {
        res.budget_exceeded = true;
        break;
      }
      const std::size_t hi = std::min(total, lo + kChunk);
      std::vector<std::vector<Neighbor>> slots(hi - lo);
      const long count = static_cast<long>(hi - lo);
#pragma omp parallel for schedule(dynamic, 64) if (Parallel)
      for (long t = 0; t < count; ++t) {
        IntMatrix R = decode_r(lo + static_cast<std::size_t>(t), n, k, base);
        slots[static_cast<std::size_t>(t)] = factor_with(a, R, opt.max_entry);
      }
      examined += hi - lo;
      for (auto &sl : slots)
        for (auto &nb : sl) {
          if (raw.size() >= opt.max_results) {
            res.budget_exceeded = true;
            break;
          }
          raw.push_back(std::move(nb));
        }
      if (res.budget_exceeded)
        break;
    }
  }
  if (!opt.dedup) {
    res.neighbors = std::move(raw);
    return res;
  }
  std::set<std::pair<std::size_t, std::vector<Integer>>> seen;
  for (auto &nb : raw) {
    IntMatrix key = permutation_canonical_form(nb.B);
    std::vector<Integer> ent(key.entries().begin(), key.entries().end());
    if (seen.emplace(key.rows(), std::move(ent)).second)
      res.neighbors.push_back(std::move(nb));
  }
  return res;
}

} // namespace

NeighborResult esse_neighbors(const IntMatrix &a, const NeighborOptions &opt) {
  return enumerate_neighbors<true>(a, opt);
}

NeighborResult esse_neighbors_serial(const IntMatrix &a,
                                     const NeighborOptions &opt) {
  return enumerate_neighbors<false>(a, opt);
}

SseChain chain_from_json(const nlohmann::json &j, Ring ring) {
  const nlohmann::json &edges = j.is_object() && j.contains("edges") ? j.at("edges") : j;
  if (!edges.is_array())
    throw ParseError("certificate must be a list of edges");
  SseChain c;
  c.ring = ring;
  for (const auto &e : edges) {
    if (!e.is_object() || !e.contains("R") || !e.contains("S"))
      throw ParseError("each edge needs R and S");
    ChainEdge ce;
    ce.w.R = int_matrix_from_json_any(e.at("R"));
    ce.w.S = int_matrix_from_json_any(e.at("S"));
    ce.w.ring = ring;
    ce.orientation = e.value("s", 1);
    if (ce.orientation != 1 && ce.orientation != -1)
      throw ParseError("edge orientation s must be 1 or -1");
    c.edges.push_back(std::move(ce));
  }
  return c;
}

nlohmann::json to_json(const SseChain &chain) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto &e : chain.edges)
    out.push_back({{"R", to_json(e.w.R)}, {"S", to_json(e.w.S)}, {"s", e.orientation}});
  return out;
}

} // namespace sft

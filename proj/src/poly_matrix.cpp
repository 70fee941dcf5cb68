#include "sft/poly_matrix.hpp"

#include "sft/matrix_io.hpp"

#include <sstream>

namespace sft {

bool over_zplus_t(const PolyMatrix &a) {
  for (const auto &p : a.entries())
    if (!p.all_nonnegative())
      return false;
  return true;
}

bool over_t_zplus_t(const PolyMatrix &a) {
  if (!over_zplus_t(a))
    return false;
  for (const auto &p : a.entries())
    if (p.constant_term() != 0)
      return false;
  return true;
}

IntMatrix constant_part(const PolyMatrix &a) {
  IntMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      c(i, j) = a(i, j).constant_term();
  return c;
}

namespace {

bool nilpotent_checked(const IntMatrix &a0) {
  const bool by_powers = nilpotency_index(a0).has_value();
  const bool by_det = det_one_minus_tA(a0) == IntPoly(1);
  if (by_powers != by_det)
    throw InternalError("nilpotency tests disagree");
  return by_powers;
}

} // namespace

bool is_nzc(const PolyMatrix &a) {
  if (!a.square())
    throw DimensionError("is_nzc: matrix must be square");
  if (!over_zplus_t(a))
    throw DomainError("is_nzc: matrix is not over Z+[t]");
  return nilpotent_checked(constant_part(a));
}

SharpExpansion sharp_expand(const PolyMatrix &a) {
  if (!a.square())
    throw DimensionError("sharp_expand: matrix must be square");
  if (!over_t_zplus_t(a))
    throw DomainError("sharp_expand: matrix must be over tZ+[t]");
  const std::size_t n = a.rows();
  SharpExpansion sx;
  for (std::size_t v = 0; v < n; ++v)
    sx.vertices.push_back({true, v});
  struct Edge {
    std::size_t from, to;
  };
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const IntPoly &p = a(i, j);
      for (std::size_t k = 1; k < p.coeffs().size(); ++k) {
        const Integer &c = p.coeffs()[k];
        if (c > 100000)
          throw BudgetExceededError("sharp_expand: coefficient too large");
        for (unsigned long copy = 0; copy < c.get_ui(); ++copy) {
          std::size_t prev = i;
          for (std::size_t pos = 1; pos < k; ++pos) {
            SharpVertex v;
            v.rome = false;
            v.index = sx.vertices.size();
            v.row = i;
            v.col = j;
            v.degree = k;
            v.copy = copy;
            v.position = pos;
            sx.vertices.push_back(v);
            edges.push_back({prev, v.index});
            prev = v.index;
          }
          edges.push_back({prev, j});
        }
      }
    }
  sx.matrix = IntMatrix(sx.vertices.size(), sx.vertices.size());
  for (const auto &e : edges)
    sx.matrix(e.from, e.to) += 1;
  return sx;
}

bool verify_sharp(const PolyMatrix &a) {
  auto sx = sharp_expand(a);
  return det(one_minus(a)) == det_one_minus_tA(sx.matrix);
}

const char *class_name(MatrixClass c) {
  return c == MatrixClass::NZC ? "NZC" : "tZ+[t]";
}

bool in_class(const PolyMatrix &m, MatrixClass cls) {
  if (!m.square())
    return false;
  PolyMatrix b = one_minus(m);
  if (cls == MatrixClass::TZplus)
    return over_t_zplus_t(b);
  if (!over_zplus_t(b))
    return false;
  return nilpotent_checked(constant_part(b));
}

PolyMatrix elementary(std::size_t n, std::size_t i, std::size_t j,
                      const IntPoly &p) {
  if (i == j)
    throw DomainError("elementary matrix needs distinct indices");
  if (i >= n || j >= n)
    throw DimensionError("elementary matrix index out of range");
  PolyMatrix e = PolyMatrix::identity(n);
  e(i, j) = p;
  return e;
}

namespace {

std::string offending_entry(const PolyMatrix &m, MatrixClass cls) {
  PolyMatrix b = one_minus(m);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      const IntPoly &p = b(i, j);
      if (!p.all_nonnegative() ||
          (cls == MatrixClass::TZplus && p.constant_term() != 0))
        return "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
               ") of A would be " + p.str();
    }
  return "constant-term matrix would not be nilpotent";
}

} // namespace

PolyMatrix positive_move(const PolyMatrix &m, const ElementaryMoveSpec &spec,
                         MatrixClass cls) {
  if (!in_class(m, cls))
    throw PreconditionError(std::string("matrix is not I - A with A in ") +
                            class_name(cls));
  PolyMatrix e = elementary(m.rows(), spec.i, spec.j, spec.poly);
  PolyMatrix r = spec.side == Side::Left ? e * m : m * e;
  if (!in_class(r, cls))
    throw IllegalMoveError(std::string("move leaves ") + class_name(cls) + ": " +
                           offending_entry(r, cls));
  return r;
}

PolyMatrix stabilize(const PolyMatrix &m) {
  return direct_sum(m, PolyMatrix::identity(1));
}

PolyMatrix unstabilize(const PolyMatrix &m) {
  const std::size_t n = m.rows();
  if (!m.square() || n == 0)
    throw PreconditionError("unstabilize: empty or non-square matrix");
  for (std::size_t k = 0; k < n; ++k) {
    IntPoly want = k + 1 == n ? IntPoly(1) : IntPoly();
    if (m(n - 1, k) != want || m(k, n - 1) != want)
      throw PreconditionError("unstabilize: last row/column is not that of I");
  }
  return m.block(0, 0, n - 1, n - 1);
}

PolyMatrix change_power(const PolyMatrix &m, std::size_t i, std::size_t j,
                        std::size_t k, std::size_t k2) {
  if (k == 0 || k2 == 0)
    throw IllegalMoveError("change_power only rewrites positive powers of t");
  if (!m.square() || i >= m.rows() || j >= m.cols())
    throw DimensionError("change_power: index out of range");
  PolyMatrix b = one_minus(m);
  if (b(i, j).coeff(k) < 1)
    throw PreconditionError("change_power: A(" + std::to_string(i + 1) + "," +
                            std::to_string(j + 1) + ") has no t^" +
                            std::to_string(k) + " term");
  PolyMatrix r = m;
  r(i, j) += IntPoly::monomial(1, k) - IntPoly::monomial(1, k2);
  return r;
}

PolyMatrix apply_move(const PolyMatrix &m, const Move &mv, MatrixClass cls) {
  return std::visit(
      [&](const auto &x) -> PolyMatrix {
        using T = std::decay_t<decltype(x)>;
        PolyMatrix r;
        if constexpr (std::is_same_v<T, ElementaryMoveSpec>)
          return positive_move(m, x, cls);
        else if constexpr (std::is_same_v<T, StabilizeMove>)
          r = stabilize(m);
        else if constexpr (std::is_same_v<T, UnstabilizeMove>)
          r = unstabilize(m);
        else
          r = change_power(m, x.i, x.j, x.k, x.k2);
        if (!in_class(r, cls))
          throw IllegalMoveError(std::string("move leaves ") + class_name(cls));
        return r;
      },
      mv);
}

ReplayResult replay(const MoveLog &log) {
  ReplayResult res;
  if (!in_class(log.start, log.cls)) {
    res.ok = false;
    res.detail = "start matrix is not in the class";
    return res;
  }
  PolyMatrix cur = log.start;
  for (const auto &mv : log.moves) {
    try {
      cur = apply_move(cur, mv, log.cls);
    } catch (const Error &e) {
      res.ok = false;
      res.detail = "move " + std::to_string(res.steps + 1) + ": " + e.what();
      return res;
    }
    ++res.steps;
  }
  if (cur != log.end) {
    res.ok = false;
    res.detail = "replayed end differs from recorded end";
  }
  return res;
}

MoveLog psse_chain(const IntMatrix &R, const IntMatrix &S) {
  if (R.cols() != S.rows() || R.rows() != S.cols())
    throw DimensionError("psse_chain: R and S are not transposed shapes");
  if (!is_nonnegative(R) || !is_nonnegative(S))
    throw DomainError("psse_chain: R and S must be over Z+");
  const std::size_t n = R.rows(), m = R.cols();
  MoveLog log;
  log.cls = MatrixClass::NZC;
  PolyMatrix a0(n + m, n + m);
  a0.set_block(0, 0, times_t(R * S));
  log.start = one_minus(a0);
  PolyMatrix cur = log.start;
  auto push = [&](std::size_t i, std::size_t j, IntPoly p, Side side) {
    if (p.is_zero())
      return;
    ElementaryMoveSpec spec{i, j, std::move(p), side};
    cur = positive_move(cur, spec, log.cls);
    log.moves.emplace_back(std::move(spec));
  };
  const IntPoly t = IntPoly::t();
  // Lower block entries (n+u, v), column-major.
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t u = 0; u < m; ++u)
      push(n + u, v, -(t * IntPoly(S(u, v))), Side::Right);
  // Upper block entries (i, n+u), column-major.
  for (std::size_t u = 0; u < m; ++u)
    for (std::size_t i = 0; i < n; ++i)
      push(i, n + u, IntPoly(-R(i, u)), Side::Left);
  for (std::size_t u = 0; u < m; ++u)
    for (std::size_t i = 0; i < n; ++i)
      push(i, n + u, IntPoly(R(i, u)), Side::Right);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t u = 0; u < m; ++u)
      push(n + u, v, t * IntPoly(S(u, v)), Side::Left);
  log.end = cur;
  PolyMatrix expect(n + m, n + m);
  expect.set_block(n, n, times_t(S * R));
  if (cur != one_minus(expect))
    throw InternalError("psse_chain did not reach I - [[0,0],[0,tSR]]");
  return log;
}

namespace {

PolyMatrix product(const std::vector<PolyMatrix> &fs, std::size_t n) {
  PolyMatrix p = PolyMatrix::identity(n);
  for (const auto &f : fs)
    p = p * f;
  return p;
}

PolyMatrix pad(const PolyMatrix &m, std::size_t n) {
  if (m.rows() == n)
    return m;
  return direct_sum(m, PolyMatrix::identity(n - m.rows()));
}

// Permutation matrix moving the last `m` coordinates in front of the first n.
PolyMatrix block_swap(std::size_t n, std::size_t m) {
  PolyMatrix p(n + m, n + m);
  for (std::size_t k = 0; k < m; ++k)
    p(k, n + k) = 1;
  for (std::size_t k = 0; k < n; ++k)
    p(m + k, k) = 1;
  return p;
}

bool is_unit(const IntPoly &d) { return d == IntPoly(1) || d == IntPoly(-1); }

} // namespace

ElementaryEquivalence elementary_equivalence_from_sse(const SseChain &chain) {
  auto v = verify_sse_chain(chain);
  if (!v.verdict)
    throw PreconditionError("chain does not verify: " + v.verdict.detail);
  struct Step {
    std::vector<PolyMatrix> left, right; // E = Π left, F = Π right
    std::size_t size;
  };
  std::vector<Step> steps;
  std::size_t padded = 0;
  for (const auto &e : chain.edges) {
    const IntMatrix &R = e.orientation == 1 ? e.w.R : e.w.S;
    const IntMatrix &S = e.orientation == 1 ? e.w.S : e.w.R;
    const std::size_t n = R.rows(), m = R.cols();
    const PolyMatrix tS = times_t(S);
    PolyMatrix L2 = PolyMatrix::identity(n + m), L4 = L2, R1 = L2, R3 = L2;
    L2.set_block(0, n, to_poly(-R));
    L4.set_block(n, 0, tS);
    R1.set_block(n, 0, -tS);
    R3.set_block(0, n, to_poly(R));
    // Swap to put I - tB first.
    PolyMatrix P = block_swap(n, m);
    steps.push_back({{P, L4, L2}, {R1, R3, P.transpose()}, n + m});
    padded = std::max(padded, n + m);
  }
  ElementaryEquivalence out;
  out.size = padded;
  out.source_size = v.source.rows();
  out.target_size = v.target.rows();
  out.E = PolyMatrix::identity(padded);
  out.F = PolyMatrix::identity(padded);
  for (const auto &st : steps) {
    PolyMatrix Ei = pad(product(st.left, st.size), padded);
    PolyMatrix Fi = pad(product(st.right, st.size), padded);
    out.E = Ei * out.E;
    out.F = out.F * Fi;
    for (const auto &f : st.right)
      out.right_factors.push_back(pad(f, padded));
  }
  // E = E_l···E_1, so the left factors run from the last step back.
  for (auto it = steps.rbegin(); it != steps.rend(); ++it)
    for (const auto &f : it->left)
      out.left_factors.push_back(pad(f, padded));
  const PolyMatrix lhs =
      out.E * pad(one_minus(times_t(v.source)), padded) * out.F;
  const PolyMatrix rhs = pad(one_minus(times_t(v.target)), padded);
  if (lhs != rhs)
    throw InternalError("elementary equivalence equation fails");
  if (!is_unit(det(out.E)) || !is_unit(det(out.F)))
    throw InternalError("elementary equivalence factors are not invertible");
  if (product(out.left_factors, padded) != out.E ||
      product(out.right_factors, padded) != out.F)
    throw InternalError("factor lists do not multiply to E, F");
  return out;
}

ElementaryEquivalence maller_shub_equivalence(const EsseWitness &w) {
  auto ms = maller_shub_witness(w);
  const std::size_t n = w.R.rows(), m = w.R.cols();
  PolyMatrix U = to_poly(ms.U);
  PolyMatrix Uinv = to_poly(inverse_unimodular(ms.U));
  PolyMatrix L = PolyMatrix::identity(n + m), Linv = L;
  L.set_block(0, n, -times_t(w.R));
  Linv.set_block(0, n, times_t(w.R));
  ElementaryEquivalence out;
  out.size = n + m;
  out.source_size = n;
  out.target_size = m;
  out.left_factors = {U, L};
  out.right_factors = {Uinv, Linv};
  out.E = U * L;
  out.F = Uinv * Linv;
  const PolyMatrix lhs =
      out.E * direct_sum(one_minus(times_t(w.R * w.S)), PolyMatrix::identity(m)) *
      out.F;
  const PolyMatrix rhs =
      direct_sum(PolyMatrix::identity(n), one_minus(times_t(w.S * w.R)));
  if (lhs != rhs)
    throw InternalError("Maller-Shub equivalence equation fails");
  return out;
}

FlowInvariants flow_invariants(const PolyMatrix &a) {
  if (!a.square())
    throw DimensionError("flow_invariants: matrix must be square");
  IntMatrix c = IntMatrix::identity(a.rows()) - evaluate_at_one(a);
  return {cokernel(c), det_bareiss(c)};
}

nlohmann::json to_json(const MoveLog &log) {
  nlohmann::json moves = nlohmann::json::array();
  for (const auto &mv : log.moves)
    std::visit(
        [&](const auto &x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, ElementaryMoveSpec>)
            moves.push_back({{"type", "elementary"},
                             {"i", x.i + 1},
                             {"j", x.j + 1},
                             {"poly", x.poly.str()},
                             {"side", x.side == Side::Left ? "left" : "right"}});
          else if constexpr (std::is_same_v<T, StabilizeMove>)
            moves.push_back({{"type", "stabilize"}});
          else if constexpr (std::is_same_v<T, UnstabilizeMove>)
            moves.push_back({{"type", "unstabilize"}});
          else
            moves.push_back({{"type", "change_power"},
                             {"i", x.i + 1},
                             {"j", x.j + 1},
                             {"k", x.k},
                             {"k2", x.k2}});
        },
        mv);
  return {{"class", log.cls == MatrixClass::NZC ? "nzc" : "tzplus"},
          {"start", to_json(log.start)},
          {"moves", moves},
          {"end", to_json(log.end)}};
}

MoveLog move_log_from_json(const nlohmann::json &j) {
  MoveLog log;
  try {
    std::string cls = j.value("class", "nzc");
    if (cls == "nzc")
      log.cls = MatrixClass::NZC;
    else if (cls == "tzplus")
      log.cls = MatrixClass::TZplus;
    else
      throw ParseError("unknown class '" + cls + "'");
    log.start = poly_matrix_from_json(j.at("start"));
    log.end = poly_matrix_from_json(j.at("end"));
    auto index = [](const nlohmann::json &v, const char *key) {
      long x = v.at(key).get<long>();
      if (x < 1)
        throw ParseError(std::string("move index '") + key + "' must be >= 1");
      return static_cast<std::size_t>(x - 1);
    };
    for (const auto &mv : j.at("moves")) {
      std::string type = mv.at("type").get<std::string>();
      if (type == "elementary") {
        std::string side = mv.value("side", "left");
        if (side != "left" && side != "right")
          throw ParseError("side must be left or right");
        log.moves.emplace_back(ElementaryMoveSpec{
            index(mv, "i"), index(mv, "j"),
            IntPoly::parse(mv.at("poly").get<std::string>()),
            side == "left" ? Side::Left : Side::Right});
      } else if (type == "stabilize") {
        log.moves.emplace_back(StabilizeMove{});
      } else if (type == "unstabilize") {
        log.moves.emplace_back(UnstabilizeMove{});
      } else if (type == "change_power") {
        log.moves.emplace_back(ChangePowerMove{index(mv, "i"), index(mv, "j"),
                                               mv.at("k").get<std::size_t>(),
                                               mv.at("k2").get<std::size_t>()});
      } else {
        throw ParseError("unknown move type '" + type + "'");
      }
    }
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(std::string("bad move log: ") + e.what());
  }
  return log;
}

} // namespace sft

#include "sft/invariants.hpp"

#include "sft/newton.hpp"
#include "sft/number_theory.hpp"
#include "sft/structure.hpp"

#include <numeric>
#include <set>

namespace sft {

InvariantReport invariant_report(const IntMatrix &a, std::size_t horizon) {
  if (!a.square())
    throw DimensionError("invariant_report: matrix must be square");
  InvariantReport r;
  r.det_I_tA = det_one_minus_tA(a);
  r.zero_multiplicity =
      a.rows() - static_cast<std::size_t>(std::max(r.det_I_tA.degree(), 0L));
  const IntMatrix c = IntMatrix::identity(a.rows()) - a;
  r.bowen_franks = cokernel(c);
  r.det_I_A = r.det_I_tA.eval(Integer(1));
  r.traces = traces_from_poly(r.det_I_tA, horizon);
  if (is_nonnegative(a) && a.rows() > 0) {
    auto p = is_primitive(a);
    r.primitive = p.primitive;
    r.period = p.period;
  }
  return r;
}

TriangularFamily::TriangularFamily(Integer a_, Integer b_)
    : a(std::move(a_)), b(std::move(b_)) {
  if (!(sgn(b) != 0 && a > abs(b)))
    throw DomainError("triangular family needs a > |b| > 0");
}

IntMatrix TriangularFamily::member(const Integer &x) const {
  return IntMatrix(2, 2, {a, x, Integer(0), b});
}

Integer canonical_residue(const Integer &x, const Integer &d) {
  Integer p = mod_floor(x, d), m = mod_floor(-x, d);
  return p <= m ? p : m;
}

Triangularization reduce_to_triangular(const IntMatrix &a,
                                       const TriangularFamily &fam) {
  if (a.rows() != 2 || a.cols() != 2)
    throw DimensionError("reduce_to_triangular needs a 2x2 matrix");
  IntPoly expected = IntPoly(std::vector<Integer>{-fam.a, 1}) *
                     IntPoly(std::vector<Integer>{-fam.b, 1});
  if (char_poly(a) != expected)
    throw PreconditionError("characteristic polynomial is not (t-" +
                            fam.a.get_str() + ")(t-" + fam.b.get_str() + ")");
  // Primitive integer eigenvector v for a: (A - aI)·v = 0.
  Integer p = a(0, 0) - fam.a, q = a(0, 1);
  if (p == 0 && q == 0) {
    p = a(1, 0);
    q = a(1, 1) - fam.a;
  }
  Integer v0 = -q, v1 = p;
  Integer g = gcd(v0, v1);
  v0 /= g;
  v1 /= g;
  if (sgn(v0) < 0 || (v0 == 0 && sgn(v1) < 0)) {
    v0 = -v0;
    v1 = -v1;
  }
  // Complete to det 1: v0·t - v1·s = 1.
  auto eg = extended_gcd(v0, v1);
  IntMatrix U(2, 2, {v0, -eg.t, v1, eg.s});
  IntMatrix T = inverse_unimodular(U) * a * U;
  Integer x = T(0, 1);
  const Integer d = fam.modulus();
  Integer target = canonical_residue(x, d);
  if (mod_floor(x, d) != target) {
    U = U * IntMatrix(2, 2, {Integer(1), Integer(0), Integer(0), Integer(-1)});
    x = -x;
  }
  // Conjugating by [[1,k],[0,1]] shifts x by k·d.
  Integer k = (target - x) / d;
  U = U * IntMatrix(2, 2, {Integer(1), k, Integer(0), Integer(1)});
  T = inverse_unimodular(U) * a * U;
  if (T != fam.member(target))
    throw InternalError("reduce_to_triangular produced " + T.shape_string());
  return {std::move(U), std::move(target)};
}

bool sim_z_equivalent(const TriangularFamily &fam, const Integer &x,
                      const Integer &y) {
  const Integer d = fam.modulus();
  return mod_floor(x - y, d) == 0 || mod_floor(x + y, d) == 0;
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x)
      x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t x, std::size_t y) {
    x = find(x);
    y = find(y);
    if (x != y)
      parent[std::max(x, y)] = std::min(x, y);
  }
};

std::size_t modulus_size(const TriangularFamily &fam) {
  const Integer d = fam.modulus();
  if (d > 10000000)
    throw BudgetExceededError("modulus too large for residue enumeration");
  return d.get_ui();
}

} // namespace

std::vector<std::size_t> se_z_components(const TriangularFamily &fam) {
  const std::size_t d = modulus_size(fam);
  UnionFind uf(d);
  std::set<Integer> primes;
  for (auto &p : prime_factors(fam.a))
    primes.insert(p);
  for (auto &p : prime_factors(fam.b))
    primes.insert(p);
  for (std::size_t x = 0; x < d; ++x) {
    uf.unite(x, (d - x) % d);
    for (const auto &q : primes) {
      Integer qx = mod_floor(q * Integer(static_cast<unsigned long>(x)), Integer(static_cast<unsigned long>(d)));
      uf.unite(x, qx.get_ui());
    }
  }
  std::vector<std::size_t> label(d);
  for (std::size_t x = 0; x < d; ++x)
    label[x] = uf.find(x);
  return label;
}

bool se_z_equivalent(const TriangularFamily &fam, const Integer &x,
                     const Integer &y) {
  auto label = se_z_components(fam);
  const Integer d = fam.modulus();
  return label[mod_floor(x, d).get_ui()] == label[mod_floor(y, d).get_ui()];
}

ClassCounts class_counts(const TriangularFamily &fam) {
  const std::size_t d = modulus_size(fam);
  ClassCounts c;
  for (std::size_t x = 0; x < d; ++x)
    if (x <= (d - x) % d)
      ++c.sim_classes; // x is the canonical member of {x, -x}
  auto label = se_z_components(fam);
  std::set<std::size_t> roots(label.begin(), label.end());
  c.se_classes = roots.size();
  return c;
}

std::optional<bool> transpose_se_test(const TriangularFamily &fam,
                                      const Integer &x) {
  auto inv = inverse_mod(x, fam.modulus());
  if (!inv)
    return std::nullopt;
  return se_z_equivalent(fam, x, *inv);
}

} // namespace sft

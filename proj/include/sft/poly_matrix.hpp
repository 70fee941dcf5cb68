#pragma once

#include "sft/equivalence.hpp"
#include "sft/linalg.hpp"

#include <json.hpp>

#include <string>
#include <variant>
#include <vector>

namespace sft {

/// All coefficients nonnegative.
bool over_zplus_t(const PolyMatrix &a);
/// Over Z₊[t] with zero constant terms.
bool over_t_zplus_t(const PolyMatrix &a);
/// Constant-term matrix A(0).
IntMatrix constant_part(const PolyMatrix &a);
/// A over Z₊[t] with nilpotent A(0). Throws DomainError on a negative
/// coefficient. Cross-checks nilpotency against det(I - t·A(0)) = 1.
bool is_nzc(const PolyMatrix &a);

struct SharpVertex {
  bool rome = true;
  std::size_t index = 0; // rome vertex index
  // Auxiliary vertex: step `position` (1-based) on copy `copy` of the path
  // for monomial t^degree of entry (row, col).
  std::size_t row = 0, col = 0, degree = 0, copy = 0, position = 0;
};

struct SharpExpansion {
  IntMatrix matrix;
  std::vector<SharpVertex> vertices;
};

/// Graph expansion of A over tZ₊[t]: rome vertices first, then one path of
/// k edges through k-1 new vertices per unit monomial t^k (entries
/// row-major, ascending degree, copy index, path position).
SharpExpansion sharp_expand(const PolyMatrix &a);
/// det(I - A) == det(I - t·A♯)
bool verify_sharp(const PolyMatrix &a);

enum class MatrixClass { TZplus, NZC };
const char *class_name(MatrixClass c);

/// Whether M = I - B with B in the class (B over tZ₊[t], or B in NZC).
bool in_class(const PolyMatrix &m, MatrixClass cls);

struct ElementaryMoveSpec {
  std::size_t i = 0, j = 0;
  IntPoly poly;
  Side side = Side::Left; // Left: E·M, Right: M·E
};

/// Identity plus `p` at (i, j), i != j.
PolyMatrix elementary(std::size_t n, std::size_t i, std::size_t j,
                      const IntPoly &p);

/// E·M or M·E; throws IllegalMoveError if the result leaves the class and
/// PreconditionError if M is not in it to begin with.
PolyMatrix positive_move(const PolyMatrix &m, const ElementaryMoveSpec &spec,
                         MatrixClass cls);

PolyMatrix stabilize(const PolyMatrix &m);
/// Throws PreconditionError unless the last row and column are those of I.
PolyMatrix unstabilize(const PolyMatrix &m);

/// On M = I - A: one unit of t^k in A(i, j) becomes t^{k2}. Both powers must
/// be positive (IllegalMoveError otherwise).
PolyMatrix change_power(const PolyMatrix &m, std::size_t i, std::size_t j,
                        std::size_t k, std::size_t k2);

struct StabilizeMove {};
struct UnstabilizeMove {};
struct ChangePowerMove {
  std::size_t i = 0, j = 0, k = 0, k2 = 0;
};
using Move = std::variant<ElementaryMoveSpec, StabilizeMove, UnstabilizeMove,
                          ChangePowerMove>;

struct MoveLog {
  MatrixClass cls = MatrixClass::NZC;
  PolyMatrix start;
  std::vector<Move> moves;
  PolyMatrix end;
};

PolyMatrix apply_move(const PolyMatrix &m, const Move &mv, MatrixClass cls);

struct ReplayResult {
  bool ok = true;
  std::size_t steps = 0; // moves applied successfully
  std::string detail;
};

/// Re-applies every move from `start`, checking class membership after each
/// one, and compares with `end`.
ReplayResult replay(const MoveLog &log);

/// Start I - [[tRS, 0], [0, 0]], end I - [[0, 0], [0, tSR]], through the
/// four block steps, each split into single-entry moves.
MoveLog psse_chain(const IntMatrix &R, const IntMatrix &S);

struct ElementaryEquivalence {
  PolyMatrix E, F;
  std::size_t size = 0;
  std::size_t source_size = 0, target_size = 0;
  // E and F as ordered products of these factors.
  std::vector<PolyMatrix> left_factors, right_factors;
};

/// E·((I - tA) ⊕ I)·F = (I - tB) ⊕ I for the endpoints A, B of a verified
/// chain over Z. Throws PreconditionError if the chain does not verify.
ElementaryEquivalence elementary_equivalence_from_sse(const SseChain &chain);

/// Independent route through the similarity of zero extensions:
/// E·((I - tA) ⊕ I)·F = I ⊕ (I - tB).
ElementaryEquivalence maller_shub_equivalence(const EsseWitness &w);

struct FlowInvariants {
  FGAbelianGroup bowen_franks; // cok(I - A(1))
  Integer det;                 // det(I - A(1))
};

FlowInvariants flow_invariants(const PolyMatrix &a);

nlohmann::json to_json(const MoveLog &log);
MoveLog move_log_from_json(const nlohmann::json &j);

} // namespace sft

#pragma once

#include "sft/linalg.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace sft {

enum class Ring { Zplus, Z };

const char *ring_name(Ring r);

struct EsseWitness {
  IntMatrix R, S;
  Ring ring = Ring::Zplus;
};

enum class Failure { None, Dimension, Equation, Positivity };

struct Verdict {
  Failure failure = Failure::None;
  std::string detail;

  bool ok() const { return failure == Failure::None; }
  explicit operator bool() const { return ok(); }
  static Verdict pass() { return {}; }
  static Verdict fail(Failure f, std::string d) { return {f, std::move(d)}; }
};

/// A = RS and B = SR, with nonnegativity when ring = Zplus.
Verdict verify_esse(const IntMatrix &a, const IntMatrix &b, const EsseWitness &w);

struct ChainEdge {
  EsseWitness w;
  int orientation = +1; // +1: A_{i-1} = RS, A_i = SR; -1: roles swapped
};

struct SseChain {
  std::vector<ChainEdge> edges;
  Ring ring = Ring::Zplus;
};

struct ChainVerification {
  Verdict verdict;
  std::optional<std::size_t> failing_edge; // 0-based
  IntMatrix source, target;
  std::size_t lag = 0;
};

ChainVerification verify_sse_chain(const SseChain &chain);

struct SeWitness {
  IntMatrix R, S;
  std::size_t lag = 1;
  Ring ring = Ring::Zplus;
};

/// A^ℓ = RS, B^ℓ = SR, AR = RB, SA = BS.
Verdict verify_se(const IntMatrix &a, const IntMatrix &b, const SeWitness &w);
/// Same equations over Q (no positivity requirement).
Verdict verify_se_rational(const RatMatrix &a, const RatMatrix &b,
                           const RatMatrix &r, const RatMatrix &s,
                           std::size_t lag);

/// R = R1···Rℓ, S = Sℓ···S1 after orienting every edge forwards. Throws
/// PreconditionError if the chain does not verify.
SeWitness compress_sse_to_se(const SseChain &chain);

struct MallerShub {
  IntMatrix U, M1, M2; // U·M1 = M2·U, U unimodular
};

/// U = [[I,0],[S,I]], M1 = [[A,R],[0,0]], M2 = [[0,R],[0,B]] for A = RS, B = SR.
MallerShub maller_shub_witness(const EsseWitness &w);

enum class Side { Right, Left };

struct Extension {
  IntMatrix matrix;
  EsseWitness witness; // RS = A, SR = matrix (zero extensions only)
};

/// Right: [[A, X], [0, 0]] with X n×k. Left: [[A, 0], [X, 0]] with X k×n.
Extension zero_extension(const IntMatrix &a, const IntMatrix &x, Side side);
/// [[A, X], [0, N]] or [[A, 0], [X, N]]; N must be nilpotent.
IntMatrix nilpotent_extension(const IntMatrix &a, const IntMatrix &x,
                              const IntMatrix &n, Side side);

/// Smallest m with N^m = 0, or nullopt.
std::optional<std::size_t> nilpotency_index(const IntMatrix &n);
/// m - 1 for m >= 2, 0 for the zero matrix; throws for non-nilpotent input.
std::size_t sse_zero_lag_lower_bound(const IntMatrix &n);

struct Amalgamation {
  EsseWitness witness; // C = RS
  IntMatrix D;         // D = SR
  std::vector<std::size_t> merged; // merged column (or row) indices of C
};

std::vector<Amalgamation> column_amalgamation_moves(const IntMatrix &c);
std::vector<Amalgamation> row_amalgamation_moves(const IntMatrix &c);

struct NeighborOptions {
  std::size_t max_inner = 2;
  long max_entry = 2;
  bool dedup = true;
  std::size_t max_results = 100000;
  std::size_t max_candidates = 5000000; // R matrices examined
};

struct Neighbor {
  EsseWitness witness; // A = RS
  IntMatrix B;         // SR
};

struct NeighborResult {
  std::vector<Neighbor> neighbors;
  bool budget_exceeded = false;
};

/// Every factorisation A = RS over Z₊ with inner size k <= max_inner and
/// entries <= max_entry, in a fixed order (k, then R row-major lexicographic,
/// then S column-major lexicographic). With dedup, only the first witness
/// per permutation class of B is kept.
NeighborResult esse_neighbors(const IntMatrix &a, const NeighborOptions &opt);
/// Single-threaded reference with identical output.
NeighborResult esse_neighbors_serial(const IntMatrix &a,
                                     const NeighborOptions &opt);

/// Lexicographically least P·B·Pᵀ over all permutations (size <= 5),
/// B itself otherwise.
IntMatrix permutation_canonical_form(const IntMatrix &b);

// Certificate files: JSON list of {"R": ..., "S": ..., "s": ±1}.
SseChain chain_from_json(const nlohmann::json &j, Ring ring);
nlohmann::json to_json(const SseChain &chain);

} // namespace sft

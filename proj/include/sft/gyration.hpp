#pragma once

#include "sft/equivalence.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <vector>

namespace sft {

/// Edge symbols of a nonnegative matrix, numbered row-major and then by
/// parallel copy.
struct EdgeSet {
  struct Edge {
    std::size_t from, to, copy;
  };
  std::vector<Edge> edges;
  std::vector<std::size_t> first; // first[i*n + j]: id of copy 0 of (i, j)

  explicit EdgeSet(const IntMatrix &a);
  std::size_t size() const { return edges.size(); }
  std::size_t id(std::size_t i, std::size_t j, std::size_t copy) const;
  std::size_t n = 0;
};

using Word = std::vector<std::uint32_t>;

/// All legal edge words of the given length, lexicographic.
std::vector<Word> legal_words(const IntMatrix &a, std::size_t length,
                              std::size_t budget = 1000000);

struct PeriodicOrbitTable {
  std::size_t n = 0;
  std::vector<Word> points; // closed paths of length n, lexicographic
  std::map<Word, std::size_t> index;
  std::vector<std::size_t> orbit_of;             // point -> orbit
  std::vector<std::vector<std::size_t>> orbits;  // orbit -> points
  std::vector<std::size_t> representative;       // orbit -> least rotation
  std::vector<std::size_t> least_period;         // orbit -> least period
};

/// Throws BudgetExceededError when trace(A^n) > budget.
PeriodicOrbitTable enumerate_periodic(const IntMatrix &a, std::size_t n,
                                      std::size_t budget = 2000000);

/// Left rotation: σ^r(x)_m = x_{m+r}.
Word rotate(const Word &w, std::size_t r);

/// Sliding block code y_m = table(x_{m+j} ... x_{m+k}).
struct BlockCode {
  IntMatrix domain, range;
  long j = 0, k = 0;
  std::map<Word, std::uint32_t> table;

  std::size_t window() const { return static_cast<std::size_t>(k - j + 1); }
};

/// Every legal domain word of the window length has an image, and images of
/// overlapping windows form legal range words.
Verdict verify_block_code(const BlockCode &code);

BlockCode identity_code(const IntMatrix &a);
/// Window (1, 1), identity table.
BlockCode shift_code(const IntMatrix &a);
/// outer ∘ inner, window (j1 + j2, k1 + k2).
BlockCode compose_codes(const BlockCode &outer, const BlockCode &inner);
/// Acts as the identity on every legal word (needs j <= 0 <= k).
bool is_identity_code(const BlockCode &code);

struct Automorphism {
  BlockCode forward, inverse;
};

/// Both codes well formed and mutually inverse on all legal words of the
/// combined window.
Verdict verify_automorphism(const Automorphism &alpha);

nlohmann::json to_json(const BlockCode &code);
BlockCode block_code_from_json(const nlohmann::json &j);

/// Action on periodic words of any period; must commute with rotation.
using PeriodicAction = std::function<Word(const Word &)>;

PeriodicAction code_action(const BlockCode &code);
PeriodicAction automorphism_action(const Automorphism &alpha);
PeriodicAction shift_action();
PeriodicAction identity_action();
/// σ on the orbit of `word`, identity elsewhere.
PeriodicAction one_orbit_shift(const Word &word);
PeriodicAction compose(PeriodicAction outer, PeriodicAction inner);

struct PeriodicMap {
  std::vector<std::size_t> point_map; // domain point -> range point
  std::vector<std::size_t> orbit_map;
  bool bijective = false;
};

/// Image of every point of `from` under `act`, located in `to`. Throws
/// DomainError if some image is not a point of `to`.
PeriodicMap apply_periodic(const PeriodicAction &act,
                           const PeriodicOrbitTable &from,
                           const PeriodicOrbitTable &to);
PeriodicMap apply_code_periodic(const BlockCode &code,
                                const PeriodicOrbitTable &from,
                                const PeriodicOrbitTable &to);

struct GyrationData {
  std::size_t k = 0;
  std::size_t orbit_count = 0;   // |Q_k|
  std::vector<std::size_t> xi;   // permutation of Q_k (positions in q_orbits)
  std::vector<std::size_t> r;    // rotation amounts
  std::size_t g = 0;             // Σ r mod k
  int sign = 0;                  // parity of xi
};

/// Gyration data of an automorphism on the points of least period k.
/// `offsets`, when given, chooses rotation offsets of the orbit
/// representatives (one per orbit of least period k) instead of the least
/// rotation. Throws PreconditionError if the action is not a bijection of P_k.
GyrationData gyration(const IntMatrix &a, const PeriodicAction &alpha,
                      std::size_t k,
                      const std::vector<std::size_t> *offsets = nullptr);

/// g_m + (m/2)·Σ_{j>=1, 2^j | m} sign ξ_{m/2^j}  (mod m)
std::size_t sgcc(const IntMatrix &a, const PeriodicAction &alpha, std::size_t m);

/// Kim-Roush sgc₂(R, S) in {0, 1}.
int sgc2(const IntMatrix &R, const IntMatrix &S);

struct SsePath {
  std::vector<ChainEdge> edges; // over Z
};

/// Σ s(i)·sgc₂(R_i, S_i) mod 2; 0 for the empty path. Throws
/// PreconditionError if the path does not verify.
int path_sgc2(const SsePath &path);

struct Triangle {
  EsseWitness e1, e2, e3;
};

/// R1R2 = R3, R2S3 = S1, S3R1 = S2 and the vertex equations.
Verdict verify_triangle(const Triangle &t);
/// Free R1 (m×n), R2 (n×p), S3 (p×m) with sizes in [1, max_size] and
/// entries in [lo, hi]; the rest derived.
Triangle random_triangle(std::mt19937_64 &rng, std::size_t max_size, long lo,
                         long hi);

/// c(R,S) for A = RS nondegenerate, window (0, 1): x0x1 ↦ β⁻¹(s0 r1).
BlockCode conjugacy_from_esse(const IntMatrix &R, const IntMatrix &S);

/// Window (0, 0) code permuting parallel edges; perm[e] must have the same
/// endpoints as e.
BlockCode simple_graph_symmetry(const IntMatrix &a,
                                const std::vector<std::size_t> &perm);

} // namespace sft

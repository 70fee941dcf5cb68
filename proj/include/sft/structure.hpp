#pragma once

#include "sft/matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace sft {

/// Throws DomainError unless `a` is square with nonnegative entries.
void require_nonnegative_square(const IntMatrix &a, const char *what);

struct CoreResult {
  IntMatrix core;
  std::vector<std::size_t> kept; // surviving original indices, ascending
};

/// Repeatedly removes vertices whose row or column is zero.
CoreResult nondegenerate_core(const IntMatrix &a);

/// Strongly connected components of the support digraph, each sorted, listed
/// in order of their smallest vertex.
std::vector<std::vector<std::size_t>> strong_components(const IntMatrix &a);

/// Strongly connected support and not the 1×1 zero matrix.
bool is_irreducible(const IntMatrix &a);

/// gcd of cycle lengths. For reducible input this is the gcd over the
/// components carrying at least one cycle; 0 when the graph is acyclic.
std::size_t period(const IntMatrix &a);

struct PrimitivityResult {
  bool primitive = false;
  std::size_t exponent = 0; // smallest k with A^k > 0, when primitive
  // Failure certificates: an unreachable pair, or the period when > 1.
  std::optional<std::pair<std::size_t, std::size_t>> unreachable;
  std::size_t period = 0;
};

/// Wielandt bound n² - 2n + 2 on the primitivity exponent.
std::size_t wielandt_bound(std::size_t n);

PrimitivityResult is_primitive(const IntMatrix &a);

struct CyclicBlockForm {
  std::size_t period = 1;
  // permutation[k] = original index of the k-th vertex after reordering;
  // vertices are grouped by class 0..p-1 and ascending inside a class.
  std::vector<std::size_t> permutation;
  std::vector<std::size_t> class_sizes;
  // blocks[i]: rows in class i, columns in class (i+1) mod p.
  std::vector<IntMatrix> blocks;
  // products[i] = blocks[i]·blocks[i+1]···blocks[i+p-1], square on class i.
  std::vector<IntMatrix> products;
  IntMatrix permuted; // Q⁻¹AQ
};

/// Throws PreconditionError on reducible input.
CyclicBlockForm cyclic_block_form(const IntMatrix &a);

/// Higher block presentation A^[k]: vertices are the paths of k-1 edges in
/// the nondegenerate core (edges numbered row-major, then by parallel copy),
/// ordered lexicographically, and there is one edge per path of k edges.
/// A^[1] = A. Throws BudgetExceededError past `max_vertices`.
IntMatrix higher_block(const IntMatrix &a, std::size_t k,
                       std::size_t max_vertices = 20000);

/// A^n(i, j)
Integer path_count(const IntMatrix &a, std::size_t i, std::size_t j,
                   std::size_t n);

struct PeriodData {
  std::vector<Integer> fix_counts;          // τ_n = trace(A^n), n = 1..N
  std::vector<Integer> least_period_counts; // q_n = Σ_{d|n} μ(n/d)·τ_d
};

PeriodData fix_counts(const IntMatrix &a, std::size_t n);

namespace kernels {

using BoolMatrix = std::vector<std::uint8_t>; // row-major n×n support

BoolMatrix support(const IntMatrix &a);
BoolMatrix bool_multiply(const BoolMatrix &x, const BoolMatrix &y,
                         std::size_t n);

} // namespace kernels

} // namespace sft

#pragma once

#include "sft/linalg.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace sft {

struct InvariantReport {
  IntPoly det_I_tA;
  std::size_t zero_multiplicity = 0; // n - deg det(I - tA)
  FGAbelianGroup bowen_franks;       // cok(I - A)
  Integer det_I_A;
  std::vector<Integer> traces; // τ1..τN
  // Only meaningful for nonnegative input.
  std::optional<bool> primitive;
  std::optional<std::size_t> period;
};

InvariantReport invariant_report(const IntMatrix &a, std::size_t horizon);

/// The family of 2×2 integer matrices with eigenvalues a > |b| > 0, whose
/// members are similar over Z to some M_x = [[a, x], [0, b]].
struct TriangularFamily {
  Integer a, b;

  TriangularFamily(Integer a_, Integer b_);
  Integer modulus() const { return a - b; }
  IntMatrix member(const Integer &x) const;
};

/// min(x mod d, -x mod d)
Integer canonical_residue(const Integer &x, const Integer &d);

struct Triangularization {
  IntMatrix U; // unimodular, U⁻¹·A·U = [[a, x], [0, b]]
  Integer x;   // canonical residue
};

/// Throws PreconditionError when χ_A != (t - a)(t - b).
Triangularization reduce_to_triangular(const IntMatrix &a,
                                       const TriangularFamily &fam);

bool sim_z_equivalent(const TriangularFamily &fam, const Integer &x,
                      const Integer &y);

/// Residue labels 0..d-1 of the SE-Z classes: components of the graph with
/// edges x ~ -x and x ~ q·x for primes q dividing a or b.
std::vector<std::size_t> se_z_components(const TriangularFamily &fam);
bool se_z_equivalent(const TriangularFamily &fam, const Integer &x,
                     const Integer &y);

struct ClassCounts {
  std::size_t sim_classes = 0;
  std::size_t se_classes = 0;
};
ClassCounts class_counts(const TriangularFamily &fam);

/// Whether M_x is SE-Z to its transpose, i.e. x ~ x⁻¹ mod d. nullopt when x
/// is not invertible mod d.
std::optional<bool> transpose_se_test(const TriangularFamily &fam,
                                      const Integer &x);

} // namespace sft

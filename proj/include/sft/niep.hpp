#pragma once

#include "sft/int_poly.hpp"
#include "sft/matrix.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace sft {

/// Λ given by its monic characteristic polynomial p(t) = Π(t - λi) over Q,
/// p(0) != 0. Complex roots enter through p only.
class CandidateSpectrum {
public:
  /// Ascending coefficients of a monic p with nonzero constant term.
  explicit CandidateSpectrum(std::vector<Rational> ascending);

  static CandidateSpectrum from_poly(const IntPoly &p);
  static CandidateSpectrum from_roots(const std::vector<Rational> &roots);
  /// Nonzero spectrum of any A with det(I - tA) = q.
  static CandidateSpectrum from_det(const IntPoly &q);

  std::size_t degree() const { return poly_.size() - 1; }
  const std::vector<Rational> &poly() const { return poly_; }
  /// Π(1 - λi·t), ascending, constant term 1.
  std::vector<Rational> reversed() const;
  bool integral() const;
  std::string str() const;

private:
  std::vector<Rational> poly_;
};

/// s1..sN, sn = trace(Λ^n).
std::vector<Rational> power_sums(const CandidateSpectrum &spec, std::size_t n);

/// Distinct rational roots with multiplicities, ascending.
std::vector<std::pair<Rational, std::size_t>>
rational_roots(const CandidateSpectrum &spec);
/// Companion-matrix eigenvalues in double precision.
std::vector<std::complex<double>> numeric_roots(const CandidateSpectrum &spec);

enum class PerronVerdict { Pass, Fail, Uncertain };
const char *verdict_name(PerronVerdict v);

struct PerronResult {
  PerronVerdict verdict = PerronVerdict::Uncertain;
  bool exact = false;                 // dominant root confirmed as a rational root
  std::optional<Rational> exact_root;
  double dominant = 0;                // numeric value of the candidate
  std::string detail;
};

PerronResult check_perron(const CandidateSpectrum &spec, double tol = 1e-6);

enum class SpectrumRing { Z, Dense };

struct SpectrumReport {
  SpectrumRing ring = SpectrumRing::Z;
  std::size_t horizon = 0;
  PerronResult perron;
  bool coefficients_ok = true;
  std::vector<Rational> traces;
  // Z mode
  std::optional<std::size_t> net_trace_violation; // first n with net trace < 0
  Rational net_trace_value;
  // Dense mode
  std::optional<std::size_t> trace_violation;     // (i): first n with sn < 0
  std::optional<std::pair<std::size_t, std::size_t>> growth_violation; // (ii): (n, k)
  std::size_t jll_min_size = 1;

  bool traces_ok() const {
    return !net_trace_violation && !trace_violation && !growth_violation;
  }
  bool ok() const {
    return traces_ok() && coefficients_ok && perron.verdict == PerronVerdict::Pass;
  }
};

SpectrumReport check_conditions(const CandidateSpectrum &spec,
                                SpectrumRing ring, std::size_t horizon = 64);

struct JllResult {
  bool ok = true;
  std::optional<std::pair<std::size_t, std::size_t>> violation; // (m, k)
};

/// n^{k-1}·trace(A^{mk}) >= trace(A^m)^k for m <= max_m, k <= max_k.
JllResult jll_check(const IntMatrix &a, std::size_t max_m, std::size_t max_k);

/// Largest over 2 <= k <= max_k with sk > 0 of the smallest n with
/// n^{k-1}·sk >= s1^k; 1 when s1 <= 0.
std::size_t jll_min_size_bound(const CandidateSpectrum &spec, std::size_t max_k);

/// Companion of Π(t - λi): ones above the diagonal, last row -c0 .. -c_{n-1}. Needs
/// λ1 > 0, λi <= 0 otherwise, Σλi >= 0.
RatMatrix suleimanova_realize(const std::vector<Rational> &lams);

/// p-cyclic matrix with D in block (0,1), I in (i,i+1) and (p-1,0);
/// det(I - tA) = det(I - t^p D) is checked before returning.
IntMatrix inflate_period(const IntMatrix &d, std::size_t p);
/// q(t^p)
IntPoly spectrum_pth_root_poly(const IntPoly &q, std::size_t p);

/// Smallest k <= kmax with A^k > 0 entrywise.
std::optional<std::size_t> eventually_positive(const IntMatrix &a,
                                               std::size_t kmax);

struct LaffeyQuantities {
  double G = 1;                    // 1 - max subdominant modulus
  std::optional<Rational> G_exact; // when every root is rational
  std::optional<Rational> M;       // min over 2 <= n <= N of sn
  std::size_t M_at = 0;
  std::string bound; // shape of the size bound, κ_n symbolic
};

/// Needs p(1) = 0 (Perron value normalised to 1).
LaffeyQuantities laffey_quantities(const CandidateSpectrum &spec, std::size_t n);

} // namespace sft

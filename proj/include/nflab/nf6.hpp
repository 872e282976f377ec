#pragma once

#include "nflab/identities.hpp"
#include "nflab/nf4.hpp"
#include "nflab/poly.hpp"

#include <array>
#include <vector>

namespace nflab {

/// (j - k + l) / ((j - k)(l - k)). Throws std::domain_error when j == k or l == k.
Rational tau(long j, long k, long l);

/// Ordered sextuple, odd slots (j1, j3, j5) unbarred.
struct Sextuple {
  std::array<int, 6> j;

  long momentum() const;
  long divisor() const;
  bool nonzero_entries() const;
  /// Zero momentum and nonzero divisor.
  bool in_delta_tilde() const;
  /// Zero momentum, zero divisor and disjoint odd/even slot sets.
  bool in_resonant() const;
  std::array<long, 6> rearranged() const;
  Monomial monomial() const;

  static Sextuple from_monomial(const Monomial& m);

  friend auto operator<=>(const Sextuple&, const Sextuple&) = default;
};

/// -1/(8 pi^2) sum over j != k of (2j - k)/(j - k)^2 |q_j|^4 |q_k|^2.
PolyHamiltonian build_K(int truncation);

/// Resonant non-normal sextuples inside the box, one per canonical monomial,
/// slots interleaved from the sorted plus and minus lists, in monomial order.
std::vector<Sextuple> enumerate_resonant(int truncation);

/// Exhaustive split of a degree-six polynomial: action part, resonant non-normal
/// part, and the rest (which carries nonzero divisors).
struct R6Split {
  PolyHamiltonian K;
  PolyHamiltonian Ktilde;
  PolyHamiltonian Qtilde;
};

R6Split split_R6(const PolyHamiltonian& r6);

struct ResonantResidual {
  Monomial monomial;
  ExactCoeff coefficient;
};

struct KtildeReport {
  int truncation = 0;
  std::size_t resonant_monomials = 0;
  /// Resonant monomials whose remainder coefficient is not zero.
  std::vector<ResonantResidual> nonzero;
  /// Resonant sextuples whose nine-term tau sum is not zero.
  std::vector<Sextuple> tau_sum_failures;
  /// Nonzero resonant terms found in the remainder but missing from the enumeration.
  std::size_t unlisted_terms = 0;
  bool ok() const { return nonzero.empty() && tau_sum_failures.empty() && unlisted_terms == 0; }
};

/// Checks every resonant monomial of the box against the supplied remainder
/// (built at the same truncation) and the nine-term tau sum of each sextuple.
KtildeReport verify_Ktilde_zero(const PolyHamiltonian& r6);
KtildeReport verify_Ktilde_zero(int truncation, int jobs = 1);

/// sum over alpha < gamma in the odd slots and beta in the even slots of tau(j_a, j_b, j_c).
Rational nine_term_tau_sum(const Sextuple& s);

/// i Qtilde / divisor, term by term. Throws std::logic_error on a zero divisor.
PolyHamiltonian build_F6(const PolyHamiltonian& qtilde);
PolyHamiltonian build_F6(int truncation, int jobs = 1);

enum class SextupleCase { Excluded, Bounded };

struct SextupleReport {
  /// After normalization: |j1| >= |j3| >= |j5|, |j2| >= |j4| >= |j6|, |j1| >= |j2|.
  Sextuple normalized;
  long divisor;
  SextupleCase kind;
  /// (j1*)^3 / (100 (j2* ... j6*)^2)
  Rational lower_bound;
  /// Always true for excluded tuples.
  bool bound_holds;
};

Sextuple normalize_sextuple(const Sextuple& t);

/// Throws std::invalid_argument for tuples outside the non-resonant sextuple set.
SextupleReport sextuple_bound_check(const Sextuple& t);

/// Coefficient of a sextic monomial in {B, F} + 1/2 {Q, F} with no truncation,
/// from closed-form quartic coefficients and a direct contraction count.
ExactCoeff r6_coefficient(const Monomial& target);

/// Reducible coefficient on q_j conj(q_k) q_l conj(q_m) |q_n|^2 from the closed
/// form 1/(16 pi^2) sum over orderings of 4 tau(j,n,k) - tau(j,n,l) - tau(k,n,m).
/// Requires (j,k,l,m) in the non-resonant quadruple set and n not among them.
ExactCoeff qtilde0_coefficient(const Quadruple& t, long n);

struct Qtilde0Mismatch {
  Quadruple tuple;
  long n;
  ExactCoeff formula;
  ExactCoeff extracted;
};

struct Qtilde0Report {
  int truncation = 0;
  long n_min = 0;
  /// Reducible terms compared inside the box.
  std::size_t box_terms = 0;
  /// Of those, terms with |n| > 100 (max small index)^2.
  std::size_t box_large_n = 0;
  /// Of those, terms with j == l or k == m.
  std::size_t box_symmetric = 0;
  /// Terms compared at large synthetic n through r6_coefficient.
  std::size_t synthetic_terms = 0;
  std::vector<Qtilde0Mismatch> mismatches;
  /// Factors tau(j,n,k), tau(j,n,l), tau(k,n,m) checked against 2/|n|.
  std::size_t tau_checked = 0;
  std::size_t tau_violations = 0;
  bool ok() const { return mismatches.empty() && tau_violations == 0; }
};

/// Compares the closed form against the subtraction-derived Qtilde of the box
/// (all reducible terms with n outside the quadruple), then against r6_coefficient
/// for small quadruples with |n| in {n_min, n_min + 1, 10 n_min}, and checks the
/// 2/|n| bound on the tau factors of those terms.
Qtilde0Report build_Qtilde0_crosscheck(const PolyHamiltonian& qtilde, long n_min);
Qtilde0Report build_Qtilde0_crosscheck(int truncation, long n_min, int jobs = 1);

struct TauBoundSweep {
  int small_bound = 0;
  long n_max = 0;
  std::size_t pairs = 0;
  std::size_t checked = 0;
  std::size_t violations = 0;
};

/// |tau(a, n, b)| < 2/|n| in integer arithmetic for all pairs (a, b) that occur
/// as (j,k), (j,l), (k,m) of quadruples with entries up to small_bound, and every
/// 100 small_bound^2 < |n| <= n_max.
TauBoundSweep tau_bound_sweep(int small_bound, long n_max);

}  // namespace nflab

#pragma once

#include "nflab/poly.hpp"

#include <array>
#include <optional>
#include <string>

namespace nflab {

/// Ordered quadruple (j, k, l, m) indexing q_j conj(q_k) q_l conj(q_m).
struct Quadruple {
  int j, k, l, m;

  long momentum() const { return long(j) - k + l - m; }
  long divisor() const { return long(j) * j - long(k) * k + long(l) * l - long(m) * m; }

  /// Membership in the non-resonant set: nonzero entries, j - k + l - m = 0, j not in {k, m}.
  bool in_delta() const;

  /// j1* >= j2* >= j3* >= j4*.
  std::array<long, 4> rearranged() const;

  Monomial monomial() const { return Monomial({j, l}, {k, m}); }
};

struct DivisorReport {
  Quadruple tuple;
  long divisor;
  /// sqrt(j1*)^3 / (2 sqrt(j2* j3* j4*)), for display; the check itself is exact.
  double lower_bound;
  bool bound_holds;
  /// divisor == -2(m-j)(m-l) == -2(m-j)(j-k)
  bool factorization_holds;
};

/// Small-divisor lower bound on the non-resonant set, checked in integers as
/// 4 D^2 j2* j3* j4* >= (j1*)^3. Throws std::invalid_argument for tuples outside it.
DivisorReport divisor_bound_check(const Quadruple& t);

std::string divisor_csv_header();
std::string divisor_csv_row(const DivisorReport& r);

/// Q: the non-normal part of G.
PolyHamiltonian build_Q(int truncation);

/// Generator of the order-4 transform: F_{jklm} = i / (4 pi (j^2 - k^2 + l^2 - m^2)) on the
/// non-resonant set, aggregated onto canonical monomials.
PolyHamiltonian build_F4(int truncation);

/// B, Q and F built once at a common truncation.
struct QuarticGenerators {
  PolyHamiltonian B;
  PolyHamiltonian Q;
  PolyHamiltonian F;
};

QuarticGenerators build_quartic_generators(int truncation);

/// Pieces of the degree-six remainder {B, F} + 1/2 {Q, F}.
struct R6Parts {
  PolyHamiltonian bf;
  PolyHamiltonian half_qf;
  PolyHamiltonian total;
};

/// Degree-six remainder on the mode box |j| <= M.
///
/// The contraction index in {Q, F} can reach 3M for an output monomial inside
/// the box, so the generators are built at truncation 3M and the bracket is
/// windowed to M. The result is the exact restriction of the untruncated
/// remainder to the box.
R6Parts compute_R6_parts(int truncation, int jobs = 1);
PolyHamiltonian compute_R6(int truncation, int jobs = 1);

/// Degree-six remainder of the Galerkin system truncated at M (generators and
/// contraction all inside the box). Differs from compute_R6 near the box edge.
PolyHamiltonian compute_R6_galerkin(int truncation, int jobs = 1);

/// Direct expansion of -1/(4 pi^2) sum_Delta m / (j^2-k^2+l^2-m^2) q_j conj(q_k) q_l conj(q_m) |q_m|^2 + c.c.
PolyHamiltonian closed_form_BF(int truncation);

/// Shape of a coefficient bound |c| <= K * (j1*)^(-lead) * (j2* ... j2r*)^(rest), where
/// K = C^r when per_degree_power is set and K = C otherwise. Coefficients are taken
/// per ordered tuple (canonical coefficient divided by the number of orderings).
struct AuditShape {
  double lead_exponent;
  double rest_exponent;
  bool per_degree_power;

  /// (j2* ... j2r* / j1*)^e with constant C^r.
  static AuditShape symmetric(double e) { return {e, e, true}; }
};

struct AuditResult {
  /// Smallest constant for which every stored coefficient satisfies the bound.
  double constant = 0.0;
  std::optional<Monomial> worst;
  std::size_t terms = 0;
};

AuditResult coefficient_growth_audit(const PolyHamiltonian& p, const AuditShape& shape);
AuditResult coefficient_growth_audit(const PolyHamiltonian& p, const Rational& exponent);

}  // namespace nflab

#pragma once

#include "nflab/modes.hpp"
#include "nflab/poly.hpp"

#include <vector>

namespace nflab {

/// Double-precision image of a PolyHamiltonian for evaluation at states.
class NumericPoly {
 public:
  explicit NumericPoly(const PolyHamiltonian& p);

  int truncation() const { return m_; }
  std::size_t size() const { return coeffs_.size(); }

  /// Conjugation symmetry of the source polynomial.
  bool real_valued() const { return real_valued_; }

  Complex value(const FourierState& q) const;

  /// Fills dF/dq_j and dF/dconj(q_j), slot-indexed like FourierState.
  void gradient(const FourierState& q, std::vector<Complex>& d_dq, std::vector<Complex>& d_dqbar) const;

  /// Component j is -i j dF/dconj(q_j).
  FourierState vector_field(const FourierState& q) const;

 private:
  void check_state(const FourierState& q) const;

  int m_;
  bool real_valued_;
  std::vector<Complex> coeffs_;
  // Term t uses slots [offset_[t], offset_[t+1]); the first half are unbarred.
  std::vector<std::size_t> offset_;
  std::vector<std::size_t> slots_;
};

/// Vector field of F at q: component j equals -i j dF/dconj(q_j).
/// Throws std::invalid_argument when the truncations differ.
FourierState vector_field(const PolyHamiltonian& f, const FourierState& q);

/// {H, F} evaluated at q through numeric gradients. Both polynomials must be
/// real-valued; otherwise std::invalid_argument.
double poisson_bracket_numeric(const PolyHamiltonian& h, const PolyHamiltonian& f, const FourierState& q);
double poisson_bracket_numeric(const NumericPoly& h, const NumericPoly& f, const FourierState& q);

/// Value of a real-valued polynomial at q (the imaginary part is dropped).
double evaluate_real(const PolyHamiltonian& p, const FourierState& q);

}  // namespace nflab

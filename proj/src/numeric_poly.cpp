#include "nflab/numeric_poly.hpp"

#include <stdexcept>

namespace nflab {

NumericPoly::NumericPoly(const PolyHamiltonian& p) : m_(p.truncation()), real_valued_(p.is_real_valued()) {
  offset_.push_back(0);
  p.for_each_term([&](const Monomial& mono, const ExactCoeff& c) {
    coeffs_.push_back(c.to_complex());
    for (int j : mono.plus()) slots_.push_back(FourierState::slot(j, m_));
    for (int j : mono.minus()) slots_.push_back(FourierState::slot(j, m_));
    offset_.push_back(slots_.size());
  });
}

void NumericPoly::check_state(const FourierState& q) const {
  if (q.truncation() != m_) {
    throw std::invalid_argument("state truncation " + std::to_string(q.truncation()) +
                                " does not match polynomial truncation " + std::to_string(m_));
  }
}

Complex NumericPoly::value(const FourierState& q) const {
  check_state(q);
  const auto amp = q.data();
  Complex acc{};
  for (std::size_t t = 0; t < coeffs_.size(); ++t) {
    const std::size_t b = offset_[t], e = offset_[t + 1], half = (e - b) / 2;
    Complex prod = coeffs_[t];
    for (std::size_t i = b; i < b + half; ++i) prod *= amp[slots_[i]];
    for (std::size_t i = b + half; i < e; ++i) prod *= std::conj(amp[slots_[i]]);
    acc += prod;
  }
  return acc;
}

void NumericPoly::gradient(const FourierState& q, std::vector<Complex>& d_dq, std::vector<Complex>& d_dqbar) const {
  check_state(q);
  const auto amp = q.data();
  d_dq.assign(q.size(), Complex{});
  d_dqbar.assign(q.size(), Complex{});
  Complex factors[16], prefix[17], suffix[17];
  for (std::size_t t = 0; t < coeffs_.size(); ++t) {
    const std::size_t b = offset_[t], e = offset_[t + 1], n = e - b, half = n / 2;
    if (n > 16) throw std::length_error("monomial degree above 16 is not supported");
    for (std::size_t i = 0; i < n; ++i) {
      const Complex a = amp[slots_[b + i]];
      factors[i] = i < half ? a : std::conj(a);
    }
    prefix[0] = 1.0;
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] * factors[i];
    suffix[n] = 1.0;
    for (std::size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] * factors[i];
    // Repeated indices need no special care: the product rule sums one term
    // per occurrence, which is what this loop does.
    for (std::size_t i = 0; i < n; ++i) {
      const Complex others = coeffs_[t] * prefix[i] * suffix[i + 1];
      (i < half ? d_dq : d_dqbar)[slots_[b + i]] += others;
    }
  }
}

FourierState NumericPoly::vector_field(const FourierState& q) const {
  std::vector<Complex> d_dq, d_dqbar;
  gradient(q, d_dq, d_dqbar);
  FourierState out(m_);
  auto data = out.data();
  for (std::size_t s = 0; s < data.size(); ++s) {
    data[s] = Complex(0.0, -double(q.mode_at(s))) * d_dqbar[s];
  }
  return out;
}

FourierState vector_field(const PolyHamiltonian& f, const FourierState& q) {
  if (f.truncation() != q.truncation()) throw std::invalid_argument("truncation mismatch in vector_field");
  return NumericPoly(f).vector_field(q);
}

double poisson_bracket_numeric(const NumericPoly& h, const NumericPoly& f, const FourierState& q) {
  if (!h.real_valued() || !f.real_valued()) {
    throw std::invalid_argument("numeric bracket needs conjugation-symmetric (real-valued) Hamiltonians");
  }
  std::vector<Complex> h_q, h_qbar, f_q, f_qbar;
  h.gradient(q, h_q, h_qbar);
  f.gradient(q, f_q, f_qbar);
  Complex acc{};
  for (std::size_t s = 0; s < q.size(); ++s) {
    acc += double(q.mode_at(s)) * (h_q[s] * f_qbar[s] - h_qbar[s] * f_q[s]);
  }
  return (Complex(0.0, -1.0) * acc).real();
}

double poisson_bracket_numeric(const PolyHamiltonian& h, const PolyHamiltonian& f, const FourierState& q) {
  if (h.truncation() != f.truncation()) throw std::invalid_argument("truncation mismatch in numeric bracket");
  return poisson_bracket_numeric(NumericPoly(h), NumericPoly(f), q);
}

double evaluate_real(const PolyHamiltonian& p, const FourierState& q) { return NumericPoly(p).value(q).real(); }

}  // namespace nflab

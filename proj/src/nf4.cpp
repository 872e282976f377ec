#include "nflab/nf4.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nflab {

bool Quadruple::in_delta() const {
  return j != 0 && k != 0 && l != 0 && m != 0 && momentum() == 0 && j != k && j != m;
}

std::array<long, 4> Quadruple::rearranged() const {
  std::array<long, 4> a{std::labs(j), std::labs(k), std::labs(l), std::labs(m)};
  std::sort(a.begin(), a.end(), std::greater<>());
  return a;
}

DivisorReport divisor_bound_check(const Quadruple& t) {
  if (!t.in_delta()) {
    std::ostringstream os;
    os << "quadruple (" << t.j << "," << t.k << "," << t.l << "," << t.m << ") is not in the non-resonant set";
    throw std::invalid_argument(os.str());
  }
  const long d = t.divisor();
  const auto s = t.rearranged();
  using i128 = __int128;
  const i128 lhs = i128(4) * d * d * s[1] * s[2] * s[3];
  const i128 rhs = i128(s[0]) * s[0] * s[0];
  DivisorReport r{t, d, std::pow(double(s[0]), 1.5) / (2.0 * std::sqrt(double(s[1]) * s[2] * s[3])), lhs >= rhs,
                  d == -2L * (t.m - t.j) * (t.m - t.l) && d == -2L * (t.m - t.j) * (t.j - t.k)};
  return r;
}

std::string divisor_csv_header() { return "j,k,l,m,divisor,bound"; }

std::string divisor_csv_row(const DivisorReport& r) {
  std::ostringstream os;
  os.precision(17);
  os << r.tuple.j << ',' << r.tuple.k << ',' << r.tuple.l << ',' << r.tuple.m << ',' << r.divisor << ','
     << r.lower_bound;
  return os.str();
}

PolyHamiltonian build_Q(int truncation) { return split_normal(build_G(truncation)).second; }

namespace {

PolyHamiltonian generator_from_Q(const PolyHamiltonian& q) {
  PolyHamiltonian f(q.truncation());
  q.for_each_term([&](const Monomial& m, const ExactCoeff& c) {
    const long d = m.square_divisor();
    if (d == 0) throw std::logic_error("zero divisor on non-normal quartic term " + m.to_string());
    f.add_term(m, c.times_i() * make_rational(1, d));
  });
  return f;
}

}  // namespace

PolyHamiltonian build_F4(int truncation) {
  if (truncation < 1) throw std::invalid_argument("truncation must be at least 1");
  return generator_from_Q(build_Q(truncation));
}

QuarticGenerators build_quartic_generators(int truncation) {
  auto [b, q] = split_normal(build_G(truncation));
  PolyHamiltonian f = generator_from_Q(q);
  return {std::move(b), std::move(q), std::move(f)};
}

R6Parts compute_R6_parts(int truncation, int jobs) {
  if (truncation < 1) throw std::invalid_argument("truncation must be at least 1");
  const auto gens = build_quartic_generators(3 * truncation);
  PolyHamiltonian bf = bracket(gens.B, gens.F, truncation, jobs);
  PolyHamiltonian half_qf = ExactCoeff::real(make_rational(1, 2)) * bracket(gens.Q, gens.F, truncation, jobs);
  PolyHamiltonian total = bf + half_qf;
  return {std::move(bf), std::move(half_qf), std::move(total)};
}

PolyHamiltonian compute_R6(int truncation, int jobs) { return compute_R6_parts(truncation, jobs).total; }

PolyHamiltonian compute_R6_galerkin(int truncation, int jobs) {
  const auto gens = build_quartic_generators(truncation);
  return bracket(gens.B, gens.F, std::nullopt, jobs) +
         ExactCoeff::real(make_rational(1, 2)) * bracket(gens.Q, gens.F, std::nullopt, jobs);
}

PolyHamiltonian closed_form_BF(int truncation) {
  PolyHamiltonian p(truncation);
  const int n = truncation;
  for (int j = -n; j <= n; ++j) {
    for (int k = -n; k <= n; ++k) {
      for (int l = -n; l <= n; ++l) {
        const Quadruple t{j, k, l, j - k + l};
        if (std::abs(t.m) > n || !t.in_delta()) continue;
        const ExactCoeff c = ExactCoeff::real(make_rational(-t.m, 4 * t.divisor()), 2);
        const Monomial mono({t.j, t.l, t.m}, {t.k, t.m, t.m});
        p.add_term(mono, c);
        p.add_term(mono.conj(), c.conj());
      }
    }
  }
  return p;
}

AuditResult coefficient_growth_audit(const PolyHamiltonian& p, const AuditShape& shape) {
  AuditResult result;
  p.for_each_term([&](const Monomial& m, const ExactCoeff& c) {
    ++result.terms;
    const auto star = IndexTuple(m.interleaved()).rearranged();
    double log_shape = -shape.lead_exponent * std::log(double(star[0]));
    for (std::size_t i = 1; i < star.size(); ++i) log_shape += shape.rest_exponent * std::log(double(star[i]));
    const double per_ordering = c.abs() / double(m.orderings());
    double needed = std::exp(std::log(per_ordering) - log_shape);
    if (shape.per_degree_power) needed = std::pow(needed, 1.0 / m.r());
    if (needed > result.constant) {
      result.constant = needed;
      result.worst = m;
    }
  });
  return result;
}

AuditResult coefficient_growth_audit(const PolyHamiltonian& p, const Rational& exponent) {
  return coefficient_growth_audit(p, AuditShape::symmetric(exponent.get_d()));
}

}  // namespace nflab

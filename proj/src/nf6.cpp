#include "nflab/nf6.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <stdexcept>

namespace nflab {

namespace {

using Ints = std::vector<int>;

int count_of(const Ints& v, int a) { return static_cast<int>(std::count(v.begin(), v.end(), a)); }

Ints without(const Ints& v, const Ints& drop) {
  Ints out = v;
  for (int d : drop) out.erase(std::find(out.begin(), out.end(), d));
  return out;
}

Ints distinct_values(const Ints& v) {
  Ints out = v;
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Distinct two-element sub-multisets of a sorted list.
std::vector<Ints> distinct_pairs(const Ints& v) {
  std::set<Ints> seen;
  for (std::size_t a = 0; a < v.size(); ++a)
    for (std::size_t b = a + 1; b < v.size(); ++b) seen.insert({v[a], v[b]});
  return {seen.begin(), seen.end()};
}

long nperm2(const Ints& v) { return v[0] == v[1] ? 1 : 2; }

// Canonical coefficient of G on a quartic monomial, in units of 1/pi.
Rational g_coefficient(const Ints& plus, const Ints& minus) {
  for (int x : plus)
    if (x == 0) return 0;
  for (int x : minus)
    if (x == 0) return 0;
  if (plus[0] + plus[1] != minus[0] + minus[1]) return 0;
  return make_rational(nperm2(plus) * nperm2(minus), 4);
}

long square_sum_divisor(const Ints& plus, const Ints& minus) {
  long d = 0;
  for (int x : plus) d += long(x) * x;
  for (int x : minus) d -= long(x) * x;
  return d;
}

// Imaginary part of the canonical F coefficient, in units of 1/pi.
Rational f_coefficient_im(const Ints& plus, const Ints& minus) {
  if (plus == minus) return 0;
  const Rational q = g_coefficient(plus, minus);
  if (sgn(q) == 0) return 0;
  return q / square_sum_divisor(plus, minus);
}

Ints sorted(Ints v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Real part, units 1/pi^2, of the sextic coefficient of {B,F} + 1/2 {Q,F}.
Rational r6_coefficient_real(const Ints& P, const Ints& N) {
  Rational total = 0;
  auto weight = [](const Ints& hp, const Ints& hm) { return hp == hm ? Rational(1) : make_rational(1, 2); };
  // -i a (dH/dq_a)(dF/dconj q_a): the i from F makes this +a ca cb h f_im.
  for (int x : distinct_values(P)) {
    const Ints fp = without(P, {x});
    for (const Ints& hm : distinct_pairs(N)) {
      const int a = hm[0] + hm[1] - x;
      if (a == 0) continue;
      const Ints hp = sorted({x, a});
      Ints fm = without(N, hm);
      fm.push_back(a);
      fm = sorted(fm);
      const Rational h = g_coefficient(hp, hm);
      if (sgn(h) == 0) continue;
      const Rational f = f_coefficient_im(fp, fm);
      if (sgn(f) == 0) continue;
      total += weight(hp, hm) * h * f * (long(a) * count_of(hp, a) * count_of(fm, a));
    }
  }
  // +i a (dH/dconj q_a)(dF/dq_a)
  for (const Ints& hp : distinct_pairs(P)) {
    Ints fp_rest = without(P, hp);
    for (int y : distinct_values(N)) {
      const int a = hp[0] + hp[1] - y;
      if (a == 0) continue;
      const Ints hm = sorted({y, a});
      Ints fp = fp_rest;
      fp.push_back(a);
      fp = sorted(fp);
      const Ints fm = without(N, {y});
      const Rational h = g_coefficient(hp, hm);
      if (sgn(h) == 0) continue;
      const Rational f = f_coefficient_im(fp, fm);
      if (sgn(f) == 0) continue;
      total -= weight(hp, hm) * h * f * (long(a) * count_of(hm, a) * count_of(fp, a));
    }
  }
  return total;
}

bool tau_factor_bounded(long a, long n, long b) {
  // |a - n + b| |n| < 2 |a - n| |b - n|
  using i128 = __int128;
  const i128 lhs = i128(std::labs(a - n + b)) * std::labs(n);
  const i128 rhs = i128(2) * std::labs(a - n) * std::labs(b - n);
  return lhs < rhs;
}

std::vector<Quadruple> canonical_quadruples(int bound) {
  std::vector<Quadruple> out;
  std::set<Monomial> seen;
  for (int j = -bound; j <= bound; ++j)
    for (int k = -bound; k <= bound; ++k)
      for (int l = -bound; l <= bound; ++l) {
        const Quadruple t{j, k, l, j - k + l};
        if (std::abs(t.m) > bound || !t.in_delta()) continue;
        if (seen.insert(t.monomial()).second) out.push_back(t);
      }
  return out;
}

}  // namespace

Rational tau(long j, long k, long l) {
  if (j == k || l == k) throw std::domain_error("tau: pole at j == k or l == k");
  Rational r(mpz_class(j - k + l), mpz_class((j - k) * (l - k)));
  r.canonicalize();
  return r;
}

long Sextuple::momentum() const { return long(j[0]) - j[1] + j[2] - j[3] + j[4] - j[5]; }

long Sextuple::divisor() const {
  long d = 0;
  for (int i = 0; i < 6; ++i) d += (i % 2 == 0 ? 1 : -1) * long(j[i]) * j[i];
  return d;
}

bool Sextuple::nonzero_entries() const {
  return std::none_of(j.begin(), j.end(), [](int x) { return x == 0; });
}

bool Sextuple::in_delta_tilde() const { return nonzero_entries() && momentum() == 0 && divisor() != 0; }

bool Sextuple::in_resonant() const {
  if (!nonzero_entries() || momentum() != 0 || divisor() != 0) return false;
  for (int a = 0; a < 6; a += 2)
    for (int b = 1; b < 6; b += 2)
      if (j[a] == j[b]) return false;
  return true;
}

std::array<long, 6> Sextuple::rearranged() const {
  std::array<long, 6> a;
  for (int i = 0; i < 6; ++i) a[i] = std::labs(j[i]);
  std::sort(a.begin(), a.end(), std::greater<>());
  return a;
}

Monomial Sextuple::monomial() const { return Monomial({j[0], j[2], j[4]}, {j[1], j[3], j[5]}); }

Sextuple Sextuple::from_monomial(const Monomial& m) {
  if (m.r() != 3) throw std::invalid_argument("sextuple needs a degree-six monomial");
  const auto v = m.interleaved();
  return Sextuple{{v[0], v[1], v[2], v[3], v[4], v[5]}};
}

PolyHamiltonian build_K(int truncation) {
  PolyHamiltonian k(truncation);
  for (int a = -truncation; a <= truncation; ++a) {
    for (int b = -truncation; b <= truncation; ++b) {
      if (a == 0 || b == 0 || a == b) continue;
      const long diff = long(a) - b;
      const Rational c = make_rational(-(2L * a - b), 8 * diff * diff);
      if (sgn(c) == 0) continue;
      k.add_term(Monomial({a, a, b}, {a, a, b}), ExactCoeff::real(c, 2));
    }
  }
  return k;
}

std::vector<Sextuple> enumerate_resonant(int truncation) {
  std::map<std::pair<long, long>, std::vector<Ints>> groups;
  const int n = truncation;
  for (int a = -n; a <= n; ++a)
    for (int b = a; b <= n; ++b)
      for (int c = b; c <= n; ++c) {
        if (a == 0 || b == 0 || c == 0) continue;
        groups[{long(a) + b + c, long(a) * a + long(b) * b + long(c) * c}].push_back({a, b, c});
      }
  std::vector<Monomial> monos;
  for (const auto& [key, g] : groups) {
    for (const auto& p : g)
      for (const auto& q : g) {
        if (p == q) continue;
        bool disjoint = true;
        for (int x : p)
          if (count_of(q, x) > 0) disjoint = false;
        if (disjoint) monos.emplace_back(p, q);
      }
  }
  std::sort(monos.begin(), monos.end());
  std::vector<Sextuple> out;
  out.reserve(monos.size());
  for (const auto& m : monos) out.push_back(Sextuple::from_monomial(m));
  return out;
}

R6Split split_R6(const PolyHamiltonian& r6) {
  R6Split s{PolyHamiltonian(r6.truncation()), PolyHamiltonian(r6.truncation()), PolyHamiltonian(r6.truncation())};
  r6.for_each_term([&](const Monomial& m, const ExactCoeff& c) {
    if (is_normal_form(m))
      s.K.add_term(m, c);
    else if (m.square_divisor() == 0)
      s.Ktilde.add_term(m, c);
    else
      s.Qtilde.add_term(m, c);
  });
  return s;
}

Rational nine_term_tau_sum(const Sextuple& s) {
  Rational total = 0;
  const int odd[3] = {s.j[0], s.j[2], s.j[4]};
  const int even[3] = {s.j[1], s.j[3], s.j[5]};
  for (int a = 0; a < 3; ++a)
    for (int c = a + 1; c < 3; ++c)
      for (int b : even) total += tau(odd[a], b, odd[c]);
  return total;
}

KtildeReport verify_Ktilde_zero(const PolyHamiltonian& r6) {
  KtildeReport report;
  report.truncation = r6.truncation();
  const auto resonant = enumerate_resonant(r6.truncation());
  report.resonant_monomials = resonant.size();
  std::set<Monomial> listed;
  for (const auto& s : resonant) {
    const Monomial m = s.monomial();
    listed.insert(m);
    const ExactCoeff c = r6.coefficient(m);
    if (!c.is_zero()) report.nonzero.push_back({m, c});
    const TriplePair p = make_triple_pair({s.j[0], s.j[2], s.j[4]}, {s.j[1], s.j[3], s.j[5]});
    if (sgn(verify_lemma_appendix(p).II) != 0 || sgn(nine_term_tau_sum(s)) != 0) report.tau_sum_failures.push_back(s);
  }
  split_R6(r6).Ktilde.for_each_term([&](const Monomial& m, const ExactCoeff&) {
    if (!listed.count(m)) ++report.unlisted_terms;
  });
  return report;
}

KtildeReport verify_Ktilde_zero(int truncation, int jobs) { return verify_Ktilde_zero(compute_R6(truncation, jobs)); }

PolyHamiltonian build_F6(const PolyHamiltonian& qtilde) {
  PolyHamiltonian f(qtilde.truncation());
  qtilde.for_each_term([&](const Monomial& m, const ExactCoeff& c) {
    const long d = m.square_divisor();
    if (d == 0) throw std::logic_error("non-resonant part contains a zero-divisor term " + m.to_string());
    f.add_term(m, c.times_i() * make_rational(1, d));
  });
  return f;
}

PolyHamiltonian build_F6(int truncation, int jobs) {
  return build_F6(split_R6(compute_R6(truncation, jobs)).Qtilde);
}

Sextuple normalize_sextuple(const Sextuple& t) {
  auto by_abs = [](int a, int b) { return std::abs(a) != std::abs(b) ? std::abs(a) > std::abs(b) : a > b; };
  std::array<int, 3> odd{t.j[0], t.j[2], t.j[4]}, even{t.j[1], t.j[3], t.j[5]};
  std::sort(odd.begin(), odd.end(), by_abs);
  std::sort(even.begin(), even.end(), by_abs);
  if (std::abs(even[0]) > std::abs(odd[0])) std::swap(odd, even);
  return Sextuple{{odd[0], even[0], odd[1], even[1], odd[2], even[2]}};
}

SextupleReport sextuple_bound_check(const Sextuple& t) {
  if (!t.in_delta_tilde()) throw std::invalid_argument("sextuple is not in the non-resonant sextuple set");
  const Sextuple n = normalize_sextuple(t);
  const auto star = n.rearranged();
  const long d = n.divisor();
  BigInt rest = 1;
  for (int i = 1; i < 6; ++i) rest *= star[i];
  const BigInt lead = BigInt(star[0]) * star[0] * star[0];
  SextupleReport r{n, d, SextupleCase::Bounded, Rational(lead, 100 * rest * rest), true};
  r.lower_bound.canonicalize();
  const bool excluded = n.j[0] == n.j[1] && BigInt(star[0]) > 100 * BigInt(star[2]) * star[2];
  if (excluded) {
    r.kind = SextupleCase::Excluded;
  } else {
    r.bound_holds = 100 * BigInt(std::labs(d)) * rest * rest >= lead;
  }
  return r;
}

ExactCoeff r6_coefficient(const Monomial& target) {
  if (target.r() != 3) throw std::invalid_argument("r6_coefficient needs a degree-six monomial");
  return ExactCoeff::real(r6_coefficient_real(target.plus(), target.minus()), 2);
}

ExactCoeff qtilde0_coefficient(const Quadruple& t, long n) {
  if (!t.in_delta()) throw std::invalid_argument("quadruple is not in the non-resonant set");
  if (n == 0 || n == t.j || n == t.k || n == t.l || n == t.m)
    throw std::invalid_argument("large mode must be nonzero and distinct from the quadruple");
  std::set<std::pair<long, long>> ac{{t.j, t.l}, {t.l, t.j}}, bd{{t.k, t.m}, {t.m, t.k}};
  Rational total = 0;
  for (const auto& [a, c] : ac)
    for (const auto& [b, d] : bd) total += 4 * tau(a, n, b) - tau(a, n, c) - tau(b, n, d);
  return ExactCoeff::real(total / 16, 2);
}

Qtilde0Report build_Qtilde0_crosscheck(const PolyHamiltonian& qtilde, long n_min) {
  if (n_min <= 100) throw std::invalid_argument("n_min must exceed 100 so that some small quadruple is in range");
  Qtilde0Report report;
  const int box = qtilde.truncation();
  report.truncation = box;
  report.n_min = n_min;

  for (const Quadruple& t : canonical_quadruples(box)) {
    const long small = std::max({std::abs(t.j), std::abs(t.k), std::abs(t.l), std::abs(t.m)});
    for (int n = -box; n <= box; ++n) {
      if (n == 0 || n == t.j || n == t.k || n == t.l || n == t.m) continue;
      const Monomial mono({t.j, t.l, n}, {t.k, t.m, n});
      const ExactCoeff formula = qtilde0_coefficient(t, n);
      const ExactCoeff extracted = qtilde.coefficient(mono);
      ++report.box_terms;
      if (std::labs(n) > 100 * small * small) ++report.box_large_n;
      if (t.j == t.l || t.k == t.m) ++report.box_symmetric;
      if (!(formula == extracted)) report.mismatches.push_back({t, n, formula, extracted});
    }
  }

  int small_bound = 1;
  while (small_bound < 3 && 100L * (small_bound + 1) * (small_bound + 1) < n_min) ++small_bound;
  for (const Quadruple& t : canonical_quadruples(small_bound)) {
    for (long mag : {n_min, n_min + 1, 10 * n_min}) {
      for (long n : {mag, -mag}) {
        const Monomial mono({t.j, t.l, int(n)}, {t.k, t.m, int(n)});
        const ExactCoeff formula = qtilde0_coefficient(t, n);
        const ExactCoeff extracted = r6_coefficient(mono);
        ++report.synthetic_terms;
        if (!(formula == extracted)) report.mismatches.push_back({t, n, formula, extracted});
        for (auto [a, b] : {std::pair{t.j, t.k}, {t.l, t.k}, {t.j, t.m}, {t.l, t.m}, {t.j, t.l}, {t.k, t.m}}) {
          ++report.tau_checked;
          if (!tau_factor_bounded(a, n, b)) ++report.tau_violations;
        }
      }
    }
  }
  return report;
}

Qtilde0Report build_Qtilde0_crosscheck(int truncation, long n_min, int jobs) {
  return build_Qtilde0_crosscheck(split_R6(compute_R6(truncation, jobs)).Qtilde, n_min);
}

TauBoundSweep tau_bound_sweep(int small_bound, long n_max) {
  if (small_bound < 1) throw std::invalid_argument("small_bound must be positive");
  TauBoundSweep sweep;
  sweep.small_bound = small_bound;
  sweep.n_max = n_max;
  const long n_lo = 100L * small_bound * small_bound + 1;
  for (int a = -small_bound; a <= small_bound; ++a) {
    for (int b = -small_bound; b <= small_bound; ++b) {
      if (a == 0 || b == 0) continue;
      ++sweep.pairs;
      for (long m = n_lo; m <= n_max; ++m) {
        for (long n : {m, -m}) {
          ++sweep.checked;
          if (!tau_factor_bounded(a, n, b)) ++sweep.violations;
        }
      }
    }
  }
  return sweep;
}

}  // namespace nflab

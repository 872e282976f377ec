#include "nflab/nf4.hpp"
#include "nflab/nf6.hpp"
#include "nflab/sweeps.hpp"
#include "nflab/verify.hpp"

#include "oracles.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace nflab;

TEST_CASE("divisor bound examples") {
  const DivisorReport r = divisor_bound_check({3, 1, 2, 4});
  CHECK(r.divisor == oracle::divisor_3124);
  CHECK(r.lower_bound == doctest::Approx(oracle::bound_3124).epsilon(1e-15));
  CHECK(r.bound_holds);
  CHECK(r.factorization_holds);
  CHECK(divisor_csv_row(r).rfind("3,1,2,4,-4,", 0) == 0);
  CHECK(divisor_csv_header() == "j,k,l,m,divisor,bound");

  CHECK_THROWS_AS(divisor_bound_check({2, 1, 1, 2}), std::invalid_argument);  // j == m
  CHECK_THROWS_AS(divisor_bound_check({1, 1, 2, 2}), std::invalid_argument);  // j == k
  CHECK_THROWS_AS(divisor_bound_check({1, 2, 3, 4}), std::invalid_argument);  // momentum
  CHECK_THROWS_AS(divisor_bound_check({0, 1, 2, 1}), std::invalid_argument);

  CHECK(Quadruple{5, -3, 1, 9}.rearranged() == std::array<long, 4>{9, 5, 3, 1});
}

TEST_CASE("divisor bound on small boxes") {
  std::size_t seen = 0;
  const SweepResult s = divisor_sweep_exhaustive(8, 1, [&](const DivisorReport& r) {
    ++seen;
    CHECK(r.divisor != 0);
    CHECK(std::abs(double(r.divisor)) >= r.lower_bound * (1 - 1e-12));
  });
  CHECK(s.ok());
  CHECK(s.checked == seen);
  CHECK(seen > 0);
}

TEST_CASE("order-four generator") {
  const PolyHamiltonian f = build_F4(4);
  CHECK(f.coefficient(Monomial({2, 3}, {1, 4})) ==
        ExactCoeff::imag(make_rational(oracle::F4_2314_im_num, oracle::F4_2314_im_den), 1));
  CHECK(f.is_real_valued());
  CHECK(f.all_zero_momentum());
  CHECK(f.homogeneous_degree() == 4);
  f.for_each_term([](const Monomial& m, const ExactCoeff& c) {
    CHECK_FALSE(is_normal_form(m));
    CHECK(c.is_imaginary());
  });
  CHECK_THROWS_AS(build_F4(0), std::invalid_argument);

  CHECK(dump_poly_json(build_F4(3), 1) == testing_support::read_file(oracle::golden("F4_M3.json")));

  for (int m : {1, 2, 4, 8, 12}) {
    const QuarticGenerators g = build_quartic_generators(m);
    CHECK(check_homological_order4(g).passed);
    CHECK(g.B + g.Q == build_G(m));
  }
}

TEST_CASE("degree-six remainder") {
  const R6Parts parts = compute_R6_parts(4);
  CHECK(parts.total.homogeneous_degree() == 6);
  CHECK(parts.total.all_zero_momentum());
  CHECK(parts.total.is_real_valued());
  CHECK(parts.total.truncation() == 4);
  CHECK(check_BF_closed_form(parts).passed);
  CHECK(compute_R6(4, 2) == parts.total);

  const R6Split split = split_R6(parts.total);
  CHECK(split.K == build_K(4));
  CHECK(split.K + split.Ktilde + split.Qtilde == parts.total);

  CHECK(dump_poly_json(compute_R6(3), 1) == testing_support::read_file(oracle::golden("R6_M3.json")));

  // the Galerkin remainder drops contractions outside the box, so it differs near the edge
  const PolyHamiltonian galerkin = compute_R6_galerkin(4);
  CHECK_FALSE(galerkin == parts.total);
  CHECK(galerkin.restricted(1) == parts.total.restricted(1));

  // independent per-monomial contraction on a sample of remainder terms
  nflab::CounterRng rng(3);
  std::vector<Monomial> monos;
  parts.total.for_each_term([&](const Monomial& m, const ExactCoeff&) { monos.push_back(m); });
  for (int i = 0; i < 25; ++i) {
    const Monomial& m = monos[std::size_t(rng.uniform_int(0, long(monos.size()) - 1))];
    CHECK(r6_coefficient(m) == parts.total.coefficient(m));
  }
}

TEST_CASE("coefficient audits") {
  const QuarticGenerators g = build_quartic_generators(8);
  const AuditResult b = coefficient_growth_audit(g.B, AuditShape::symmetric(0.5));
  CHECK(b.constant == doctest::Approx(oracle::audit_B_M8).epsilon(1e-10));
  CHECK(b.constant <= 1.0);
  const AuditResult f = coefficient_growth_audit(g.F, AuditShape{1.5, 0.5, false});
  CHECK(f.constant == doctest::Approx(oracle::audit_F_M8).epsilon(1e-10));
  CHECK(f.constant <= 1.0 / (2 * oracle::pi));
  CHECK(f.terms == g.F.size());
  CHECK(f.worst.has_value());

  const AuditResult zero = coefficient_growth_audit(PolyHamiltonian(3), Rational(1, 2));
  CHECK(zero.constant == 0.0);
  CHECK_FALSE(zero.worst.has_value());

  const AuditResult r6 = coefficient_growth_audit(compute_R6(8), AuditShape::symmetric(0.5));
  CHECK(r6.constant == doctest::Approx(oracle::audit_R6_M8).epsilon(1e-10));
  CHECK(r6.terms == oracle::R6_terms_M8);
}

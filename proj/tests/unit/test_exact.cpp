#include "nflab/exact.hpp"
#include "nflab/parallel.hpp"
#include "nflab/rng.hpp"

#include <doctest.h>

#include <cstdlib>
#include <numbers>
#include <set>

using namespace nflab;

TEST_CASE("rationals") {
  CHECK(make_rational(6, -4) == Rational(-3, 2));
  CHECK_THROWS_AS(make_rational(1, 0), std::domain_error);
  CHECK(parse_rational("-10/4") == Rational(-5, 2));
  CHECK(parse_rational("7") == Rational(7));
  CHECK_THROWS_AS(parse_rational("1/x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("3/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK(to_string(Rational(-3, 7)) == "-3/7");
}

TEST_CASE("exact coefficient arithmetic") {
  const ExactCoeff a(Rational(1, 2), Rational(-1, 3), 1);
  const ExactCoeff b(Rational(1, 4), Rational(1), 1);
  CHECK(a + b == ExactCoeff(Rational(3, 4), Rational(2, 3), 1));
  CHECK(a.conj() == ExactCoeff(Rational(1, 2), Rational(1, 3), 1));
  CHECK(a.times_i() == ExactCoeff(Rational(1, 3), Rational(1, 2), 1));
  CHECK((a * b).pi_power() == 2);
  CHECK(a * b == ExactCoeff(Rational(1, 8) + Rational(1, 3), Rational(1, 2) - Rational(1, 12), 2));
  CHECK((a - a).is_zero());
  CHECK((a - a).pi_power() == 0);
  CHECK(a * Rational(0) == ExactCoeff());

  // zero absorbs any pi power, nonzero mismatches throw
  CHECK(ExactCoeff() + a == a);
  CHECK_THROWS_AS(a + ExactCoeff::real(1, 2), std::domain_error);
  CHECK_THROWS_AS(ExactCoeff(1, 0, -1), std::domain_error);

  const auto z = ExactCoeff::imag(Rational(-1, 4), 1).to_complex();
  CHECK(z.real() == 0.0);
  CHECK(z.imag() == doctest::Approx(-1.0 / (4 * std::numbers::pi)).epsilon(1e-15));
  CHECK(ExactCoeff::real(3, 0).abs() == 3.0);
  CHECK(ExactCoeff::real(1, 0).norm_sq_rational() == 1);
}

TEST_CASE("counter rng") {
  // first output of SplitMix64 seeded with 0
  CounterRng r0(0);
  CHECK(r0.next() == 0xE220A8397B1DCDAFULL);
  CHECK(r0.counter() == 1);

  CounterRng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());

  CounterRng s = CounterRng(42).stream(3), t = CounterRng(42).stream(3), u = CounterRng(42).stream(4);
  CHECK(s.next() == t.next());
  CHECK(s.next() != u.next());

  CounterRng r(5);
  std::set<long> seen;
  for (int i = 0; i < 2000; ++i) {
    const long v = r.uniform_int(-3, 3);
    CHECK(v >= -3);
    CHECK(v <= 3);
    seen.insert(v);
    const double x = r.uniform();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
  CHECK(seen.size() == 7);
  CHECK_THROWS_AS(r.uniform_int(2, 1), std::invalid_argument);
}

TEST_CASE("jobs resolution and chunking") {
  CHECK(resolve_jobs(3) == 3);
  ::setenv("NF_LAB_JOBS", "4", 1);
  CHECK(resolve_jobs(0) == 4);
  ::setenv("NF_LAB_JOBS", "junk", 1);
  CHECK(resolve_jobs(0) == 1);
  ::unsetenv("NF_LAB_JOBS");
  CHECK(resolve_jobs(0) == 1);

  for (int chunks : {1, 2, 3, 7}) {
    std::vector<int> hits(100, 0);
    parallel_chunks(100, chunks, [&](int, std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) ++hits[i];
    });
    for (int h : hits) CHECK(h == 1);
  }
  CHECK_THROWS_AS(parallel_chunks(10, 2, [](int c, std::size_t, std::size_t) {
                    if (c == 1) throw std::runtime_error("chunk");
                  }),
                  std::runtime_error);
}

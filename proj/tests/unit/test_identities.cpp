#include "nflab/identities.hpp"
#include "nflab/rng.hpp"
#include "nflab/verify.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <set>

using namespace nflab;

namespace {

using T3 = std::array<long, 3>;

T3 sorted(T3 t) {
  std::sort(t.begin(), t.end());
  return t;
}

// Integer entries (zero included), one key per orbit under swapping the triples and
// (unless positive) global negation.
std::set<std::pair<T3, T3>> brute_force_pairs(int bound, bool positive) {
  std::set<std::pair<T3, T3>> keys;
  const long lo = positive ? 1 : -bound;
  std::vector<T3> all;
  for (long a = lo; a <= bound; ++a)
    for (long b = lo; b <= bound; ++b)
      for (long c = lo; c <= bound; ++c)
        if (a <= b && b <= c) all.push_back({a, b, c});
  for (const auto& x : all)
    for (const auto& y : all) {
      if (x[0] + x[1] + x[2] != y[0] + y[1] + y[2]) continue;
      if (x[0] * x[0] + x[1] * x[1] + x[2] * x[2] != y[0] * y[0] + y[1] * y[1] + y[2] * y[2]) continue;
      bool shared = false;
      for (long u : x)
        for (long v : y) shared = shared || u == v;
      if (shared) continue;
      std::vector<std::pair<T3, T3>> orbit{{x, y}, {y, x}};
      if (!positive) {
        const T3 nx = sorted({-x[0], -x[1], -x[2]}), ny = sorted({-y[0], -y[1], -y[2]});
        orbit.push_back({nx, ny});
        orbit.push_back({ny, nx});
      }
      keys.insert(*std::min_element(orbit.begin(), orbit.end()));
    }
  return keys;
}

TriplePair rational_pair(const std::array<Rational, 3>& x, const std::array<Rational, 3>& y) { return {x, y}; }

}  // namespace

TEST_CASE("mu and tau") {
  CHECK(mu(1, 2, 5) == make_rational(oracle::mu_125_num, oracle::mu_125_den));
  CHECK(mu(1, 2, 5) == mu(5, 2, 1));
  CHECK(tau(Rational(2), Rational(1), Rational(3)) == oracle::tau_213);
  CHECK_THROWS_AS(mu(2, 2, 5), std::domain_error);
  CHECK_THROWS_AS(tau(Rational(1), Rational(5), Rational(5)), std::domain_error);

  // translation invariance of mu, tau(x+t, y+t, z+t) = tau(x, y, z) + t mu(x, y, z)
  CounterRng rng(17);
  for (int i = 0; i < 300; ++i) {
    const Rational x = make_rational(rng.uniform_int(-30, 30), rng.uniform_int(1, 7));
    const Rational y = make_rational(rng.uniform_int(-30, 30), rng.uniform_int(1, 7));
    const Rational z = make_rational(rng.uniform_int(-30, 30), rng.uniform_int(1, 7));
    const Rational t = make_rational(rng.uniform_int(-30, 30), rng.uniform_int(1, 7));
    if (x == y || z == y) continue;
    CHECK(mu(x + t, y + t, z + t) == mu(x, y, z));
    CHECK(tau(x + t, y + t, z + t) == tau(x, y, z) + t * mu(x, y, z));
  }
}

TEST_CASE("nine-term sums") {
  const TriplePair p = make_triple_pair({1, 5, 6}, {2, 3, 7});
  const LemmaSums s = verify_lemma_appendix(p);
  CHECK(s.I == 0);
  CHECK(s.II == 0);
  CHECK(identities_csv_row(p, s) == "1,5,6,2,3,7,0,0");
  CHECK(identities_csv_header() == "x1,x2,x3,y1,y2,y3,I,II");

  CHECK(violated_hypothesis(make_triple_pair({1, 5, 6}, {1, 3, 8})) == Hypothesis::Disjoint);
  CHECK(violated_hypothesis(make_triple_pair({1, 5, 6}, {2, 3, 8})) == Hypothesis::EqualSums);
  CHECK(violated_hypothesis(make_triple_pair({1, 5, 6}, {2, 4, 6})) == Hypothesis::Disjoint);
  CHECK(violated_hypothesis(make_triple_pair({1, 5, 6}, {3, 4, 5})) == Hypothesis::Disjoint);
  CHECK(violated_hypothesis(make_triple_pair({1, 5, 7}, {2, 3, 8})) == Hypothesis::EqualSquareSums);
  try {
    verify_lemma_appendix(make_triple_pair({1, 5, 7}, {2, 3, 8}));
    FAIL("expected a hypothesis violation");
  } catch (const HypothesisViolation& e) {
    CHECK(e.which() == Hypothesis::EqualSquareSums);
  }

  // II(p + t) = II(p) + t I(p) on arbitrary pole-free pairs
  CounterRng rng(23);
  for (int i = 0; i < 200; ++i) {
    std::array<Rational, 3> x, y;
    for (auto& v : x) v = make_rational(rng.uniform_int(-20, 20), rng.uniform_int(1, 4));
    for (auto& v : y) v = make_rational(rng.uniform_int(-20, 20), rng.uniform_int(1, 4));
    const TriplePair q = rational_pair(x, y);
    if (violated_hypothesis(q) == Hypothesis::Disjoint) continue;
    const Rational t = make_rational(rng.uniform_int(-9, 9), rng.uniform_int(1, 5));
    const LemmaSums a = nine_term_sums(q), b = nine_term_sums(translated(q, t));
    CHECK(b.I == a.I);
    CHECK(b.II == a.II + t * a.I);
  }
}

TEST_CASE("centered pairs") {
  const TriplePair c = make_triple_pair({1, -3, 2}, {-1, 3, -2});
  const TripleInvariants inv = triple_invariants(c);
  CHECK(inv.N == oracle::centered_N);
  CHECK(inv.X == oracle::centered_X);
  CHECK(intermediate_identities(c).all_hold());
  CHECK(denominator_and_row_sums(c).all_hold());
  CHECK(intermediate_identities(c).first_failure().empty());

  const TriplePair p = make_triple_pair({1, 5, 6}, {2, 3, 7});
  const TriplePair pc = centered(p);
  CHECK(pc.x[0] + pc.x[1] + pc.x[2] == 0);
  CHECK(translated(pc, 4) == p);
  CHECK(intermediate_identities(pc).all_hold());
  CHECK(denominator_and_row_sums(pc).all_hold());
  CHECK_THROWS_AS(triple_invariants(p), std::invalid_argument);
  CHECK_THROWS_AS(centered(make_triple_pair({1, 5, 6}, {2, 3, 8})), std::invalid_argument);
}

TEST_CASE("integer pair enumeration") {
  for (int bound : {7, 10}) {
    const auto pairs = enumerate_triple_pairs(bound);
    const auto oracle_keys = brute_force_pairs(bound, false);
    CHECK(pairs.size() == oracle_keys.size());
    CHECK(pairs.size() == (bound == 7 ? oracle::triple_pairs_bound7 : oracle::triple_pairs_bound10));
    for (const auto& p : pairs) {
      CHECK(verify_lemma_appendix(p).vanish());
      CHECK(p.x[0] + p.x[1] + p.x[2] >= 0);
    }
    CHECK(std::is_sorted(pairs.begin(), pairs.end(), [](const TriplePair& a, const TriplePair& b) {
      return std::tie(a.x, a.y) < std::tie(b.x, b.y);
    }));
  }
  const auto seven = enumerate_triple_pairs(7);
  CHECK(std::find(seven.begin(), seven.end(), make_triple_pair({1, 5, 6}, {2, 3, 7})) != seven.end());
  CHECK(enumerate_triple_pairs(10, false, 3) == enumerate_triple_pairs(10));

  const auto positive6 = enumerate_triple_pairs(6, true);
  CHECK(positive6.size() == oracle::triple_pairs_positive6);
  CHECK(brute_force_pairs(6, true).size() == oracle::triple_pairs_positive6);
  CHECK(positive6.front() == make_triple_pair({1, 4, 4}, {2, 2, 5}));
  // no positive pair with pairwise distinct entries below 7
  for (const auto& p : positive6) CHECK((p.x[1] == p.x[2] || p.y[0] == p.y[1]));
  CHECK(brute_force_pairs(7, true).size() == enumerate_triple_pairs(7, true).size());
  CHECK_THROWS_AS(enumerate_triple_pairs(0), std::invalid_argument);
}

TEST_CASE("random rational pairs") {
  CounterRng rng(5);
  for (int i = 0; i < 500; ++i) {
    const TriplePair p = random_rational_pair(rng);
    CHECK_FALSE(violated_hypothesis(p).has_value());
    CHECK(verify_lemma_appendix(p).vanish());
  }
  CHECK(check_appendix(12, 200, 9).passed);
}

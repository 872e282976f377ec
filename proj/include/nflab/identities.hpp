#pragma once

#include "nflab/exact.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nflab {

class CounterRng;

/// 1 / ((x - y)(z - y)). Throws std::domain_error when x == y or z == y.
Rational mu(const Rational& x, const Rational& y, const Rational& z);

/// (x - y + z) / ((x - y)(z - y)). Throws std::domain_error when x == y or z == y.
Rational tau(const Rational& x, const Rational& y, const Rational& z);

struct TriplePair {
  std::array<Rational, 3> x;
  std::array<Rational, 3> y;

  friend bool operator==(const TriplePair&, const TriplePair&) = default;
};

TriplePair make_triple_pair(const std::array<long, 3>& x, const std::array<long, 3>& y);

enum class Hypothesis { Disjoint, EqualSums, EqualSquareSums };

std::string to_string(Hypothesis h);

/// First violated hypothesis, if any.
std::optional<Hypothesis> violated_hypothesis(const TriplePair& p);

class HypothesisViolation : public std::invalid_argument {
 public:
  explicit HypothesisViolation(Hypothesis h)
      : std::invalid_argument("triple pair violates hypothesis: " + to_string(h)), which_(h) {}
  Hypothesis which() const { return which_; }

 private:
  Hypothesis which_;
};

struct LemmaSums {
  Rational I;
  Rational II;
  bool vanish() const { return sgn(I) == 0 && sgn(II) == 0; }
};

/// Nine-term sums over alpha < gamma in the x slots and beta in the y slots:
/// I of mu(x_a, y_b, x_c), II of tau(x_a, y_b, x_c). Throws HypothesisViolation.
LemmaSums verify_lemma_appendix(const TriplePair& p);

/// Same sums without checking hypotheses (pole guards still apply).
LemmaSums nine_term_sums(const TriplePair& p);

TriplePair translated(const TriplePair& p, const Rational& t);

/// Shifts both triples by minus their common mean. Requires equal sums.
TriplePair centered(const TriplePair& p);

struct TripleInvariants {
  Rational N;
  Rational X;
  Rational Y;
};

/// Requires a centered pair with equal square sums; std::invalid_argument otherwise.
TripleInvariants triple_invariants(const TriplePair& p);

struct IdentityCheck {
  std::string name;
  bool holds;
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;
  bool all_hold() const;
  /// Name of the first failing identity, empty when all hold.
  std::string first_failure() const;
};

/// Symmetric-function identities of a centered pair: e2 = -N/2, sum of squared
/// pair products = N^2/4, power sum 4 = N^2/2, power sum 3 = 3X, sum of cubed
/// pair products = 3X^2 - N^3/8 (and the y counterparts).
IdentityReport intermediate_identities(const TriplePair& p);

/// For a centered pair and each beta: prod_a (x_a - y_b) = X + N/2 y_b - y_b^3, and the
/// mu and tau row sums equal -3 y_b / D_b and (3 y_b^2 - N) / D_b.
/// Throws std::domain_error when some D_b vanishes.
IdentityReport denominator_and_row_sums(const TriplePair& p);

/// Integer pairs with entries in [-bound, bound] satisfying the lemma hypotheses,
/// one representative per class under permutations within a triple, swapping
/// the triples and global negation. Representatives have sorted triples, a
/// nonnegative common sum and the smaller triple first (lexicographically
/// smallest such form), and are returned in lexicographic order.
std::vector<TriplePair> enumerate_triple_pairs(int bound, bool positive_only = false, int jobs = 1);

/// Random rational pair satisfying the hypotheses: a centered triple, a second
/// centered triple from a rational point on the conic c^2 + cd + d^2 = a^2 + ab + b^2,
/// then a common random translation. Draws until the pair is disjoint.
TriplePair random_rational_pair(CounterRng& rng, long numerator_bound = 50, long denominator_bound = 12);

std::string identities_csv_header();
std::string identities_csv_row(const TriplePair& p, const LemmaSums& s);

}  // namespace nflab

#include "nflab/identities.hpp"

#include "nflab/parallel.hpp"
#include "nflab/rng.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace nflab {

namespace {

constexpr int kPairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};

Rational sum3(const std::array<Rational, 3>& v) { return v[0] + v[1] + v[2]; }
Rational sumsq3(const std::array<Rational, 3>& v) { return v[0] * v[0] + v[1] * v[1] + v[2] * v[2]; }

Rational random_rational(CounterRng& rng, long nb, long db) {
  return make_rational(rng.uniform_int(-nb, nb), rng.uniform_int(1, db));
}

using ITriple = std::array<long, 3>;

ITriple negated(const ITriple& t) { return {-t[2], -t[1], -t[0]}; }

}  // namespace

Rational mu(const Rational& x, const Rational& y, const Rational& z) {
  if (x == y || z == y) throw std::domain_error("mu: pole at x == y or z == y");
  return 1 / ((x - y) * (z - y));
}

Rational tau(const Rational& x, const Rational& y, const Rational& z) {
  if (x == y || z == y) throw std::domain_error("tau: pole at x == y or z == y");
  return (x - y + z) / ((x - y) * (z - y));
}

TriplePair make_triple_pair(const std::array<long, 3>& x, const std::array<long, 3>& y) {
  TriplePair p;
  for (int i = 0; i < 3; ++i) {
    p.x[i] = x[i];
    p.y[i] = y[i];
  }
  return p;
}

std::string to_string(Hypothesis h) {
  switch (h) {
    case Hypothesis::Disjoint: return "disjoint entries";
    case Hypothesis::EqualSums: return "equal sums";
    case Hypothesis::EqualSquareSums: return "equal square sums";
  }
  return "unknown";
}

std::optional<Hypothesis> violated_hypothesis(const TriplePair& p) {
  for (const auto& a : p.x)
    for (const auto& b : p.y)
      if (a == b) return Hypothesis::Disjoint;
  if (sum3(p.x) != sum3(p.y)) return Hypothesis::EqualSums;
  if (sumsq3(p.x) != sumsq3(p.y)) return Hypothesis::EqualSquareSums;
  return std::nullopt;
}

LemmaSums nine_term_sums(const TriplePair& p) {
  LemmaSums s{0, 0};
  for (const auto& ag : kPairs) {
    for (const auto& yb : p.y) {
      s.I += mu(p.x[ag[0]], yb, p.x[ag[1]]);
      s.II += tau(p.x[ag[0]], yb, p.x[ag[1]]);
    }
  }
  return s;
}

LemmaSums verify_lemma_appendix(const TriplePair& p) {
  if (auto h = violated_hypothesis(p)) throw HypothesisViolation(*h);
  return nine_term_sums(p);
}

TriplePair translated(const TriplePair& p, const Rational& t) {
  TriplePair q = p;
  for (auto& v : q.x) v += t;
  for (auto& v : q.y) v += t;
  return q;
}

TriplePair centered(const TriplePair& p) {
  if (sum3(p.x) != sum3(p.y)) throw std::invalid_argument("centered: triples have different sums");
  return translated(p, -sum3(p.x) / 3);
}

TripleInvariants triple_invariants(const TriplePair& p) {
  if (sgn(sum3(p.x)) != 0 || sgn(sum3(p.y)) != 0) throw std::invalid_argument("pair is not centered");
  const Rational n = sumsq3(p.x);
  if (n != sumsq3(p.y)) throw std::invalid_argument("pair has different square sums");
  return {n, p.x[0] * p.x[1] * p.x[2], p.y[0] * p.y[1] * p.y[2]};
}

bool IdentityReport::all_hold() const {
  return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.holds; });
}

std::string IdentityReport::first_failure() const {
  for (const auto& c : checks)
    if (!c.holds) return c.name;
  return {};
}

IdentityReport intermediate_identities(const TriplePair& p) {
  const TripleInvariants inv = triple_invariants(p);
  const Rational& n = inv.N;
  IdentityReport report;
  auto run = [&](const std::array<Rational, 3>& v, const Rational& prod, const std::string& tag) {
    Rational e2 = 0, e2sq = 0, p4 = 0, p3 = 0, e2cube = 0;
    for (const auto& ag : kPairs) {
      const Rational pp = v[ag[0]] * v[ag[1]];
      e2 += pp;
      e2sq += pp * pp;
      e2cube += pp * pp * pp;
    }
    for (const auto& a : v) {
      p3 += a * a * a;
      p4 += a * a * a * a;
    }
    report.checks.push_back({tag + ": e2 = -N/2", e2 == -n / 2});
    report.checks.push_back({tag + ": sum of squared pair products = N^2/4", e2sq == n * n / 4});
    report.checks.push_back({tag + ": power sum 4 = N^2/2", p4 == n * n / 2});
    report.checks.push_back({tag + ": power sum 3 = 3 * product", p3 == 3 * prod});
    report.checks.push_back(
        {tag + ": sum of cubed pair products = 3 * product^2 - N^3/8", e2cube == 3 * prod * prod - n * n * n / 8});
  };
  run(p.x, inv.X, "x");
  run(p.y, inv.Y, "y");
  return report;
}

IdentityReport denominator_and_row_sums(const TriplePair& p) {
  const TripleInvariants inv = triple_invariants(p);
  IdentityReport report;
  for (int b = 0; b < 3; ++b) {
    const Rational& y = p.y[b];
    const Rational d = inv.X + inv.N / 2 * y - y * y * y;
    if (sgn(d) == 0) throw std::domain_error("degenerate denominator X + N/2 y - y^3 = 0");
    const Rational prod = (p.x[0] - y) * (p.x[1] - y) * (p.x[2] - y);
    Rational mu_row = 0, tau_row = 0;
    for (const auto& ag : kPairs) {
      mu_row += mu(p.x[ag[0]], y, p.x[ag[1]]);
      tau_row += tau(p.x[ag[0]], y, p.x[ag[1]]);
    }
    const std::string tag = "beta=" + std::to_string(b + 1);
    report.checks.push_back({tag + ": denominator", prod == d});
    report.checks.push_back({tag + ": mu row sum", mu_row == -3 * y / d});
    report.checks.push_back({tag + ": tau row sum", tau_row == (3 * y * y - inv.N) / d});
  }
  return report;
}

std::vector<TriplePair> enumerate_triple_pairs(int bound, bool positive_only, int jobs) {
  if (bound < 1) throw std::invalid_argument("bound must be positive");
  const long lo = positive_only ? 1 : -bound;
  std::map<std::pair<long, long>, std::vector<ITriple>> groups;
  for (long a = lo; a <= bound; ++a)
    for (long b = a; b <= bound; ++b)
      for (long c = b; c <= bound; ++c) groups[{a + b + c, a * a + b * b + c * c}].push_back({a, b, c});

  std::vector<const std::vector<ITriple>*> work;
  for (const auto& [key, g] : groups)
    if (g.size() > 1) work.push_back(&g);

  auto disjoint = [](const ITriple& x, const ITriple& y) {
    for (long a : x)
      for (long b : y)
        if (a == b) return false;
    return true;
  };
  using IPair = std::pair<ITriple, ITriple>;
  const int chunks = std::max(1, resolve_jobs(jobs));
  std::vector<std::vector<IPair>> found(chunks);
  parallel_chunks(work.size(), chunks, [&](int chunk, std::size_t begin, std::size_t end) {
    for (std::size_t w = begin; w < end; ++w) {
      const auto& g = *work[w];
      for (const auto& x : g) {
        for (const auto& y : g) {
          if (x == y || !disjoint(x, y)) continue;
          if (x[0] + x[1] + x[2] < 0) continue;
          const IPair rep{x, y};
          IPair best = std::min(rep, IPair{y, x});
          if (!positive_only && x[0] + x[1] + x[2] == 0)
            best = std::min({best, IPair{negated(x), negated(y)}, IPair{negated(y), negated(x)}});
          if (best == rep) found[chunk].push_back(rep);
        }
      }
    }
  });
  std::vector<IPair> all;
  for (auto& f : found) all.insert(all.end(), f.begin(), f.end());
  std::sort(all.begin(), all.end());
  std::vector<TriplePair> out;
  out.reserve(all.size());
  for (const auto& [x, y] : all) out.push_back(make_triple_pair(x, y));
  return out;
}

TriplePair random_rational_pair(CounterRng& rng, long numerator_bound, long denominator_bound) {
  for (;;) {
    const Rational a = random_rational(rng, numerator_bound, denominator_bound);
    const Rational b = random_rational(rng, numerator_bound, denominator_bound);
    const Rational t = random_rational(rng, numerator_bound, denominator_bound);
    const Rational shift = random_rational(rng, numerator_bound, denominator_bound);
    const Rational u = -(2 * a + b + t * (a + 2 * b)) / (1 + t + t * t);
    const Rational c = a + u, d = b + t * u;
    TriplePair p;
    p.x = {a, b, -a - b};
    p.y = {c, d, -c - d};
    p = translated(p, shift);
    if (!violated_hypothesis(p)) return p;
  }
}

std::string identities_csv_header() { return "x1,x2,x3,y1,y2,y3,I,II"; }

std::string identities_csv_row(const TriplePair& p, const LemmaSums& s) {
  std::ostringstream os;
  for (const auto& v : p.x) os << to_string(v) << ',';
  for (const auto& v : p.y) os << to_string(v) << ',';
  os << to_string(s.I) << ',' << to_string(s.II);
  return os.str();
}

}  // namespace nflab

#include "nflab/verify.hpp"

#include "nflab/identities.hpp"
#include "nflab/parallel.hpp"
#include "nflab/rng.hpp"

#include <sstream>

namespace nflab {

nlohmann::ordered_json CheckResult::to_json() const {
  nlohmann::ordered_json j;
  j["name"] = name;
  j["passed"] = passed;
  j["detail"] = detail;
  return j;
}

namespace {

std::string first_term(const PolyHamiltonian& p) {
  std::string s;
  p.for_each_term([&](const Monomial& m, const ExactCoeff& c) {
    if (s.empty()) s = m.to_string() + " -> " + c.to_string();
  });
  return s;
}

CheckResult zero_check(const std::string& name, const PolyHamiltonian& residual, std::size_t compared) {
  CheckResult r{name, residual.empty(), ""};
  std::ostringstream os;
  os << compared << " terms, residual terms " << residual.size();
  if (!residual.empty()) os << ", first " << first_term(residual);
  r.detail = os.str();
  return r;
}

}  // namespace

CheckResult check_homological_order4(const QuarticGenerators& g) {
  const int m = g.F.truncation();
  const PolyHamiltonian residual = bracket(build_lambda(m), g.F) + g.Q;
  return zero_check("homological order 4", residual, g.F.size());
}

CheckResult check_homological_order6(const PolyHamiltonian& qtilde, const PolyHamiltonian& f6) {
  const PolyHamiltonian residual = bracket(build_lambda(f6.truncation()), f6) + qtilde;
  CheckResult r = zero_check("homological order 6", residual, f6.size());
  if (!f6.is_real_valued()) {
    r.passed = false;
    r.detail += ", generator not real-valued";
  }
  return r;
}

CheckResult check_K_match(const R6Split& split) {
  const PolyHamiltonian diff = split.K - build_K(split.K.truncation());
  return zero_check("K closed form", diff, split.K.size());
}

CheckResult check_BF_closed_form(const R6Parts& parts) {
  const PolyHamiltonian diff = parts.bf - closed_form_BF(parts.bf.truncation());
  return zero_check("{B,F} closed form", diff, parts.bf.size());
}

CheckResult check_Ktilde_zero(const KtildeReport& report) {
  CheckResult r{"Ktilde = 0", report.ok(), ""};
  std::ostringstream os;
  os << report.resonant_monomials << " resonant monomials, nonzero " << report.nonzero.size() << ", tau-sum failures "
     << report.tau_sum_failures.size() << ", unlisted " << report.unlisted_terms;
  if (!report.nonzero.empty())
    os << ", first " << report.nonzero.front().monomial.to_string() << " -> "
       << report.nonzero.front().coefficient.to_string();
  r.detail = os.str();
  return r;
}

CheckResult check_appendix(int bound, std::uint64_t random_pairs, std::uint64_t seed, int jobs) {
  const auto pairs = bound > 0 ? enumerate_triple_pairs(bound, false, jobs) : std::vector<TriplePair>{};
  std::size_t failures = 0, identity_failures = 0;
  std::string first;
  auto check = [&](const TriplePair& p, std::size_t& fail, std::size_t& ifail, std::string& note) {
    const LemmaSums s = verify_lemma_appendix(p);
    const LemmaSums shifted = verify_lemma_appendix(translated(p, Rational(7, 3)));
    if (!s.vanish() || !shifted.vanish()) {
      ++fail;
      if (note.empty()) note = identities_csv_row(p, s);
    }
    const TriplePair c = centered(p);
    const IdentityReport a = intermediate_identities(c), b = denominator_and_row_sums(c);
    if (!a.all_hold() || !b.all_hold()) {
      ++ifail;
      if (note.empty()) note = a.all_hold() ? b.first_failure() : a.first_failure();
    }
  };
  for (const auto& p : pairs) check(p, failures, identity_failures, first);

  const int chunks = resolve_jobs(jobs);
  std::vector<std::size_t> f(static_cast<std::size_t>(chunks)), fi(static_cast<std::size_t>(chunks));
  std::vector<std::string> notes(static_cast<std::size_t>(chunks));
  const CounterRng root(seed);
  parallel_chunks(random_pairs, chunks, [&](int c, std::size_t begin, std::size_t end) {
    const auto u = static_cast<std::size_t>(c);
    for (std::size_t i = begin; i < end; ++i) {
      CounterRng rng = root.stream(i);
      check(random_rational_pair(rng), f[u], fi[u], notes[u]);
    }
  });
  for (std::size_t c = 0; c < f.size(); ++c) {
    failures += f[c];
    identity_failures += fi[c];
    if (first.empty()) first = notes[c];
  }

  CheckResult r{"appendix identities", failures == 0 && identity_failures == 0, ""};
  std::ostringstream os;
  if (bound > 0) os << pairs.size() << " integer pairs (bound " << bound << "), ";
  os << random_pairs << " rational pairs, lemma failures "
     << failures << ", identity failures " << identity_failures;
  if (!first.empty()) os << ", first " << first;
  r.detail = os.str();
  return r;
}

CheckResult check_sweep(const std::string& name, const SweepResult& s) {
  CheckResult r{name, s.ok(), ""};
  std::ostringstream os;
  os << s.checked << " checked, " << s.excluded << " excluded, " << s.violations << " violations";
  if (s.factorization_failures) os << ", " << s.factorization_failures << " factorization failures";
  if (!s.first_violation.empty()) os << ", first " << s.first_violation;
  r.detail = os.str();
  return r;
}

CheckResult check_qtilde0(const Qtilde0Report& q) {
  CheckResult r{"Qtilde0 cross-check", q.ok(), ""};
  std::ostringstream os;
  os << q.box_terms << " box terms (" << q.box_large_n << " with large n), " << q.synthetic_terms
     << " synthetic terms, mismatches " << q.mismatches.size() << ", tau factors " << q.tau_checked
     << ", tau violations " << q.tau_violations;
  r.detail = os.str();
  return r;
}

CheckResult check_tau_bound(const TauBoundSweep& t) {
  CheckResult r{"tau bound", t.violations == 0 && t.checked > 0, ""};
  std::ostringstream os;
  os << t.pairs << " pairs, n up to " << t.n_max << ", " << t.checked << " checked, " << t.violations << " violations";
  r.detail = os.str();
  return r;
}

std::vector<CheckResult> verify_all(const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  const int m = opt.truncation;
  out.push_back(check_homological_order4(build_quartic_generators(m)));
  const R6Parts parts = compute_R6_parts(m, opt.jobs);
  out.push_back(check_BF_closed_form(parts));
  const R6Split split = split_R6(parts.total);
  out.push_back(check_K_match(split));
  out.push_back(check_Ktilde_zero(verify_Ktilde_zero(parts.total)));
  out.push_back(check_homological_order6(split.Qtilde, build_F6(split.Qtilde)));
  out.push_back(check_appendix(opt.appendix_bound, opt.random_pairs, opt.seed, opt.jobs));
  SweepResult div = divisor_sweep_exhaustive(opt.divisor_bound, opt.jobs);
  div.merge(divisor_sweep_random(opt.divisor_samples, opt.divisor_sample_max, opt.seed, opt.jobs));
  out.push_back(check_sweep("quartic divisor bound", div));
  SweepResult sext = sextuple_sweep_exhaustive(opt.sextuple_bound, opt.jobs);
  sext.merge(sextuple_sweep_random(opt.sextuple_samples, opt.sextuple_sample_max, opt.seed, opt.jobs));
  out.push_back(check_sweep("sextic divisor bound", sext));
  return out;
}

}  // namespace nflab

#pragma once

#include "nflab/nf4.hpp"
#include "nflab/nf6.hpp"
#include "nflab/sweeps.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace nflab {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;

  nlohmann::ordered_json to_json() const;
};

/// {Lambda, F} + Q == 0 term by term.
CheckResult check_homological_order4(const QuarticGenerators& g);

/// {Lambda, F6} + Qtilde == 0 and F6 real-valued.
CheckResult check_homological_order6(const PolyHamiltonian& qtilde, const PolyHamiltonian& f6);

/// Action part of the remainder equals build_K on the box.
CheckResult check_K_match(const R6Split& split);

/// {B, F} part equals closed_form_BF on the box.
CheckResult check_BF_closed_form(const R6Parts& parts);

CheckResult check_Ktilde_zero(const KtildeReport& report);

/// I = II = 0 on every enumerated integer pair up to bound and on random rational
/// pairs (bound 0 skips the enumeration); intermediate, denominator and row-sum
/// identities on centered pairs.
CheckResult check_appendix(int bound, std::uint64_t random_pairs, std::uint64_t seed, int jobs = 1);

CheckResult check_sweep(const std::string& name, const SweepResult& r);

CheckResult check_qtilde0(const Qtilde0Report& r);
CheckResult check_tau_bound(const TauBoundSweep& r);

struct VerifyOptions {
  int truncation = 8;
  int appendix_bound = 30;
  std::uint64_t random_pairs = 10'000;
  int divisor_bound = 20;
  std::uint64_t divisor_samples = 100'000;
  long divisor_sample_max = 10'000;
  int sextuple_bound = 8;
  std::uint64_t sextuple_samples = 100'000;
  long sextuple_sample_max = 100'000;
  std::uint64_t seed = 1;
  int jobs = 1;
};

/// Homological equations (orders 4 and 6), K match, {B,F} closed form, Ktilde = 0,
/// appendix identities and both divisor bounds.
std::vector<CheckResult> verify_all(const VerifyOptions& opt);

}  // namespace nflab

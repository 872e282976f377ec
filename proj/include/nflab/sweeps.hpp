#pragma once

#include "nflab/nf4.hpp"
#include "nflab/nf6.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace nflab {

struct SweepResult {
  std::uint64_t checked = 0;
  /// Tuples that fall in an excluded case of the bound (not counted as checked).
  std::uint64_t excluded = 0;
  std::uint64_t violations = 0;
  /// Quartic sweeps only: tuples where one of the two divisor factorizations fails.
  std::uint64_t factorization_failures = 0;
  /// Human-readable description of the first violation, empty when none.
  std::string first_violation;

  bool ok() const { return violations == 0 && factorization_failures == 0; }
  void merge(const SweepResult& other);
};

/// Every quadruple of the non-resonant set with entries in [-bound, bound].
/// on_report, when given, sees each report in a fixed order (single threaded).
SweepResult divisor_sweep_exhaustive(int bound, int jobs = 1,
                                     const std::function<void(const DivisorReport&)>& on_report = {});

/// Random quadruples with entries in [-max_entry, max_entry]: j, k, l uniform, m = j - k + l,
/// redrawn until the tuple lies in the non-resonant set.
SweepResult divisor_sweep_random(std::uint64_t samples, long max_entry, std::uint64_t seed, int jobs = 1);

/// Every sextuple of the non-resonant sextuple set with entries in [-bound, bound].
SweepResult sextuple_sweep_exhaustive(int bound, int jobs = 1);
SweepResult sextuple_sweep_random(std::uint64_t samples, long max_entry, std::uint64_t seed, int jobs = 1);

/// Omega_s bound over every zero-momentum tuple of length 2r with nonzero
/// entries in [-bound, bound], for each s.
SweepResult omega_sweep_exhaustive(int r, int bound, const std::vector<int>& s_values, int jobs = 1);

/// Random r in r_values, entries in [-max_entry, max_entry] with the last one fixed by momentum
/// (redrawn when it is zero or out of range), s uniform in s_values.
SweepResult omega_sweep_random(std::uint64_t samples, const std::vector<int>& r_values, long max_entry,
                               const std::vector<int>& s_values, std::uint64_t seed, int jobs = 1);

}  // namespace nflab

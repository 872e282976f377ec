#pragma once

#include "nflab/exact.hpp"
#include "nflab/flows.hpp"
#include "nflab/modes.hpp"
#include "nflab/poly.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nflab {

/// sum_i (-1)^(i+1) j_i |j_i|^(2s) for a zero-momentum tuple with 2s = two_s integral.
/// Throws std::invalid_argument for nonzero momentum or negative two_s.
BigInt omega_s_exact(const IndexTuple& t, int two_s);

/// Same sum in double precision; exact (then rounded) whenever 2s is an integer.
double omega_s(const IndexTuple& t, SobolevIndex s);

struct OmegaBoundReport {
  double lhs;
  double rhs;
  bool holds;
  /// True when the comparison was done in integers (integer s).
  bool exact;
};

/// |Omega_s| <= (2s+1) (2r)^(s+2) (j1*)^s (j2*)^s j3*. Requires zero momentum,
/// s >= 1 and r >= 2; std::invalid_argument otherwise.
OmegaBoundReport omega_bound_check(const IndexTuple& t, SobolevIndex s);

/// Random phases, amplitudes proportional to |j|^(-s-1), rescaled to ||q||_s = epsilon.
FourierState random_initial_data(int truncation, double s, double epsilon, std::uint64_t seed);

/// Random phases, amplitudes |j|^(-2), unit l2 norm: the probe state of the residual ladder.
FourierState residual_probe(int truncation, std::uint64_t seed);

/// d/dt ||p||_s^2 at t = 0 along the DNLS flow seen in the coordinates p = Psi^{-1}(q),
/// by a central difference of width h: evolve Psi(p) by +-h, pull back with the
/// flow of -F, difference the squared norms. Psi uses ceil(1/cfg.dt) fixed RK4
/// steps so that the pull-back is a smooth function of its input.
double norm_derivative(const FourierState& p, SobolevIndex s, const NumericPoly& f4, const FlowConfig& cfg,
                       double h);

struct DerivativeAudit {
  double s = 0.0;
  std::vector<double> amplitudes;
  std::vector<double> derivatives;
  /// ||lambda p0||_s
  std::vector<double> norms;
  /// Slope of log |derivative| against log amplitude.
  double slope = 0.0;
  /// max |derivative| / ||p||_s^6 over the ladder.
  double c3 = 0.0;
};

/// Runs norm_derivative on lambda * p0 for each amplitude, with F built at the
/// truncation of p0.
DerivativeAudit norm_derivative_audit(const FourierState& p0, SobolevIndex s, const FlowConfig& cfg,
                                      const std::vector<double>& amplitudes, double h = 1e-3);

struct StabilityRun {
  double s = 3.0;
  double epsilon = 0.2;
  int modes = 32;
  double horizon_exponent = 4.0;
  std::uint64_t seed = 7;
  double dt = 0.01;
  double threshold = 3.0;
  bool nonlinear = true;
  /// Steps allowed before the run is refused; 0 means unlimited.
  long step_budget = 2'000'000;
  int record_every = 100;
  Scheme scheme = Scheme::Rk4IntegratingFactor;

  double horizon() const;
  /// Throws std::invalid_argument for epsilon outside (0, 1), s < 0 and similar.
  void validate() const;
};

struct StabilityRow {
  double t;
  double norm_ratio;
  double mass_drift;
  double energy_drift;
};

struct StabilityReport {
  StabilityRun run;
  std::vector<StabilityRow> rows;
  double max_ratio = 0.0;
  long steps = 0;
  bool passed = false;
};

/// Evolves random_initial_data to t = epsilon^(-horizon_exponent) and records
/// ||u(t)||_s / epsilon, |mass drift| and relative energy drift. The energy drift
/// is relative to |H(0)|, or to sum |j| |q_j|^2 when H(0) is negligible on that
/// scale (symmetric data has Lambda = 0, so the linear flow has H(0) = 0). Throws
/// StepBudgetExceeded when the run needs more than step_budget steps.
StabilityReport stability_sweep(const StabilityRun& run);

struct LadderTrend {
  /// flags[i] is set when max ratio at the smaller epsilon[i+1] exceeds the one at
  /// epsilon[i] by more than tolerance (relative).
  std::vector<bool> flags;
  bool monotone() const;
};

/// Expects epsilons in decreasing order with matching max ratios.
LadderTrend ladder_trend(const std::vector<double>& epsilons, const std::vector<double>& max_ratios,
                         double tolerance = 0.05);

std::string stability_csv_header();
std::string stability_csv_row(const StabilityRow& r);

}  // namespace nflab

#pragma once

#include "nflab/modes.hpp"
#include "nflab/numeric_poly.hpp"
#include "nflab/poly.hpp"

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace nflab {

enum class Scheme { Rk4IntegratingFactor, Rk4Plain };

Scheme parse_scheme(const std::string& name);
std::string to_string(Scheme s);

struct FlowConfig {
  double dt = 1e-2;
  double t_end = 1.0;
  Scheme scheme = Scheme::Rk4IntegratingFactor;
  /// Step-halving control for time-one maps, l2 distance between refinements.
  double tolerance = 1e-12;
  double dt_min = 1e-6;
  /// Record channels every this many steps (the final time is always recorded).
  int record_every = 1;
  /// Keep a state snapshot every this many records; 0 keeps none.
  int snapshot_every = 0;
  std::vector<double> track_s;
  /// 0 means unlimited.
  long max_steps = 0;
  bool nonlinear = true;
  double blowup_factor = 1e3;

  /// Throws std::invalid_argument for dt <= 0, tolerance <= 0 and similar.
  void validate() const;
};

/// Numerical failures, reported with exit code 3 by the command line tool.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonConvergence : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class BlowUp : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class StepBudgetExceeded : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Classical RK4 for q' = X_F(q) with a fixed number of equal steps over [0, t].
FourierState flow_fixed_steps(const NumericPoly& f, const FourierState& q0, double t, long steps);

struct FlowResult {
  FourierState state;
  long steps;
  double last_change;
};

/// Time-t_end map of X_F. Starts from ceil(t_end / dt) steps and doubles the
/// step count until two successive results differ by less than the tolerance.
/// Throws NonConvergence once the step falls below dt_min.
FlowResult flow_time_one_detailed(const NumericPoly& f, const FourierState& q0, const FlowConfig& cfg);
FourierState flow_time_one(const NumericPoly& f, const FourierState& q0, const FlowConfig& cfg);
FourierState flow_time_one(const PolyHamiltonian& f, const FourierState& q0, const FlowConfig& cfg);

/// Increment d = X^t_F(base) - base, integrating d' = X_F(base + d) so that
/// rounding scales with |d| rather than |base|. Step doubling stops once two
/// refinements differ by less than cfg.tolerance * |d|.
FourierState flow_increment(const NumericPoly& f, const FourierState& base, const FlowConfig& cfg);

/// Galerkin DNLS right-hand side and energy on a de-aliased uniform grid.
///
/// With v = sum q_j e^{ijx} sampled on N >= 4M+1 points, the cubic term
/// W_j = [|v|^2 v]_j is exact, and q_j' = -i j^2 q_j - i j W_j / (2 pi).
/// Holds FFTW plans and scratch buffers: one stepper per thread.
class DnlsStepper {
 public:
  explicit DnlsStepper(int truncation, bool nonlinear = true);
  ~DnlsStepper();
  DnlsStepper(const DnlsStepper&) = delete;
  DnlsStepper& operator=(const DnlsStepper&) = delete;

  int truncation() const { return m_; }
  int grid_size() const { return n_; }

  /// -i j W_j / (2 pi); zero when the nonlinearity is disabled.
  FourierState nonlinear_term(const FourierState& q);

  /// G = 1/(4 pi N) sum_n |v_n|^4, exact on the grid.
  double quartic_energy(const FourierState& q);

  /// Lambda + G (Lambda alone when the nonlinearity is disabled).
  double hamiltonian(const FourierState& q);

  void step(FourierState& q, double h, Scheme scheme);

 private:
  void to_grid(const FourierState& q);
  FourierState linear_rotation(const FourierState& q, double t) const;

  int m_;
  int n_;
  bool nonlinear_;
  struct Plans;
  std::unique_ptr<Plans> plans_;
};

struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<FourierState> states;
  std::vector<double> snapshot_times;
  std::vector<double> mass;
  std::vector<double> momentum;
  std::vector<double> energy;
  std::vector<double> track_s;
  /// norms[i][k]: Sobolev norm of index track_s[i] at times[k].
  std::vector<std::vector<double>> norms;
  long steps = 0;
};

/// Integrates the truncated DNLS from 0 to cfg.t_end. Throws BlowUp when the
/// l2 norm exceeds blowup_factor times its initial value (or turns non-finite)
/// and StepBudgetExceeded when more than max_steps steps would be needed.
TrajectoryRecord dnls_evolve(const FourierState& q0, const FlowConfig& cfg);

std::string trajectory_csv_header(const TrajectoryRecord& r);
std::vector<std::string> trajectory_csv_rows(const TrajectoryRecord& r);

/// Normal-form generators and comparison polynomials for the residual check.
///
/// Quartic data (H, F) live at the dynamics truncation 3M so that every
/// degree-six term of H o Psi supported in the box |j| <= M is exact; the
/// order-six generator and K live in the box.
struct ResidualSetup {
  int box = 0;
  int dynamics_truncation = 0;
  int order = 4;
  std::shared_ptr<const NumericPoly> F4;
  std::shared_ptr<const NumericPoly> F6;
  std::shared_ptr<const NumericPoly> B;
  std::shared_ptr<const NumericPoly> K;
};

ResidualSetup make_residual_setup(int box, int order, int jobs = 1);

/// |H(Psi(q0)) - Lambda(q0) - B(q0)| for order 4 and
/// |H(Psi(Phi(q0))) - Lambda(q0) - B(q0) - K(q0)| for order 6, with q0 in the box.
/// Both flows run in increment form (flow_increment), so cfg.tolerance is relative
/// to the size of each displacement.
double transformed_hamiltonian_residual(const FourierState& q0, const ResidualSetup& setup, const FlowConfig& cfg);
double transformed_hamiltonian_residual(const FourierState& q0, int order, const FlowConfig& cfg, int jobs = 1);

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct ScalingReport {
  int order = 4;
  std::vector<double> lambdas;
  std::vector<double> residuals;
  double slope = 0.0;
};

/// Residuals at lambda * q0 for each lambda and the fitted slope.
ScalingReport residual_scaling(const FourierState& q0, const ResidualSetup& setup, const std::vector<double>& lambdas,
                               const FlowConfig& cfg, int jobs = 1);

}  // namespace nflab

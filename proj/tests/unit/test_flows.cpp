#include "nflab/flows.hpp"
#include "nflab/nf4.hpp"
#include "nflab/stability.hpp"

#include "oracles.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace nflab;
using testing_support::random_state;

namespace {

double max_mass_drift(const TrajectoryRecord& r) {
  double d = 0.0;
  for (double m : r.mass) d = std::max(d, std::abs(m - r.mass.front()));
  return d;
}

double max_energy_drift(const TrajectoryRecord& r) {
  double d = 0.0;
  for (double e : r.energy) d = std::max(d, std::abs(e - r.energy.front()));
  return d / std::abs(r.energy.front());
}

FlowConfig dnls_config(double dt, double t_end) {
  FlowConfig c;
  c.dt = dt;
  c.t_end = t_end;
  c.record_every = 100;
  return c;
}

}  // namespace

TEST_CASE("flow configuration") {
  FlowConfig c;
  CHECK_NOTHROW(c.validate());
  c.dt = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = FlowConfig{};
  c.tolerance = -1;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = FlowConfig{};
  c.track_s = {-1.0};
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  CHECK(parse_scheme("rk4-plain") == Scheme::Rk4Plain);
  CHECK(to_string(parse_scheme("rk4-integrating-factor")) == "rk4-integrating-factor");
  CHECK_THROWS_AS(parse_scheme("euler"), std::invalid_argument);
}

TEST_CASE("Hamiltonian flows of polynomials") {
  FlowConfig cfg;
  cfg.dt = 0.05;
  cfg.tolerance = 1e-12;
  const FourierState q = random_state(4, 2, 0.3);

  // empty generator gives the identity
  CHECK(l2_distance(flow_time_one(PolyHamiltonian(4), q, cfg), q) == 0.0);

  // Lambda rotates each mode by exp(-i j^2)
  const FourierState rot = flow_time_one(build_lambda(4), q, cfg);
  for (int j = -4; j <= 4; ++j)
    if (j != 0) CHECK(std::abs(rot[j] - std::exp(Complex(0, -double(j) * j)) * q[j]) < 1e-10);

  // B only rotates phases
  const FourierState b = flow_time_one(build_B(4), q, cfg);
  for (int j = -4; j <= 4; ++j)
    if (j != 0) CHECK(std::abs(std::abs(b[j]) - std::abs(q[j])) < 1e-11);

  // group property: the flow of -F undoes the flow of F
  const NumericPoly f(build_F4(4));
  const NumericPoly minus_f(ExactCoeff::real(-1) * build_F4(4));
  const FourierState there = flow_time_one(f, q, cfg);
  CHECK(l2_distance(flow_time_one(minus_f, there, cfg), q) < 1e-11);
  // half plus half equals one
  FlowConfig half = cfg;
  half.t_end = 0.5;
  CHECK(l2_distance(flow_time_one(f, flow_time_one(f, q, half), half), there) < 1e-11);

  // increment form agrees with the full map and stays small for small data
  CHECK(l2_distance(q + flow_increment(f, q, cfg), there) < 1e-11);
  const FourierState tiny = random_state(4, 2, 1e-4);
  const FourierState inc = flow_increment(f, tiny, cfg);
  CHECK(std::sqrt(mass(inc)) < 1e-9);
  CHECK(std::sqrt(mass(inc)) > 0);

  FlowConfig strict = cfg;
  strict.tolerance = 1e-300;
  strict.dt_min = 1e-3;
  CHECK_THROWS_AS(flow_time_one(f, q, strict), NonConvergence);
  CHECK_THROWS_AS(flow_increment(f, q, strict), NonConvergence);
  CHECK_THROWS_AS(flow_time_one(f, random_state(3, 1), cfg), std::invalid_argument);
}

TEST_CASE("DNLS right-hand side") {
  for (int m : {1, 4, 9}) {
    DnlsStepper st(m);
    CHECK(st.grid_size() >= 4 * m + 1);
    int n = st.grid_size();
    for (int p : {2, 3, 5})
      while (n % p == 0) n /= p;
    CHECK(n == 1);

    const NumericPoly g(build_G(m));
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const FourierState q = random_state(m, seed + 10 * m);
      CHECK(l2_distance(st.nonlinear_term(q), g.vector_field(q)) < 1e-12 * std::max(1.0, std::sqrt(mass(g.vector_field(q)))));
      CHECK(st.quartic_energy(q) == doctest::Approx(quartic_energy(q)).epsilon(1e-12));
      CHECK(st.hamiltonian(q) == doctest::Approx(coefficient_hamiltonian(q)).epsilon(1e-12));
    }
  }
  DnlsStepper linear(3, false);
  CHECK(linear.nonlinear_term(random_state(3, 1)).empty());
  CHECK_THROWS_AS(linear.nonlinear_term(random_state(2, 1)), std::invalid_argument);
}

TEST_CASE("plane wave") {
  const int k = 3;
  const double a = 0.5;
  FourierState q(4);
  q[k] = a * std::sqrt(2 * oracle::pi);  // u = A e^{ikx}
  const TrajectoryRecord r = dnls_evolve(q, dnls_config(1e-3, 10.0));
  const Complex exact = q[k] * std::exp(Complex(0, -oracle::plane_wave_frequency(k, a) * 10.0));
  CHECK(r.steps == 10000);
  FlowConfig keep = dnls_config(1e-3, 10.0);
  keep.snapshot_every = 50;  // counted in records
  const TrajectoryRecord s = dnls_evolve(q, keep);
  REQUIRE(s.snapshot_times == std::vector<double>{0.0, 5.0, 10.0});
  const FourierState& last = s.states.back();
  CHECK(std::abs(last[k] - exact) / std::abs(exact) < 1e-8);
  for (int j = -4; j <= 4; ++j)
    if (j != 0 && j != k) CHECK(std::abs(last[j]) < 1e-12);
}

TEST_CASE("conservation and convergence order") {
  const FourierState q0 = random_initial_data(16, 1.0, 0.5, 11);
  const TrajectoryRecord r = dnls_evolve(q0, dnls_config(1e-3, 10.0));
  CHECK(max_mass_drift(r) < 1e-9);
  CHECK(max_energy_drift(r) < 1e-8);
  CHECK(r.times.size() == r.mass.size());
  CHECK(r.times.size() == r.energy.size());
  CHECK(r.times.size() == r.momentum.size());
  CHECK(r.times.back() == 10.0);

  // Lambda alone is not conserved by the nonlinear flow
  double lambda_change = 0.0;
  for (double l : r.momentum) lambda_change = std::max(lambda_change, std::abs(l - r.momentum.front()));
  CHECK(lambda_change > 1e-6);

  std::vector<double> drifts;
  for (double dt : {2e-3, 1e-3, 5e-4}) drifts.push_back(max_energy_drift(dnls_evolve(q0, dnls_config(dt, 10.0))));
  for (std::size_t i = 0; i + 1 < drifts.size(); ++i) {
    const double ratio = drifts[i] / drifts[i + 1];
    CHECK(ratio >= 12.0);
    CHECK(ratio <= 20.0);
  }

  // linear flow preserves every Sobolev norm
  FlowConfig lin = dnls_config(1e-2, 5.0);
  lin.nonlinear = false;
  lin.track_s = {0.0, 1.0, 3.0};
  const TrajectoryRecord l = dnls_evolve(q0, lin);
  for (const auto& ch : l.norms)
    for (double v : ch) CHECK(std::abs(v / ch.front() - 1.0) < 1e-12);
  CHECK(trajectory_csv_header(l) == "time,mass,momentum,energy,norm_s=0,norm_s=1,norm_s=3");
  CHECK(trajectory_csv_rows(l).size() == l.times.size());
}

TEST_CASE("integration guards") {
  FlowConfig c = dnls_config(0.1, 50.0);
  c.scheme = Scheme::Rk4Plain;
  CHECK_THROWS_AS(dnls_evolve(random_state(16, 3), c), BlowUp);
  c = dnls_config(1e-3, 10.0);
  c.max_steps = 10;
  CHECK_THROWS_AS(dnls_evolve(random_state(4, 3), c), StepBudgetExceeded);
  c.t_end = 0.0;
  CHECK(dnls_evolve(random_state(4, 3), c).times.size() == 1);
}

TEST_CASE("transformed Hamiltonian residual") {
  FlowConfig cfg;
  cfg.dt = 0.25;
  cfg.tolerance = 1e-12;
  CHECK(transformed_hamiltonian_residual(FourierState(3), 4, cfg) == 0.0);
  CHECK_THROWS_AS(make_residual_setup(4, 5), std::invalid_argument);

  const FourierState probe = residual_probe(8, 7);
  CHECK(mass(probe) == doctest::Approx(1.0).epsilon(1e-14));
  FourierState scaled = probe;
  scaled *= 0.25;
  const ResidualSetup s4 = make_residual_setup(8, 4);
  CHECK(s4.dynamics_truncation == 24);
  CHECK_THROWS_AS(transformed_hamiltonian_residual(random_state(4, 1), s4, cfg), std::invalid_argument);
  CHECK(transformed_hamiltonian_residual(scaled, s4, cfg) ==
        doctest::Approx(oracle::residual_order4_lambda_quarter).epsilon(1e-6));
  const ResidualSetup s6 = make_residual_setup(8, 6);
  CHECK(transformed_hamiltonian_residual(scaled, s6, cfg) ==
        doctest::Approx(oracle::residual_order6_lambda_quarter).epsilon(1e-6));

  CHECK(loglog_slope({1, 2, 4}, {3, 24, 192}) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK_THROWS_AS(loglog_slope({1}, {1}), std::invalid_argument);
  CHECK_THROWS_AS(loglog_slope({1, 2}, {0, 1}), std::domain_error);
}

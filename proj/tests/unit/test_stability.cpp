#include "nflab/stability.hpp"
#include "nflab/sweeps.hpp"

#include "oracles.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace nflab;

namespace {

FourierState audit_probe(int m) {
  FourierState p(m);
  CounterRng rng(7);
  for (int j = -m; j <= m; ++j)
    if (j != 0) p[j] = std::polar(1.0 / (double(j) * j), 2 * oracle::pi * rng.uniform());
  p *= 1.0 / std::sqrt(mass(p));
  return p;
}

}  // namespace

TEST_CASE("Omega_s") {
  const IndexTuple t({1, 2, 5, 3, 6, 7});
  CHECK(omega_s_exact(t, 2) == oracle::omega_125367);
  CHECK(omega_s(t, SobolevIndex(1)) == oracle::omega_125367);
  const OmegaBoundReport r = omega_bound_check(t, SobolevIndex(1));
  CHECK(r.lhs == 36.0);
  CHECK(r.rhs == double(oracle::omega_rhs_125367));
  CHECK(r.holds);
  CHECK(r.exact);
  CHECK_FALSE(omega_bound_check(t, SobolevIndex(1.5)).exact);
  CHECK(omega_bound_check(t, SobolevIndex(1.5)).holds);

  CHECK_THROWS_AS(omega_s_exact(IndexTuple({1, 2}), 2), std::invalid_argument);
  CHECK_THROWS_AS(omega_bound_check(t, SobolevIndex(0.5)), std::invalid_argument);
  CHECK_THROWS_AS(omega_bound_check(IndexTuple({3, 3}), SobolevIndex(1)), std::invalid_argument);

  // s = 0 reduces to the momentum; telescoping pairs cancel; negation flips the sign
  CounterRng rng(4);
  for (int i = 0; i < 300; ++i) {
    std::vector<int> e;
    long bal = 0;
    for (int k = 0; k < 5; ++k) {
      int x = 0;
      while (x == 0) x = int(rng.uniform_int(-9, 9));
      e.push_back(x);
      bal += k % 2 == 0 ? x : -x;
    }
    if (bal == 0) continue;
    e.push_back(int(bal));
    const IndexTuple u(e);
    CHECK(omega_s_exact(u, 0) == 0);
    std::vector<int> neg;
    for (int x : e) neg.push_back(-x);
    for (int two_s : {2, 3, 4, 6}) CHECK(omega_s_exact(IndexTuple(neg), two_s) == -omega_s_exact(u, two_s));
    std::vector<int> paired = e;
    paired.push_back(e[0]);
    paired.push_back(e[0]);
    CHECK(omega_s_exact(IndexTuple(paired), 4) == omega_s_exact(u, 4));
    CHECK(omega_s(u, SobolevIndex(2)) == omega_s_exact(u, 4).get_d());
  }
  CHECK(omega_sweep_exhaustive(2, 12, {1, 2, 3}).ok());
  CHECK(omega_sweep_exhaustive(3, 5, {1, 2}).ok());
}

TEST_CASE("initial data") {
  const FourierState q = random_initial_data(32, 3.0, 0.2, 7);
  CHECK(sobolev_norm(q, SobolevIndex(3)) == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(std::abs(q[2]) / std::abs(q[1]) == doctest::Approx(std::pow(2.0, -4)).epsilon(1e-12));
  CHECK(std::abs(q[-5]) == doctest::Approx(std::abs(q[5])).epsilon(1e-12));
  CHECK(l2_distance(random_initial_data(32, 3.0, 0.2, 7), q) == 0.0);
  CHECK(l2_distance(random_initial_data(32, 3.0, 0.2, 8), q) > 0.0);
  CHECK_THROWS_AS(random_initial_data(4, 1.0, 0.0, 1), std::invalid_argument);
}

TEST_CASE("norm derivative in transformed coordinates") {
  FlowConfig cfg;
  cfg.dt = 0.01;
  const std::vector<double> lambdas{0.25, 0.125, 0.0625, 0.03125, 0.015625};
  const DerivativeAudit a = norm_derivative_audit(audit_probe(8), SobolevIndex(3), cfg, lambdas);
  CHECK(a.slope >= 5.6);
  CHECK(a.slope <= 6.4);
  CHECK(a.c3 > 0);
  CHECK(a.c3 < 1.0);

  // without the transform the leading term is quartic
  const NumericPoly none(PolyHamiltonian(8));
  std::vector<double> mags;
  for (double lam : lambdas) {
    FourierState p = audit_probe(8);
    p *= lam;
    mags.push_back(std::abs(norm_derivative(p, SobolevIndex(3), none, cfg, 1e-3)));
  }
  const double raw = loglog_slope(lambdas, mags);
  CHECK(raw >= 3.6);
  CHECK(raw <= 4.4);

  CHECK(norm_derivative(FourierState(8), SobolevIndex(3), none, cfg, 1e-3) == 0.0);
  FourierState single(1);
  single[1] = 0.3;
  CHECK(std::abs(norm_derivative_audit(single, SobolevIndex(3), cfg, {1.0}).derivatives[0]) < 1e-12);
}

TEST_CASE("stability runs") {
  StabilityRun run;
  run.modes = 16;
  run.horizon_exponent = 2;
  const StabilityReport r = stability_sweep(run);
  CHECK(r.passed);
  CHECK(r.max_ratio >= 1.0 - 1e-12);
  CHECK(r.rows.front().norm_ratio == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.rows.back().t == doctest::Approx(25.0));
  for (const auto& row : r.rows) {
    CHECK(row.mass_drift < 1e-9);
    CHECK(row.energy_drift < 1e-8);
  }
  CHECK(stability_csv_header() == "t,norm_ratio,mass_drift,energy_drift");
  CHECK(stability_csv_row(r.rows.front()).rfind("0,", 0) == 0);

  StabilityRun lin = run;
  lin.nonlinear = false;
  const StabilityReport l = stability_sweep(lin);
  for (const auto& row : l.rows) {
    CHECK(std::abs(row.norm_ratio - 1.0) < 1e-9);
    CHECK(row.energy_drift < 1e-12);
  }

  StabilityRun big = run;
  big.horizon_exponent = 8;
  big.step_budget = 1000;
  CHECK_THROWS_AS(stability_sweep(big), StepBudgetExceeded);
  StabilityRun bad = run;
  bad.epsilon = 1.5;
  CHECK_THROWS_AS(stability_sweep(bad), std::invalid_argument);
  bad = run;
  bad.modes = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("epsilon ladder trend") {
  CHECK(ladder_trend({0.3, 0.2, 0.1}, {1.3, 1.1, 1.02}).monotone());
  const LadderTrend t = ladder_trend({0.3, 0.2, 0.1}, {1.1, 1.3, 1.31});
  CHECK(t.flags == std::vector<bool>{true, false});
  CHECK_FALSE(t.monotone());
  CHECK(ladder_trend({0.3, 0.2}, {1.0, 1.04}).monotone());
  CHECK_THROWS_AS(ladder_trend({0.1, 0.2}, {1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(ladder_trend({0.1}, {1.0, 1.0}), std::invalid_argument);
}

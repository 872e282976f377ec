#include "nflab/stability.hpp"

#include "nflab/nf4.hpp"
#include "nflab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace nflab {

namespace {

void check_zero_momentum(const IndexTuple& t) {
  if (!t.zero_momentum()) throw std::invalid_argument("tuple does not have zero momentum");
}

bool integral(double x) { return std::floor(x) == x; }

}  // namespace

BigInt omega_s_exact(const IndexTuple& t, int two_s) {
  check_zero_momentum(t);
  if (two_s < 0) throw std::invalid_argument("2s must be nonnegative");
  BigInt total = 0;
  const auto& e = t.entries();
  for (std::size_t i = 0; i < e.size(); ++i) {
    BigInt power;
    mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(std::abs(e[i])), static_cast<unsigned long>(two_s));
    const BigInt term = BigInt(e[i]) * power;
    if (i % 2 == 0)
      total += term;
    else
      total -= term;
  }
  return total;
}

double omega_s(const IndexTuple& t, SobolevIndex s) {
  const double two_s = 2 * s.value();
  if (integral(two_s) && two_s < 1e6) return omega_s_exact(t, int(two_s)).get_d();
  check_zero_momentum(t);
  double total = 0.0;
  const auto& e = t.entries();
  for (std::size_t i = 0; i < e.size(); ++i) {
    const double term = double(e[i]) * std::pow(std::abs(double(e[i])), two_s);
    total += i % 2 == 0 ? term : -term;
  }
  return total;
}

OmegaBoundReport omega_bound_check(const IndexTuple& t, SobolevIndex s) {
  check_zero_momentum(t);
  if (s.value() < 1) throw std::invalid_argument("bound needs s >= 1");
  if (t.r() < 2) throw std::invalid_argument("bound needs at least four indices");
  const auto star = t.rearranged();
  const double sv = s.value();
  const long two_r = 2L * t.r();
  if (integral(sv)) {
    const unsigned long si = static_cast<unsigned long>(sv);
    const BigInt lhs = abs(omega_s_exact(t, int(2 * si)));
    BigInt a, b, c;
    mpz_ui_pow_ui(a.get_mpz_t(), static_cast<unsigned long>(two_r), si + 2);
    mpz_ui_pow_ui(b.get_mpz_t(), static_cast<unsigned long>(star[0]), si);
    mpz_ui_pow_ui(c.get_mpz_t(), static_cast<unsigned long>(star[1]), si);
    const BigInt rhs = BigInt(2 * si + 1) * a * b * c * star[2];
    return {lhs.get_d(), rhs.get_d(), lhs <= rhs, true};
  }
  const double lhs = std::abs(omega_s(t, s));
  const double rhs = (2 * sv + 1) * std::pow(double(two_r), sv + 2) * std::pow(double(star[0]), sv) *
                     std::pow(double(star[1]), sv) * double(star[2]);
  return {lhs, rhs, lhs <= rhs, false};
}

FourierState random_initial_data(int truncation, double s, double epsilon, std::uint64_t seed) {
  if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
  CounterRng rng(seed);
  FourierState q(truncation);
  for (int j = -truncation; j <= truncation; ++j) {
    if (j == 0) continue;
    const double amp = std::pow(std::abs(double(j)), -s - 1);
    q[j] = std::polar(amp, 2 * std::numbers::pi * rng.uniform());
  }
  q *= epsilon / sobolev_norm(q, SobolevIndex(s));
  return q;
}

FourierState residual_probe(int truncation, std::uint64_t seed) {
  FourierState q = random_initial_data(truncation, 1.0, 1.0, seed);
  q *= 1.0 / std::sqrt(mass(q));
  return q;
}

double norm_derivative(const FourierState& p, SobolevIndex s, const NumericPoly& f4, const FlowConfig& cfg,
                       double h) {
  if (!(h > 0)) throw std::invalid_argument("difference width must be positive");
  if (p.empty()) return 0.0;
  const long steps = std::max(1L, long(std::ceil(1.0 / cfg.dt - 1e-9)));
  DnlsStepper stepper(p.truncation(), cfg.nonlinear);
  const FourierState q = flow_fixed_steps(f4, p, 1.0, steps);
  auto pulled = [&](double dt) {
    FourierState x = q;
    stepper.step(x, dt, cfg.scheme);
    return flow_fixed_steps(f4, x, -1.0, steps);
  };
  const double plus = std::pow(sobolev_norm(pulled(h), s), 2);
  const double minus = std::pow(sobolev_norm(pulled(-h), s), 2);
  return (plus - minus) / (2 * h);
}

DerivativeAudit norm_derivative_audit(const FourierState& p0, SobolevIndex s, const FlowConfig& cfg,
                                      const std::vector<double>& amplitudes, double h) {
  cfg.validate();
  DerivativeAudit audit;
  audit.s = s.value();
  audit.amplitudes = amplitudes;
  const NumericPoly f4(build_F4(p0.truncation()));
  std::vector<double> mags;
  for (double lam : amplitudes) {
    FourierState p = p0;
    p *= lam;
    const double d = norm_derivative(p, s, f4, cfg, h);
    const double n = sobolev_norm(p, s);
    audit.derivatives.push_back(d);
    audit.norms.push_back(n);
    mags.push_back(std::abs(d));
    if (n > 0) audit.c3 = std::max(audit.c3, std::abs(d) / std::pow(n, 6));
  }
  const bool fit = amplitudes.size() >= 2 && std::all_of(mags.begin(), mags.end(), [](double m) { return m > 0; });
  audit.slope = fit ? loglog_slope(amplitudes, mags) : 0.0;
  return audit;
}

double StabilityRun::horizon() const { return std::pow(epsilon, -horizon_exponent); }

void StabilityRun::validate() const {
  if (!(epsilon > 0 && epsilon < 1)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  if (!(s >= 0)) throw std::invalid_argument("s must be nonnegative");
  if (modes < 1) throw std::invalid_argument("modes must be at least 1");
  if (!(dt > 0)) throw std::invalid_argument("dt must be positive");
  if (!(threshold > 0)) throw std::invalid_argument("threshold must be positive");
  if (!(horizon_exponent >= 0)) throw std::invalid_argument("horizon exponent must be nonnegative");
  if (record_every < 1) throw std::invalid_argument("record_every must be at least 1");
}

StabilityReport stability_sweep(const StabilityRun& run) {
  run.validate();
  const FourierState q0 = random_initial_data(run.modes, run.s, run.epsilon, run.seed);
  FlowConfig cfg;
  cfg.dt = run.dt;
  cfg.t_end = run.horizon();
  cfg.scheme = run.scheme;
  cfg.track_s = {run.s};
  cfg.record_every = run.record_every;
  cfg.max_steps = run.step_budget;
  cfg.nonlinear = run.nonlinear;
  const TrajectoryRecord rec = dnls_evolve(q0, cfg);

  StabilityReport report;
  report.run = run;
  report.steps = rec.steps;
  const double m0 = rec.mass.front(), e0 = rec.energy.front();
  double scale = 0.0;
  for (int j = 1; j <= q0.truncation(); ++j) scale += j * (std::norm(q0[j]) + std::norm(q0[-j]));
  if (std::abs(e0) > 1e-12 * scale) scale = std::abs(e0);
  for (std::size_t k = 0; k < rec.times.size(); ++k) {
    const StabilityRow row{rec.times[k], rec.norms[0][k] / run.epsilon, std::abs(rec.mass[k] - m0),
                           std::abs(rec.energy[k] - e0) / scale};
    report.max_ratio = std::max(report.max_ratio, row.norm_ratio);
    report.rows.push_back(row);
  }
  report.passed = report.max_ratio <= run.threshold;
  return report;
}

bool LadderTrend::monotone() const { return std::none_of(flags.begin(), flags.end(), [](bool f) { return f; }); }

LadderTrend ladder_trend(const std::vector<double>& epsilons, const std::vector<double>& max_ratios,
                         double tolerance) {
  if (epsilons.size() != max_ratios.size()) throw std::invalid_argument("ladder sizes differ");
  LadderTrend trend;
  for (std::size_t i = 0; i + 1 < epsilons.size(); ++i) {
    if (!(epsilons[i + 1] < epsilons[i])) throw std::invalid_argument("epsilons must decrease");
    trend.flags.push_back(max_ratios[i + 1] > max_ratios[i] * (1 + tolerance));
  }
  return trend;
}

std::string stability_csv_header() { return "t,norm_ratio,mass_drift,energy_drift"; }

std::string stability_csv_row(const StabilityRow& r) {
  std::ostringstream os;
  os.precision(17);
  os << r.t << ',' << r.norm_ratio << ',' << r.mass_drift << ',' << r.energy_drift;
  return os.str();
}

}  // namespace nflab

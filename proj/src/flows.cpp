#include "nflab/flows.hpp"

#include "nflab/nf4.hpp"
#include "nflab/nf6.hpp"
#include "nflab/parallel.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>

namespace nflab {

namespace {

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

int smooth_size_at_least(int n) {
  for (int c = n;; ++c) {
    int r = c;
    for (int p : {2, 3, 5})
      while (r % p == 0) r /= p;
    if (r == 1) return c;
  }
}

void axpy(FourierState& y, Complex a, const FourierState& x) {
  auto yd = y.data();
  const auto xd = x.data();
  for (std::size_t i = 0; i < yd.size(); ++i) yd[i] += a * xd[i];
}

}  // namespace

Scheme parse_scheme(const std::string& name) {
  if (name == "rk4-integrating-factor") return Scheme::Rk4IntegratingFactor;
  if (name == "rk4-plain") return Scheme::Rk4Plain;
  throw std::invalid_argument("unknown scheme '" + name + "' (rk4-integrating-factor | rk4-plain)");
}

std::string to_string(Scheme s) {
  return s == Scheme::Rk4IntegratingFactor ? "rk4-integrating-factor" : "rk4-plain";
}

void FlowConfig::validate() const {
  if (!(dt > 0)) throw std::invalid_argument("dt must be positive");
  if (!(tolerance > 0)) throw std::invalid_argument("tolerance must be positive");
  if (!(dt_min > 0)) throw std::invalid_argument("dt_min must be positive");
  if (!(t_end >= 0)) throw std::invalid_argument("t_end must be nonnegative");
  if (record_every < 1) throw std::invalid_argument("record_every must be at least 1");
  if (snapshot_every < 0) throw std::invalid_argument("snapshot_every must be nonnegative");
  if (max_steps < 0) throw std::invalid_argument("max_steps must be nonnegative");
  for (double s : track_s)
    if (!(s >= 0)) throw std::invalid_argument("Sobolev indices must be nonnegative");
}

FourierState flow_fixed_steps(const NumericPoly& f, const FourierState& q0, double t, long steps) {
  if (steps < 1) throw std::invalid_argument("steps must be positive");
  FourierState q = q0;
  const double h = t / double(steps);
  for (long n = 0; n < steps; ++n) {
    const FourierState k1 = f.vector_field(q);
    FourierState y = q;
    axpy(y, h / 2, k1);
    const FourierState k2 = f.vector_field(y);
    y = q;
    axpy(y, h / 2, k2);
    const FourierState k3 = f.vector_field(y);
    y = q;
    axpy(y, h, k3);
    const FourierState k4 = f.vector_field(y);
    axpy(q, h / 6, k1);
    axpy(q, h / 3, k2);
    axpy(q, h / 3, k3);
    axpy(q, h / 6, k4);
  }
  return q;
}

FlowResult flow_time_one_detailed(const NumericPoly& f, const FourierState& q0, const FlowConfig& cfg) {
  cfg.validate();
  if (f.truncation() != q0.truncation()) throw std::invalid_argument("truncation mismatch in flow");
  if (f.size() == 0 || cfg.t_end == 0) return {q0, 0, 0.0};
  long steps = std::max(1L, long(std::ceil(cfg.t_end / cfg.dt - 1e-9)));
  FourierState prev = flow_fixed_steps(f, q0, cfg.t_end, steps);
  for (;;) {
    steps *= 2;
    if (cfg.t_end / double(steps) < cfg.dt_min) {
      std::ostringstream os;
      os << "time-one map did not converge to tolerance " << cfg.tolerance << " before dt_min " << cfg.dt_min;
      throw NonConvergence(os.str());
    }
    FourierState cur = flow_fixed_steps(f, q0, cfg.t_end, steps);
    const double change = l2_distance(cur, prev);
    if (change < cfg.tolerance) return {std::move(cur), steps, change};
    prev = std::move(cur);
  }
}

namespace {

FourierState increment_fixed_steps(const NumericPoly& f, const FourierState& base, double t, long steps) {
  FourierState d(base.truncation());
  const double h = t / double(steps);
  auto field = [&](const FourierState& inc) { return f.vector_field(base + inc); };
  for (long n = 0; n < steps; ++n) {
    const FourierState k1 = field(d);
    FourierState y = d;
    axpy(y, h / 2, k1);
    const FourierState k2 = field(y);
    y = d;
    axpy(y, h / 2, k2);
    const FourierState k3 = field(y);
    y = d;
    axpy(y, h, k3);
    const FourierState k4 = field(y);
    axpy(d, h / 6, k1);
    axpy(d, h / 3, k2);
    axpy(d, h / 3, k3);
    axpy(d, h / 6, k4);
  }
  return d;
}

}  // namespace

FourierState flow_increment(const NumericPoly& f, const FourierState& base, const FlowConfig& cfg) {
  cfg.validate();
  if (f.truncation() != base.truncation()) throw std::invalid_argument("truncation mismatch in flow");
  if (f.size() == 0 || cfg.t_end == 0) return FourierState(base.truncation());
  long steps = std::max(1L, long(std::ceil(cfg.t_end / cfg.dt - 1e-9)));
  FourierState prev = increment_fixed_steps(f, base, cfg.t_end, steps);
  for (;;) {
    steps *= 2;
    if (cfg.t_end / double(steps) < cfg.dt_min) {
      std::ostringstream os;
      os << "increment flow did not converge to relative tolerance " << cfg.tolerance << " before dt_min "
         << cfg.dt_min;
      throw NonConvergence(os.str());
    }
    FourierState cur = increment_fixed_steps(f, base, cfg.t_end, steps);
    const double scale = std::sqrt(mass(cur));
    if (l2_distance(cur, prev) <= cfg.tolerance * scale) return cur;
    prev = std::move(cur);
  }
}

FourierState flow_time_one(const NumericPoly& f, const FourierState& q0, const FlowConfig& cfg) {
  return flow_time_one_detailed(f, q0, cfg).state;
}

FourierState flow_time_one(const PolyHamiltonian& f, const FourierState& q0, const FlowConfig& cfg) {
  if (f.truncation() != q0.truncation()) throw std::invalid_argument("truncation mismatch in flow");
  return flow_time_one(NumericPoly(f), q0, cfg);
}

struct DnlsStepper::Plans {
  fftw_complex* spec = nullptr;
  fftw_complex* grid = nullptr;
  fftw_plan to_grid = nullptr;
  fftw_plan to_spec = nullptr;
};

DnlsStepper::DnlsStepper(int truncation, bool nonlinear)
    : m_(truncation), n_(smooth_size_at_least(4 * truncation + 1)), nonlinear_(nonlinear), plans_(new Plans) {
  if (truncation < 1) throw std::invalid_argument("truncation must be at least 1");
  std::lock_guard lock(fftw_planner_mutex());
  plans_->spec = fftw_alloc_complex(std::size_t(n_));
  plans_->grid = fftw_alloc_complex(std::size_t(n_));
  plans_->to_grid = fftw_plan_dft_1d(n_, plans_->spec, plans_->grid, FFTW_BACKWARD, FFTW_ESTIMATE);
  plans_->to_spec = fftw_plan_dft_1d(n_, plans_->grid, plans_->spec, FFTW_FORWARD, FFTW_ESTIMATE);
}

DnlsStepper::~DnlsStepper() {
  std::lock_guard lock(fftw_planner_mutex());
  fftw_destroy_plan(plans_->to_grid);
  fftw_destroy_plan(plans_->to_spec);
  fftw_free(plans_->spec);
  fftw_free(plans_->grid);
}

void DnlsStepper::to_grid(const FourierState& q) {
  if (q.truncation() != m_) throw std::invalid_argument("state truncation does not match the stepper");
  auto* spec = reinterpret_cast<Complex*>(plans_->spec);
  std::fill(spec, spec + n_, Complex{});
  for (int j = 1; j <= m_; ++j) {
    spec[j] = q[j];
    spec[n_ - j] = q[-j];
  }
  fftw_execute(plans_->to_grid);
}

FourierState DnlsStepper::nonlinear_term(const FourierState& q) {
  if (q.truncation() != m_) throw std::invalid_argument("state truncation does not match the stepper");
  FourierState out(m_);
  if (!nonlinear_) return out;
  to_grid(q);
  auto* grid = reinterpret_cast<Complex*>(plans_->grid);
  for (int n = 0; n < n_; ++n) grid[n] *= std::norm(grid[n]);
  fftw_execute(plans_->to_spec);
  const auto* spec = reinterpret_cast<const Complex*>(plans_->spec);
  const double scale = 1.0 / (2.0 * std::numbers::pi * n_);
  for (int j = 1; j <= m_; ++j) {
    out[j] = Complex(0.0, -double(j) * scale) * spec[j];
    out[-j] = Complex(0.0, double(j) * scale) * spec[n_ - j];
  }
  return out;
}

double DnlsStepper::quartic_energy(const FourierState& q) {
  if (!nonlinear_) return 0.0;
  to_grid(q);
  const auto* grid = reinterpret_cast<const Complex*>(plans_->grid);
  double acc = 0.0;
  for (int n = 0; n < n_; ++n) {
    const double a = std::norm(grid[n]);
    acc += a * a;
  }
  return acc / (4.0 * std::numbers::pi * n_);
}

double DnlsStepper::hamiltonian(const FourierState& q) { return lambda_energy(q) + quartic_energy(q); }

FourierState DnlsStepper::linear_rotation(const FourierState& q, double t) const {
  FourierState out = q;
  auto d = out.data();
  for (std::size_t s = 0; s < d.size(); ++s) {
    const double j = out.mode_at(s);
    d[s] *= std::polar(1.0, -j * j * t);
  }
  return out;
}

void DnlsStepper::step(FourierState& q, double h, Scheme scheme) {
  if (scheme == Scheme::Rk4IntegratingFactor) {
    const FourierState k1 = nonlinear_term(q);
    FourierState y = q;
    axpy(y, h / 2, k1);
    const FourierState k2 = nonlinear_term(linear_rotation(y, h / 2));
    const FourierState eq_half = linear_rotation(q, h / 2);
    y = eq_half;
    axpy(y, h / 2, k2);
    const FourierState k3 = nonlinear_term(y);
    y = linear_rotation(q, h);
    axpy(y, h, linear_rotation(k3, h / 2));
    const FourierState k4 = nonlinear_term(y);
    FourierState next = linear_rotation(q, h);
    axpy(next, h / 6, linear_rotation(k1, h));
    FourierState mid = k2;
    mid += k3;
    axpy(next, h / 3, linear_rotation(mid, h / 2));
    axpy(next, h / 6, k4);
    q = std::move(next);
    return;
  }
  auto rhs = [&](const FourierState& x) {
    FourierState r = nonlinear_term(x);
    auto rd = r.data();
    const auto xd = x.data();
    for (std::size_t s = 0; s < rd.size(); ++s) {
      const double j = x.mode_at(s);
      rd[s] += Complex(0.0, -j * j) * xd[s];
    }
    return r;
  };
  const FourierState k1 = rhs(q);
  FourierState y = q;
  axpy(y, h / 2, k1);
  const FourierState k2 = rhs(y);
  y = q;
  axpy(y, h / 2, k2);
  const FourierState k3 = rhs(y);
  y = q;
  axpy(y, h, k3);
  const FourierState k4 = rhs(y);
  axpy(q, h / 6, k1);
  axpy(q, h / 3, k2);
  axpy(q, h / 3, k3);
  axpy(q, h / 6, k4);
}

TrajectoryRecord dnls_evolve(const FourierState& q0, const FlowConfig& cfg) {
  cfg.validate();
  DnlsStepper stepper(q0.truncation(), cfg.nonlinear);
  const long steps = cfg.t_end == 0 ? 0 : std::max(1L, long(std::ceil(cfg.t_end / cfg.dt - 1e-9)));
  if (cfg.max_steps > 0 && steps > cfg.max_steps) {
    std::ostringstream os;
    os << "run needs " << steps << " steps, budget is " << cfg.max_steps;
    throw StepBudgetExceeded(os.str());
  }
  const double h = steps > 0 ? cfg.t_end / double(steps) : 0.0;

  TrajectoryRecord rec;
  rec.track_s = cfg.track_s;
  rec.norms.resize(cfg.track_s.size());
  long records = 0;
  auto record = [&](const FourierState& q, double t) {
    rec.times.push_back(t);
    rec.mass.push_back(mass(q));
    rec.momentum.push_back(lambda_energy(q));
    rec.energy.push_back(stepper.hamiltonian(q));
    for (std::size_t i = 0; i < cfg.track_s.size(); ++i)
      rec.norms[i].push_back(sobolev_norm(q, SobolevIndex(cfg.track_s[i])));
    if (cfg.snapshot_every > 0 && records % cfg.snapshot_every == 0) {
      rec.states.push_back(q);
      rec.snapshot_times.push_back(t);
    }
    ++records;
  };

  FourierState q = q0;
  const double norm0 = std::sqrt(mass(q0));
  record(q, 0.0);
  for (long n = 1; n <= steps; ++n) {
    stepper.step(q, h, cfg.scheme);
    const double norm = std::sqrt(mass(q));
    const double t = n == steps ? cfg.t_end : double(n) * h;
    if (!std::isfinite(norm) || (norm0 > 0 && norm > cfg.blowup_factor * norm0)) {
      std::ostringstream os;
      os << "blow-up at t=" << t << ": l2 norm " << norm << " exceeds " << cfg.blowup_factor << " x initial "
         << norm0;
      throw BlowUp(os.str());
    }
    if (n % cfg.record_every == 0 || n == steps) record(q, t);
  }
  rec.steps = steps;
  return rec;
}

std::string trajectory_csv_header(const TrajectoryRecord& r) {
  std::ostringstream os;
  os << "time,mass,momentum,energy";
  for (double s : r.track_s) os << ",norm_s=" << s;
  return os.str();
}

std::vector<std::string> trajectory_csv_rows(const TrajectoryRecord& r) {
  std::vector<std::string> rows;
  rows.reserve(r.times.size());
  for (std::size_t k = 0; k < r.times.size(); ++k) {
    std::ostringstream os;
    os.precision(17);
    os << r.times[k] << ',' << r.mass[k] << ',' << r.momentum[k] << ',' << r.energy[k];
    for (const auto& ch : r.norms) os << ',' << ch[k];
    rows.push_back(os.str());
  }
  return rows;
}

ResidualSetup make_residual_setup(int box, int order, int jobs) {
  if (order != 4 && order != 6) throw std::invalid_argument("residual order must be 4 or 6");
  if (box < 1) throw std::invalid_argument("box must be at least 1");
  ResidualSetup s;
  s.box = box;
  s.order = order;
  s.dynamics_truncation = 3 * box;
  s.F4 = std::make_shared<NumericPoly>(build_F4(s.dynamics_truncation));
  s.B = std::make_shared<NumericPoly>(build_B(box));
  if (order == 6) {
    const R6Split split = split_R6(compute_R6(box, jobs));
    s.F6 = std::make_shared<NumericPoly>(build_F6(split.Qtilde));
    s.K = std::make_shared<NumericPoly>(build_K(box));
  }
  return s;
}

double transformed_hamiltonian_residual(const FourierState& q0, const ResidualSetup& setup, const FlowConfig& cfg) {
  if (q0.truncation() != setup.box) throw std::invalid_argument("initial state must live in the residual box");
  if (q0.empty()) return 0.0;
  FlowConfig c = cfg;
  c.t_end = 1.0;
  const int big = setup.dynamics_truncation;
  const FourierState base = q0.resized(big);
  // Total displacement D = Psi(Phi(q0)) - q0, accumulated without adding q0 back in.
  FourierState shift(big);
  if (setup.order == 6) shift = flow_increment(*setup.F6, q0, c).resized(big);
  shift += flow_increment(*setup.F4, base + shift, c);
  const FourierState q = base + shift;
  // Lambda(q0 + D) - Lambda(q0) = sum j (2 Re(conj(q0_j) D_j) + |D_j|^2)
  double dlambda = 0.0;
  for (std::size_t s = 0; s < q.size(); ++s) {
    const Complex b = base.data()[s], d = shift.data()[s];
    dlambda += double(q.mode_at(s)) * (2.0 * (std::conj(b) * d).real() + std::norm(d));
  }
  double value = dlambda + quartic_energy(q) - setup.B->value(q0).real();
  if (setup.order == 6) value -= setup.K->value(q0).real();
  return std::abs(value);
}

double transformed_hamiltonian_residual(const FourierState& q0, int order, const FlowConfig& cfg, int jobs) {
  return transformed_hamiltonian_residual(q0, make_residual_setup(q0.truncation(), order, jobs), cfg);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("slope fit needs two or more points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = double(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0)) throw std::domain_error("slope fit needs positive data");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ScalingReport residual_scaling(const FourierState& q0, const ResidualSetup& setup, const std::vector<double>& lambdas,
                               const FlowConfig& cfg, int jobs) {
  ScalingReport r;
  r.order = setup.order;
  r.lambdas = lambdas;
  r.residuals.assign(lambdas.size(), 0.0);
  const int chunks = std::min<int>(resolve_jobs(jobs), std::max<int>(1, int(lambdas.size())));
  parallel_chunks(lambdas.size(), chunks, [&](int, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      FourierState q = q0;
      q *= lambdas[i];
      r.residuals[i] = transformed_hamiltonian_residual(q, setup, cfg);
    }
  });
  r.slope = loglog_slope(r.lambdas, r.residuals);
  return r;
}

}  // namespace nflab

#include "nflab/cli.hpp"

#include "nflab/flows.hpp"
#include "nflab/identities.hpp"
#include "nflab/nf4.hpp"
#include "nflab/nf6.hpp"
#include "nflab/parallel.hpp"
#include "nflab/report.hpp"
#include "nflab/rng.hpp"
#include "nflab/stability.hpp"
#include "nflab/sweeps.hpp"
#include "nflab/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>

namespace nflab::cli {

namespace {

using ojson = nlohmann::ordered_json;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string config_value(const ojson& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  return v.dump();
}

/// Keys name long options of the subcommand (or the global ones); an object
/// under the subcommand's name is applied the same way. Flags already given win.
void apply_config(CLI::App& app, CLI::App& sub, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config " + path);
  ojson doc;
  try {
    doc = ojson::parse(in);
  } catch (const ojson::parse_error& e) {
    throw UsageError("config " + path + ": " + e.what());
  }
  if (!doc.is_object()) throw UsageError("config " + path + " must hold a JSON object");
  std::function<void(const ojson&)> apply = [&](const ojson& obj) {
    for (const auto& [key, value] : obj.items()) {
      if (value.is_object()) {
        if (key == sub.get_name()) apply(value);
        continue;
      }
      std::string name = key;
      for (auto& c : name)
        if (c == '_') c = '-';
      CLI::Option* opt = sub.get_option_no_throw("--" + name);
      if (!opt) opt = app.get_option_no_throw("--" + name);
      if (!opt) throw UsageError("config " + path + ": unknown key " + key);
      if (opt->count() > 0) continue;
      if (value.is_array()) {
        for (const auto& v : value) opt->add_result(config_value(v));
      } else {
        opt->add_result(config_value(value));
      }
      opt->run_callback();
    }
  };
  apply(doc);
}

struct Context {
  std::ostream& out;
  int jobs = 1;
};

void print_check(std::ostream& out, const CheckResult& c) {
  out << (c.passed ? "pass " : "FAIL ") << c.name << ": " << c.detail << '\n';
}

bool all_passed(const std::vector<CheckResult>& checks) {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

int finish(const std::vector<CheckResult>& checks) { return all_passed(checks) ? Ok : AssertionFailed; }

Outcome outcome_of(const std::vector<CheckResult>& checks) {
  if (checks.empty()) return Outcome::ReportOnly;
  return all_passed(checks) ? Outcome::Pass : Outcome::Fail;
}

ojson checks_json(const std::vector<CheckResult>& checks) {
  ojson a = ojson::array();
  for (const auto& c : checks) a.push_back(c.to_json());
  return a;
}

void require(bool cond, const std::string& what) {
  if (!cond) throw UsageError(what);
}

ojson poly_json(const PolyHamiltonian& p) {
  ojson d;
  d["truncation"] = p.truncation();
  d["terms"] = ojson::parse(dump_poly_json(p));
  return d;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

// nf4 ----------------------------------------------------------------------

struct Nf4Opts {
  int modes = 8;
  std::string dump_f4;
  std::string report;
  bool audit = false;
  bool r6 = false;
  int divisor_bound = 20;
  std::uint64_t samples = 0;
  long sample_max = 10'000;
  std::uint64_t seed = 1;
};

void add_nf4(CLI::App& sub, Nf4Opts& o) {
  sub.add_option("--modes", o.modes, "Truncation M")->capture_default_str();
  sub.add_option("--dump-f4", o.dump_f4, "Write the generator as JSON");
  sub.add_option("--report", o.report, "Write the divisor sweep as CSV");
  sub.add_flag("--audit", o.audit, "Coefficient growth audits of B, F and the remainder");
  sub.add_flag("--r6", o.r6, "Check the remainder against its closed forms");
  sub.add_option("--divisor-bound", o.divisor_bound, "Exhaustive divisor sweep bound (0 skips)")->capture_default_str();
  sub.add_option("--samples", o.samples, "Random divisor samples")->capture_default_str();
  sub.add_option("--sample-max", o.sample_max, "Largest sampled entry")->capture_default_str();
  sub.add_option("--seed", o.seed, "Seed")->capture_default_str();
}

int run_nf4(const Nf4Opts& o, Context& ctx) {
  require(o.modes >= 2, "--modes must be at least 2");
  require(o.divisor_bound >= 0, "--divisor-bound must be nonnegative");
  require(o.sample_max >= 3, "--sample-max must be at least 3");
  std::vector<CheckResult> checks;
  const QuarticGenerators g = build_quartic_generators(o.modes);
  checks.push_back(check_homological_order4(g));

  std::vector<std::string> rows;
  if (o.divisor_bound > 0) {
    auto sink = [&](const DivisorReport& d) { rows.push_back(divisor_csv_row(d)); };
    const SweepResult s = o.report.empty() ? divisor_sweep_exhaustive(o.divisor_bound, ctx.jobs)
                                           : divisor_sweep_exhaustive(o.divisor_bound, ctx.jobs, sink);
    checks.push_back(check_sweep("quartic divisor bound, exhaustive", s));
  }
  if (o.samples > 0)
    checks.push_back(check_sweep("quartic divisor bound, random",
                                 divisor_sweep_random(o.samples, o.sample_max, o.seed, ctx.jobs)));

  ojson audits = ojson::object();
  std::optional<R6Parts> parts;
  if (o.r6 || o.audit) parts = compute_R6_parts(o.modes, ctx.jobs);
  if (o.r6) {
    checks.push_back(check_BF_closed_form(*parts));
    checks.push_back(check_K_match(split_R6(parts->total)));
  }
  if (o.audit) {
    const AuditResult b = coefficient_growth_audit(g.B, AuditShape::symmetric(0.5));
    const AuditResult f = coefficient_growth_audit(g.F, AuditShape{1.5, 0.5, false});
    const AuditResult r = coefficient_growth_audit(parts->total, AuditShape::symmetric(0.5));
    audits["B"] = b.constant;
    audits["F"] = f.constant;
    audits["R6"] = r.constant;
    ctx.out << "audit B: C = " << fmt(b.constant) << '\n'
            << "audit F: C = " << fmt(f.constant) << '\n'
            << "audit R6: C = " << fmt(r.constant) << '\n';
    const double limit = 1.0 / (2 * std::numbers::pi);
    checks.push_back({"generator coefficient bound", f.constant <= limit * (1 + 1e-12),
                      "C = " + fmt(f.constant) + " against 1/(2 pi) = " + fmt(limit)});
  }
  for (const auto& c : checks) print_check(ctx.out, c);

  ojson params;
  params["modes"] = o.modes;
  params["divisor_bound"] = o.divisor_bound;
  params["samples"] = o.samples;
  params["sample_max"] = o.sample_max;
  params["seed"] = o.seed;
  params["audit"] = o.audit;
  params["r6"] = o.r6;
  RunManifest man = RunManifest::make("nf4", params);
  man.outcome = outcome_of(checks);
  if (!o.report.empty()) write_csv(o.report, man, divisor_csv_header(), rows);
  if (!o.dump_f4.empty()) {
    ojson data = poly_json(g.F);
    if (o.audit) data["audits"] = audits;
    data["checks"] = checks_json(checks);
    write_json(o.dump_f4, man, data);
  }
  return finish(checks);
}

// nf6 ----------------------------------------------------------------------

struct Nf6Opts {
  int modes = 8;
  bool verify_ktilde = false;
  std::string dump_k;
  bool audit_f6 = false;
  std::string resonant;
  int sextuple_bound = 8;
  std::uint64_t samples = 0;
  long sample_max = 100'000;
  std::uint64_t seed = 1;
  bool qtilde0 = false;
  long n_min = 1000;
  int tau_small = 3;
  long tau_n_max = 1'000'000;
};

void add_nf6(CLI::App& sub, Nf6Opts& o) {
  sub.add_option("--modes", o.modes, "Truncation M")->capture_default_str();
  sub.add_flag("--verify-ktilde", o.verify_ktilde, "Check that no resonant non-normal term survives");
  sub.add_option("--dump-k", o.dump_k, "Write K as JSON");
  sub.add_flag("--audit-f6", o.audit_f6, "Build the order-six generator, check its equation, audit it");
  sub.add_option("--resonant", o.resonant, "Write the resonant sextuples as CSV");
  sub.add_option("--sextuple-bound", o.sextuple_bound, "Exhaustive sextic divisor sweep bound (0 skips)")
      ->capture_default_str();
  sub.add_option("--samples", o.samples, "Random sextic divisor samples")->capture_default_str();
  sub.add_option("--sample-max", o.sample_max, "Largest sampled entry")->capture_default_str();
  sub.add_option("--seed", o.seed, "Seed")->capture_default_str();
  sub.add_flag("--qtilde0", o.qtilde0, "Cross-check the reducible closed form and the tau bound");
  sub.add_option("--n-min", o.n_min, "Smallest synthetic |n| of the cross-check")->capture_default_str();
  sub.add_option("--tau-small", o.tau_small, "Small-index bound of the tau sweep")->capture_default_str();
  sub.add_option("--tau-n-max", o.tau_n_max, "Largest |n| of the tau sweep")->capture_default_str();
}

int run_nf6(const Nf6Opts& o, Context& ctx) {
  require(o.modes >= 2, "--modes must be at least 2");
  require(o.sextuple_bound >= 0, "--sextuple-bound must be nonnegative");
  require(o.sample_max >= 3, "--sample-max must be at least 3");
  require(!o.qtilde0 || o.n_min > 100, "--n-min must exceed 100");
  require(!o.qtilde0 || (o.tau_small >= 1 && o.tau_n_max >= 1), "tau sweep bounds must be positive");
  std::vector<CheckResult> checks;
  const R6Parts parts = compute_R6_parts(o.modes, ctx.jobs);
  const R6Split split = split_R6(parts.total);
  checks.push_back(check_K_match(split));
  if (o.verify_ktilde) checks.push_back(check_Ktilde_zero(verify_Ktilde_zero(parts.total)));
  ojson audit;
  if (o.audit_f6) {
    const PolyHamiltonian f6 = build_F6(split.Qtilde);
    checks.push_back(check_homological_order6(split.Qtilde, f6));
    const AuditResult a = coefficient_growth_audit(f6, AuditShape{3.5, 2.5, false});
    audit["F6"] = a.constant;
    ctx.out << "audit F6: C = " << fmt(a.constant) << '\n';
  }
  if (o.sextuple_bound > 0)
    checks.push_back(check_sweep("sextic divisor bound, exhaustive", sextuple_sweep_exhaustive(o.sextuple_bound, ctx.jobs)));
  if (o.samples > 0)
    checks.push_back(check_sweep("sextic divisor bound, random",
                                 sextuple_sweep_random(o.samples, o.sample_max, o.seed, ctx.jobs)));
  if (o.qtilde0) {
    checks.push_back(check_qtilde0(build_Qtilde0_crosscheck(split.Qtilde, o.n_min)));
    checks.push_back(check_tau_bound(tau_bound_sweep(o.tau_small, o.tau_n_max)));
  }
  for (const auto& c : checks) print_check(ctx.out, c);

  ojson params;
  params["modes"] = o.modes;
  params["verify_ktilde"] = o.verify_ktilde;
  params["audit_f6"] = o.audit_f6;
  params["sextuple_bound"] = o.sextuple_bound;
  params["samples"] = o.samples;
  params["sample_max"] = o.sample_max;
  params["seed"] = o.seed;
  params["qtilde0"] = o.qtilde0;
  if (o.qtilde0) {
    params["n_min"] = o.n_min;
    params["tau_small"] = o.tau_small;
    params["tau_n_max"] = o.tau_n_max;
  }
  RunManifest man = RunManifest::make("nf6", params);
  man.outcome = outcome_of(checks);
  if (!o.dump_k.empty()) {
    ojson data = poly_json(split.K);
    if (o.audit_f6) data["audits"] = audit;
    data["checks"] = checks_json(checks);
    write_json(o.dump_k, man, data);
  }
  if (!o.resonant.empty()) {
    std::vector<std::string> rows;
    for (const auto& s : enumerate_resonant(o.modes)) {
      std::ostringstream os;
      for (int i = 0; i < 6; ++i) os << (i ? "," : "") << s.j[static_cast<std::size_t>(i)];
      rows.push_back(os.str());
    }
    write_csv(o.resonant, man, "j1,j2,j3,j4,j5,j6", rows);
  }
  return finish(checks);
}

// identities ---------------------------------------------------------------

struct IdentitiesOpts {
  int bound = 7;
  bool positive_only = false;
  std::uint64_t random = 0;
  std::uint64_t seed = 1;
  std::string report;
};

void add_identities(CLI::App& sub, IdentitiesOpts& o) {
  sub.add_option("--bound", o.bound, "Entry bound of the enumeration (at least 7)")->capture_default_str();
  sub.add_flag("--positive-only", o.positive_only, "Enumerate positive entries only");
  sub.add_option("--random", o.random, "Random rational pairs to check")->capture_default_str();
  sub.add_option("--seed", o.seed, "Seed")->capture_default_str();
  sub.add_option("--report", o.report, "Write the enumerated pairs as CSV");
}

int run_identities(const IdentitiesOpts& o, Context& ctx) {
  require(o.bound >= 7, "--bound must be at least 7");
  const auto pairs = enumerate_triple_pairs(o.bound, o.positive_only, ctx.jobs);
  std::vector<std::string> rows;
  std::size_t lemma_failures = 0, identity_failures = 0;
  for (const auto& p : pairs) {
    const LemmaSums s = verify_lemma_appendix(p);
    if (!s.vanish()) ++lemma_failures;
    const TriplePair c = centered(p);
    if (!intermediate_identities(c).all_hold() || !denominator_and_row_sums(c).all_hold()) ++identity_failures;
    rows.push_back(identities_csv_row(p, s));
  }
  std::vector<CheckResult> checks;
  std::ostringstream os;
  os << pairs.size() << " integer pairs, lemma failures " << lemma_failures << ", identity failures "
     << identity_failures;
  checks.push_back({"appendix identities, enumerated", lemma_failures == 0 && identity_failures == 0, os.str()});
  if (o.random > 0) {
    CheckResult r = check_appendix(0, o.random, o.seed, ctx.jobs);
    r.name = "appendix identities, random rational";
    checks.push_back(r);
  }
  for (const auto& c : checks) print_check(ctx.out, c);
  if (!o.report.empty()) {
    ojson params;
    params["bound"] = o.bound;
    params["positive_only"] = o.positive_only;
    params["random"] = o.random;
    params["seed"] = o.seed;
    RunManifest man = RunManifest::make("identities", params);
    man.outcome = outcome_of(checks);
    write_csv(o.report, man, identities_csv_header(), rows);
  }
  return finish(checks);
}

// simulate -----------------------------------------------------------------

struct SimulateOpts {
  int modes = 16;
  double dt = 1e-3;
  double t_end = 10.0;
  std::string init = "planewave:1,0.5";
  std::vector<double> track_s;
  std::string scheme = "rk4-integrating-factor";
  int record_every = 100;
  std::string out;
  std::string snapshots;
  int snapshot_every = 0;
  bool linear = false;
  long max_steps = 0;
  double mass_tol = 1e-9;
  double energy_tol = 1e-8;
};

void add_simulate(CLI::App& sub, SimulateOpts& o) {
  sub.add_option("--modes", o.modes, "Truncation M")->capture_default_str();
  sub.add_option("--dt", o.dt, "Time step")->capture_default_str();
  sub.add_option("--t-end", o.t_end, "Final time")->capture_default_str();
  sub.add_option("--init", o.init, "State file, planewave:k,A or random:s,eps,seed")->capture_default_str();
  sub.add_option("--track-s", o.track_s, "Sobolev indices to track")->delimiter(',');
  sub.add_option("--scheme", o.scheme, "rk4-integrating-factor or rk4-plain")->capture_default_str();
  sub.add_option("--record-every", o.record_every, "Steps between records")->capture_default_str();
  sub.add_option("--out", o.out, "Trajectory CSV");
  sub.add_option("--snapshots", o.snapshots, "State snapshots as JSON");
  sub.add_option("--snapshot-every", o.snapshot_every, "Records between snapshots")->capture_default_str();
  sub.add_flag("--linear", o.linear, "Drop the nonlinearity");
  sub.add_option("--max-steps", o.max_steps, "Step budget (0 unlimited)")->capture_default_str();
  sub.add_option("--mass-tol", o.mass_tol, "Allowed mass drift")->capture_default_str();
  sub.add_option("--energy-tol", o.energy_tol, "Allowed relative energy drift")->capture_default_str();
}

std::vector<double> parse_numbers(const std::string& text, std::size_t count, const std::string& what) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad number in " + what + ": " + item);
    }
  }
  if (v.size() != count) throw UsageError(what + " expects " + std::to_string(count) + " values");
  return v;
}

FourierState initial_state(const std::string& init, int modes) {
  if (init.rfind("planewave:", 0) == 0) {
    const auto v = parse_numbers(init.substr(10), 2, "planewave");
    const int k = int(v[0]);
    require(k == v[0] && k != 0 && std::abs(k) <= modes, "planewave mode must be a nonzero integer inside the box");
    FourierState q(modes);
    q[k] = v[1] * std::sqrt(2 * std::numbers::pi);
    return q;
  }
  if (init.rfind("random:", 0) == 0) {
    const auto v = parse_numbers(init.substr(7), 3, "random");
    require(v[2] >= 0 && v[2] == std::floor(v[2]), "random seed must be a nonnegative integer");
    return random_initial_data(modes, v[0], v[1], static_cast<std::uint64_t>(v[2]));
  }
  std::ifstream in(init);
  if (!in) throw IoError("cannot read initial state " + init);
  std::stringstream buf;
  buf << in.rdbuf();
  return load_state_json(buf.str(), modes);
}

int run_simulate(const SimulateOpts& o, Context& ctx) {
  require(o.modes >= 1, "--modes must be at least 1");
  FlowConfig cfg;
  cfg.dt = o.dt;
  cfg.t_end = o.t_end;
  try {
    cfg.scheme = parse_scheme(o.scheme);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  cfg.track_s = o.track_s;
  cfg.record_every = o.record_every;
  cfg.snapshot_every = o.snapshots.empty() ? 0 : std::max(1, o.snapshot_every);
  cfg.max_steps = o.max_steps;
  cfg.nonlinear = !o.linear;
  cfg.validate();
  const FourierState q0 = initial_state(o.init, o.modes);
  const TrajectoryRecord rec = dnls_evolve(q0, cfg);

  double dm = 0, de = 0;
  for (std::size_t k = 0; k < rec.times.size(); ++k) {
    dm = std::max(dm, std::abs(rec.mass[k] - rec.mass[0]));
    de = std::max(de, std::abs(rec.energy[k] - rec.energy[0]));
  }
  const double e_scale = std::abs(rec.energy[0]) > 0 ? std::abs(rec.energy[0]) : 1.0;
  std::vector<CheckResult> checks;
  checks.push_back({"mass drift", dm < o.mass_tol, fmt(dm) + " against " + fmt(o.mass_tol)});
  checks.push_back({"energy drift", de / e_scale < o.energy_tol, fmt(de / e_scale) + " against " + fmt(o.energy_tol)});
  ctx.out << "steps " << rec.steps << ", records " << rec.times.size() << '\n';
  for (const auto& c : checks) print_check(ctx.out, c);

  ojson params;
  params["modes"] = o.modes;
  params["dt"] = o.dt;
  params["t_end"] = o.t_end;
  params["init"] = o.init;
  params["track_s"] = o.track_s;
  params["scheme"] = to_string(cfg.scheme);
  params["record_every"] = o.record_every;
  params["linear"] = o.linear;
  RunManifest man = RunManifest::make("simulate", params);
  man.outcome = outcome_of(checks);
  if (!o.out.empty()) write_csv(o.out, man, trajectory_csv_header(rec), trajectory_csv_rows(rec));
  if (!o.snapshots.empty()) {
    ojson snaps = ojson::array();
    for (std::size_t k = 0; k < rec.states.size(); ++k) {
      ojson s;
      s["t"] = rec.snapshot_times[k];
      s["state"] = ojson::parse(dump_state_json(rec.states[k]));
      snaps.push_back(s);
    }
    write_json(o.snapshots, man, snaps);
  }
  return finish(checks);
}

// stability ----------------------------------------------------------------

struct StabilityOpts {
  StabilityRun run;
  std::string scheme = "rk4-integrating-factor";
  std::string out;
  std::string plotdata;
  std::vector<double> eps_ladder;
};

void add_stability(CLI::App& sub, StabilityOpts& o) {
  sub.add_option("--s", o.run.s, "Sobolev index")->capture_default_str();
  sub.add_option("--eps", o.run.epsilon, "Initial H^s norm")->capture_default_str();
  sub.add_option("--modes", o.run.modes, "Truncation M")->capture_default_str();
  sub.add_option("--r", o.run.horizon_exponent, "Horizon exponent: t_end = eps^-r")->capture_default_str();
  sub.add_option("--seed", o.run.seed, "Seed")->capture_default_str();
  sub.add_option("--dt", o.run.dt, "Time step")->capture_default_str();
  sub.add_option("--threshold", o.run.threshold, "Allowed max norm ratio")->capture_default_str();
  sub.add_option("--step-budget", o.run.step_budget, "Step budget (0 unlimited)")->capture_default_str();
  sub.add_option("--record-every", o.run.record_every, "Steps between records")->capture_default_str();
  sub.add_option("--scheme", o.scheme, "rk4-integrating-factor or rk4-plain")->capture_default_str();
  sub.add_flag_function("--linear", [&o](std::int64_t n) { o.run.nonlinear = n <= 0; }, "Drop the nonlinearity");
  sub.add_option("--out", o.out, "Report CSV");
  sub.add_option("--plotdata", o.plotdata, "Long-format plot data CSV");
  sub.add_option("--eps-ladder", o.eps_ladder, "Also run these decreasing eps values and report the trend")
      ->delimiter(',');
}

int run_stability(StabilityOpts& o, Context& ctx) {
  try {
    o.run.scheme = parse_scheme(o.scheme);
    o.run.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const StabilityReport rep = stability_sweep(o.run);
  double md = 0, ed = 0;
  for (const auto& r : rep.rows) {
    md = std::max(md, r.mass_drift);
    ed = std::max(ed, r.energy_drift);
  }
  std::vector<CheckResult> checks;
  checks.push_back({"norm ratio", rep.passed,
                    "max ||u||_s / eps = " + fmt(rep.max_ratio) + " against " + fmt(o.run.threshold) + " up to t = " +
                        fmt(o.run.horizon())});
  ctx.out << "steps " << rep.steps << ", max mass drift " << fmt(md) << ", max energy drift " << fmt(ed) << '\n';

  ojson ladder = ojson::array();
  if (!o.eps_ladder.empty()) {
    std::vector<double> ratios(o.eps_ladder.size());
    const int chunks = std::min<int>(ctx.jobs, int(o.eps_ladder.size()));
    parallel_chunks(o.eps_ladder.size(), chunks, [&](int, std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) {
        StabilityRun r = o.run;
        r.epsilon = o.eps_ladder[i];
        ratios[i] = stability_sweep(r).max_ratio;
      }
    });
    const LadderTrend trend = ladder_trend(o.eps_ladder, ratios);
    for (std::size_t i = 0; i < ratios.size(); ++i) {
      ojson row;
      row["eps"] = o.eps_ladder[i];
      row["max_ratio"] = ratios[i];
      row["flagged"] = i > 0 && trend.flags[i - 1];
      ladder.push_back(row);
      ctx.out << "ladder eps " << fmt(o.eps_ladder[i]) << ": max ratio " << fmt(ratios[i])
              << (row["flagged"].get<bool>() ? " (flagged: larger than at the previous eps)" : "") << '\n';
    }
  }
  for (const auto& c : checks) print_check(ctx.out, c);

  ojson params;
  params["s"] = o.run.s;
  params["eps"] = o.run.epsilon;
  params["modes"] = o.run.modes;
  params["r"] = o.run.horizon_exponent;
  params["seed"] = o.run.seed;
  params["dt"] = o.run.dt;
  params["threshold"] = o.run.threshold;
  params["step_budget"] = o.run.step_budget;
  params["record_every"] = o.run.record_every;
  params["scheme"] = to_string(o.run.scheme);
  params["nonlinear"] = o.run.nonlinear;
  params["max_ratio"] = rep.max_ratio;
  if (!ladder.empty()) params["ladder"] = ladder;
  RunManifest man = RunManifest::make("stability", params);
  man.outcome = outcome_of(checks);
  if (!o.out.empty()) {
    std::vector<std::string> rows;
    for (const auto& r : rep.rows) rows.push_back(stability_csv_row(r));
    write_csv(o.out, man, stability_csv_header(), rows);
  }
  if (!o.plotdata.empty()) emit_plotdata(plot_points(rep), o.plotdata, man);
  return finish(checks);
}

// residual -----------------------------------------------------------------

struct ResidualOpts {
  std::string order = "both";
  int modes = 8;
  std::vector<int> exponents{2, 3, 4, 5, 6};
  double dt = 0.25;
  double tolerance = 1e-12;
  std::uint64_t seed = 7;
  std::string out;
  std::string plotdata;
};

void add_residual(CLI::App& sub, ResidualOpts& o) {
  sub.add_option("--order", o.order, "4, 6 or both")->capture_default_str();
  sub.add_option("--modes", o.modes, "Box M; the dynamics use 3M")->capture_default_str();
  sub.add_option("--exponents", o.exponents, "lambda = 2^-e for each e")->delimiter(',');
  sub.add_option("--dt", o.dt, "Initial step of the transform flows")->capture_default_str();
  sub.add_option("--tolerance", o.tolerance, "Relative step-doubling tolerance")->capture_default_str();
  sub.add_option("--seed", o.seed, "Seed of the probe state")->capture_default_str();
  sub.add_option("--out", o.out, "Report JSON");
  sub.add_option("--plotdata", o.plotdata, "Long-format plot data CSV");
}

int run_residual(const ResidualOpts& o, Context& ctx) {
  std::vector<int> orders;
  if (o.order == "4" || o.order == "both") orders.push_back(4);
  if (o.order == "6" || o.order == "both") orders.push_back(6);
  require(!orders.empty(), "--order must be 4, 6 or both");
  require(o.modes >= 2, "--modes must be at least 2");
  require(o.exponents.size() >= 2, "--exponents needs at least two values");
  FlowConfig cfg;
  cfg.dt = o.dt;
  cfg.tolerance = o.tolerance;
  cfg.validate();
  std::vector<double> lambdas;
  for (int e : o.exponents) lambdas.push_back(std::ldexp(1.0, -e));
  const FourierState q0 = residual_probe(o.modes, o.seed);

  std::vector<CheckResult> checks;
  std::vector<PlotPoint> points;
  ojson data = ojson::array();
  for (int order : orders) {
    const ResidualSetup setup = make_residual_setup(o.modes, order, ctx.jobs);
    const ScalingReport rep = residual_scaling(q0, setup, lambdas, cfg, ctx.jobs);
    const double lo = order == 4 ? 5.7 : 7.6, hi = order == 4 ? 6.3 : 8.4;
    checks.push_back({"residual slope order " + std::to_string(order), rep.slope >= lo && rep.slope <= hi,
                      "slope " + fmt(rep.slope) + " in [" + fmt(lo) + ", " + fmt(hi) + "]"});
    for (std::size_t i = 0; i < lambdas.size(); ++i)
      ctx.out << "order " << order << " lambda 2^-" << o.exponents[i] << ": residual " << fmt(rep.residuals[i]) << '\n';
    ojson r;
    r["order"] = order;
    r["lambdas"] = rep.lambdas;
    r["residuals"] = rep.residuals;
    r["slope"] = rep.slope;
    data.push_back(r);
    const auto pts = plot_points(rep);
    points.insert(points.end(), pts.begin(), pts.end());
  }
  for (const auto& c : checks) print_check(ctx.out, c);

  ojson params;
  params["order"] = o.order;
  params["modes"] = o.modes;
  params["dynamics_truncation"] = 3 * o.modes;
  params["exponents"] = o.exponents;
  params["dt"] = o.dt;
  params["tolerance"] = o.tolerance;
  params["seed"] = o.seed;
  RunManifest man = RunManifest::make("residual", params);
  man.outcome = outcome_of(checks);
  if (!o.out.empty()) write_json(o.out, man, data);
  if (!o.plotdata.empty()) emit_plotdata(points, o.plotdata, man);
  return finish(checks);
}

// verify-all ---------------------------------------------------------------

struct VerifyOpts {
  VerifyOptions v;
  std::string report;
};

void add_verify(CLI::App& sub, VerifyOpts& o) {
  sub.add_option("--modes", o.v.truncation, "Truncation M")->capture_default_str();
  sub.add_option("--appendix-bound", o.v.appendix_bound, "Integer pair bound")->capture_default_str();
  sub.add_option("--random-pairs", o.v.random_pairs, "Random rational pairs")->capture_default_str();
  sub.add_option("--divisor-bound", o.v.divisor_bound, "Exhaustive quartic divisor bound")->capture_default_str();
  sub.add_option("--divisor-samples", o.v.divisor_samples, "Random quartic divisor samples")->capture_default_str();
  sub.add_option("--sextuple-bound", o.v.sextuple_bound, "Exhaustive sextic divisor bound")->capture_default_str();
  sub.add_option("--sextuple-samples", o.v.sextuple_samples, "Random sextic divisor samples")->capture_default_str();
  sub.add_option("--seed", o.v.seed, "Seed")->capture_default_str();
  sub.add_option("--report", o.report, "Report JSON");
}

int run_verify(VerifyOpts& o, Context& ctx) {
  require(o.v.truncation >= 2, "--modes must be at least 2");
  require(o.v.appendix_bound >= 7, "--appendix-bound must be at least 7");
  require(o.v.divisor_bound >= 1 && o.v.sextuple_bound >= 1, "sweep bounds must be positive");
  o.v.jobs = ctx.jobs;
  const auto checks = verify_all(o.v);
  for (const auto& c : checks) print_check(ctx.out, c);
  if (!o.report.empty()) {
    ojson params;
    params["modes"] = o.v.truncation;
    params["appendix_bound"] = o.v.appendix_bound;
    params["random_pairs"] = o.v.random_pairs;
    params["divisor_bound"] = o.v.divisor_bound;
    params["divisor_samples"] = o.v.divisor_samples;
    params["sextuple_bound"] = o.v.sextuple_bound;
    params["sextuple_samples"] = o.v.sextuple_samples;
    params["seed"] = o.v.seed;
    RunManifest man = RunManifest::make("verify-all", params);
    man.outcome = outcome_of(checks);
    write_json(o.report, man, checks_json(checks));
  }
  return finish(checks);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Normal form verification lab for the derivative NLS", "nf_lab"};
  app.set_version_flag("--version", build_version() + " (" + build_git_describe() + ")");
  app.require_subcommand(1);
  int jobs = 0;
  std::string config;
  app.add_option("--jobs", jobs, "Worker threads (falls back to NF_LAB_JOBS, then 1)");
  app.add_option("--config", config, "JSON file of option values; command line flags win");

  Nf4Opts nf4;
  Nf6Opts nf6;
  IdentitiesOpts ids;
  SimulateOpts sim;
  StabilityOpts stab;
  ResidualOpts res;
  VerifyOpts ver;
  std::vector<std::pair<CLI::App*, std::function<int(Context&)>>> subs;
  auto add = [&](const char* name, const char* help, auto&& setup, std::function<int(Context&)> fn) {
    CLI::App* s = app.add_subcommand(name, help);
    s->fallthrough();
    setup(*s);
    subs.emplace_back(s, std::move(fn));
  };
  add("nf4", "Order-four transform: homological equation, divisor bound, audits",
      [&](CLI::App& s) { add_nf4(s, nf4); }, [&](Context& c) { return run_nf4(nf4, c); });
  add("nf6", "Order-six transform: K, Ktilde = 0, sextic divisors, reducible terms",
      [&](CLI::App& s) { add_nf6(s, nf6); }, [&](Context& c) { return run_nf6(nf6, c); });
  add("identities", "Nine-term mu and tau identities on enumerated and random pairs",
      [&](CLI::App& s) { add_identities(s, ids); }, [&](Context& c) { return run_identities(ids, c); });
  add("simulate", "Galerkin DNLS evolution with conservation channels",
      [&](CLI::App& s) { add_simulate(s, sim); }, [&](Context& c) { return run_simulate(sim, c); });
  add("stability", "Long-time Sobolev norm ratio from small random data",
      [&](CLI::App& s) { add_stability(s, stab); }, [&](Context& c) { return run_stability(stab, c); });
  add("residual", "Scaling of the transformed Hamiltonian residual",
      [&](CLI::App& s) { add_residual(s, res); }, [&](Context& c) { return run_residual(res, c); });
  add("verify-all", "Exact verification battery",
      [&](CLI::App& s) { add_verify(s, ver); }, [&](Context& c) { return run_verify(ver, c); });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return Usage;
  }

  try {
    CLI::App* chosen = app.get_subcommands().front();
    if (!config.empty()) apply_config(app, *chosen, config);
    Context ctx{out, resolve_jobs(jobs)};
    for (auto& [s, fn] : subs)
      if (s == chosen) return fn(ctx);
    return Usage;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return Numerical;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return AssertionFailed;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return Usage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return Usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return AssertionFailed;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace nflab::cli

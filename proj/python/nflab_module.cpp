#include "nflab/cli.hpp"
#include "nflab/flows.hpp"
#include "nflab/identities.hpp"
#include "nflab/nf4.hpp"
#include "nflab/nf6.hpp"
#include "nflab/numeric_poly.hpp"
#include "nflab/stability.hpp"
#include "nflab/sweeps.hpp"
#include "nflab/verify.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace nflab;

namespace {

using StateDict = std::map<int, Complex>;

FourierState to_state(const StateDict& d, int truncation) {
  FourierState q(truncation);
  for (const auto& [j, v] : d) q[j] = v;
  return q;
}

StateDict from_state(const FourierState& q) {
  StateDict d;
  for (std::size_t s = 0; s < q.size(); ++s)
    if (q.data()[s] != Complex{}) d[q.mode_at(s)] = q.data()[s];
  return d;
}

int bound_of(const StateDict& d, int truncation) {
  if (truncation > 0) return truncation;
  int m = 1;
  for (const auto& [j, v] : d) m = std::max(m, std::abs(j));
  return m;
}

py::object fraction(const Rational& r) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(to_string(r));
}

py::dict sweep_dict(const SweepResult& s) {
  py::dict d;
  d["checked"] = s.checked;
  d["excluded"] = s.excluded;
  d["violations"] = s.violations;
  d["factorization_failures"] = s.factorization_failures;
  d["first_violation"] = s.first_violation;
  d["ok"] = s.ok();
  return d;
}

py::tuple pair_tuple(const TriplePair& p) {
  py::list x, y;
  for (const auto& v : p.x) x.append(fraction(v));
  for (const auto& v : p.y) y.append(fraction(v));
  return py::make_tuple(py::tuple(x), py::tuple(y));
}

TriplePair pair_from(const std::vector<std::string>& x, const std::vector<std::string>& y) {
  if (x.size() != 3 || y.size() != 3) throw std::invalid_argument("triples need three entries");
  TriplePair p;
  for (int i = 0; i < 3; ++i) {
    p.x[i] = parse_rational(x[i]);
    p.y[i] = parse_rational(y[i]);
  }
  return p;
}

std::vector<std::string> as_strings(const py::sequence& s) {
  std::vector<std::string> out;
  for (const auto& v : s) out.push_back(py::str(v));
  return out;
}

}  // namespace

PYBIND11_MODULE(nflab, m) {
  m.doc() = "Normal form verification lab: exact polynomial Hamiltonians, identities, DNLS flows";

  py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

  py::class_<PolyHamiltonian>(m, "Poly")
      .def_property_readonly("truncation", &PolyHamiltonian::truncation)
      .def("__len__", &PolyHamiltonian::size)
      .def("degrees", &PolyHamiltonian::degrees)
      .def("is_real_valued", &PolyHamiltonian::is_real_valued)
      .def("all_zero_momentum", &PolyHamiltonian::all_zero_momentum)
      .def(
          "coefficient",
          [](const PolyHamiltonian& p, std::vector<int> plus, std::vector<int> minus) {
            const ExactCoeff c = p.coefficient(Monomial(std::move(plus), std::move(minus)));
            return py::make_tuple(fraction(c.re()), fraction(c.im()), c.pi_power());
          },
          py::arg("plus"), py::arg("minus"), "(re, im, pi_power) with value (re + i im) pi^-pi_power")
      .def(
          "value", [](const PolyHamiltonian& p, const StateDict& q) { return NumericPoly(p).value(to_state(q, p.truncation())); },
          py::arg("state"))
      .def("to_json", [](const PolyHamiltonian& p) { return dump_poly_json(p); })
      .def("restricted", &PolyHamiltonian::restricted, py::arg("window"))
      .def("__add__", [](const PolyHamiltonian& a, const PolyHamiltonian& b) { return a + b; })
      .def("__sub__", [](const PolyHamiltonian& a, const PolyHamiltonian& b) { return a - b; })
      .def("__eq__", [](const PolyHamiltonian& a, const PolyHamiltonian& b) { return a == b; });

  m.def("load_poly_json", [](const std::string& text) { return load_poly_json(text); }, py::arg("text"));
  m.def("build_lambda", &build_lambda, py::arg("modes"));
  m.def("build_G", &build_G, py::arg("modes"));
  m.def("build_B", &build_B, py::arg("modes"));
  m.def("build_Q", &build_Q, py::arg("modes"));
  m.def("build_F4", &build_F4, py::arg("modes"));
  m.def("build_K", &build_K, py::arg("modes"));
  m.def("compute_R6", &compute_R6, py::arg("modes"), py::arg("jobs") = 1);
  m.def("build_F6", py::overload_cast<int, int>(&build_F6), py::arg("modes"), py::arg("jobs") = 1);
  m.def(
      "bracket",
      [](const PolyHamiltonian& h, const PolyHamiltonian& f, std::optional<int> window, int jobs) {
        return bracket(h, f, window, jobs);
      },
      py::arg("h"), py::arg("f"), py::arg("window") = py::none(), py::arg("jobs") = 1);
  m.def(
      "split_R6",
      [](const PolyHamiltonian& r6) {
        R6Split s = split_R6(r6);
        return py::make_tuple(s.K, s.Ktilde, s.Qtilde);
      },
      py::arg("r6"), "(K, Ktilde, Qtilde)");

  m.def(
      "sobolev_norm", [](const StateDict& q, double s, int modes) { return sobolev_norm(to_state(q, bound_of(q, modes)), SobolevIndex(s)); },
      py::arg("state"), py::arg("s"), py::arg("modes") = 0);
  m.def(
      "hamiltonian", [](const StateDict& q, int modes) { return coefficient_hamiltonian(to_state(q, bound_of(q, modes))); },
      py::arg("state"), py::arg("modes") = 0);
  m.def(
      "vector_field",
      [](const PolyHamiltonian& f, const StateDict& q) { return from_state(vector_field(f, to_state(q, f.truncation()))); },
      py::arg("f"), py::arg("state"));
  m.def(
      "random_initial_data",
      [](int modes, double s, double eps, std::uint64_t seed) { return from_state(random_initial_data(modes, s, eps, seed)); },
      py::arg("modes"), py::arg("s"), py::arg("eps"), py::arg("seed"));

  m.def(
      "divisor_bound_check",
      [](int j, int k, int l, int mm) {
        const DivisorReport r = divisor_bound_check({j, k, l, mm});
        py::dict d;
        d["divisor"] = r.divisor;
        d["lower_bound"] = r.lower_bound;
        d["bound_holds"] = r.bound_holds;
        d["factorization_holds"] = r.factorization_holds;
        return d;
      },
      py::arg("j"), py::arg("k"), py::arg("l"), py::arg("m"));
  m.def("divisor_sweep", [](int bound, int jobs) { return sweep_dict(divisor_sweep_exhaustive(bound, jobs)); },
        py::arg("bound"), py::arg("jobs") = 1);
  m.def("sextuple_sweep", [](int bound, int jobs) { return sweep_dict(sextuple_sweep_exhaustive(bound, jobs)); },
        py::arg("bound"), py::arg("jobs") = 1);
  m.def(
      "omega_sweep",
      [](int r, int bound, std::vector<int> s_values, int jobs) {
        return sweep_dict(omega_sweep_exhaustive(r, bound, s_values, jobs));
      },
      py::arg("r"), py::arg("bound"), py::arg("s_values"), py::arg("jobs") = 1);

  m.def("tau", [](long j, long k, long l) { return fraction(tau(j, k, l)); }, py::arg("j"), py::arg("k"), py::arg("l"));
  m.def(
      "verify_lemma_appendix",
      [](const py::sequence& x, const py::sequence& y) {
        const LemmaSums s = verify_lemma_appendix(pair_from(as_strings(x), as_strings(y)));
        return py::make_tuple(fraction(s.I), fraction(s.II));
      },
      py::arg("x"), py::arg("y"), "Nine-term sums (I, II); entries may be ints, Fractions or 'p/q' strings");
  m.def(
      "enumerate_triple_pairs",
      [](int bound, bool positive_only) {
        py::list out;
        for (const auto& p : enumerate_triple_pairs(bound, positive_only)) out.append(pair_tuple(p));
        return out;
      },
      py::arg("bound"), py::arg("positive_only") = false);
  m.def(
      "enumerate_resonant",
      [](int modes) {
        std::vector<std::array<int, 6>> out;
        for (const auto& s : enumerate_resonant(modes)) out.push_back(s.j);
        return out;
      },
      py::arg("modes"));
  m.def(
      "verify_Ktilde_zero",
      [](int modes, int jobs) {
        const KtildeReport r = verify_Ktilde_zero(modes, jobs);
        py::dict d;
        d["resonant_monomials"] = r.resonant_monomials;
        d["nonzero"] = r.nonzero.size();
        d["tau_sum_failures"] = r.tau_sum_failures.size();
        d["ok"] = r.ok();
        return d;
      },
      py::arg("modes"), py::arg("jobs") = 1);

  m.def(
      "omega_s", [](std::vector<int> t, double s) { return omega_s(IndexTuple(std::move(t)), SobolevIndex(s)); },
      py::arg("indices"), py::arg("s"));

  m.def(
      "simulate",
      [](const StateDict& q0, int modes, double dt, double t_end, std::vector<double> track_s, int record_every,
         const std::string& scheme, bool nonlinear) {
        FlowConfig cfg;
        cfg.dt = dt;
        cfg.t_end = t_end;
        cfg.track_s = std::move(track_s);
        cfg.record_every = record_every;
        cfg.scheme = parse_scheme(scheme);
        cfg.nonlinear = nonlinear;
        TrajectoryRecord r;
        {
          py::gil_scoped_release release;
          r = dnls_evolve(to_state(q0, bound_of(q0, modes)), cfg);
        }
        py::dict d;
        d["times"] = r.times;
        d["mass"] = r.mass;
        d["momentum"] = r.momentum;
        d["energy"] = r.energy;
        d["norms"] = r.norms;
        d["steps"] = r.steps;
        return d;
      },
      py::arg("state"), py::arg("modes") = 0, py::arg("dt") = 1e-3, py::arg("t_end") = 1.0,
      py::arg("track_s") = std::vector<double>{}, py::arg("record_every") = 1,
      py::arg("scheme") = "rk4-integrating-factor", py::arg("nonlinear") = true);

  m.def(
      "stability",
      [](double s, double eps, int modes, double r, std::uint64_t seed, double dt, double threshold, bool nonlinear) {
        StabilityRun run;
        run.s = s;
        run.epsilon = eps;
        run.modes = modes;
        run.horizon_exponent = r;
        run.seed = seed;
        run.dt = dt;
        run.threshold = threshold;
        run.nonlinear = nonlinear;
        StabilityReport rep;
        {
          py::gil_scoped_release release;
          rep = stability_sweep(run);
        }
        py::dict d;
        d["max_ratio"] = rep.max_ratio;
        d["passed"] = rep.passed;
        d["steps"] = rep.steps;
        std::vector<double> t, ratio;
        for (const auto& row : rep.rows) {
          t.push_back(row.t);
          ratio.push_back(row.norm_ratio);
        }
        d["t"] = t;
        d["norm_ratio"] = ratio;
        return d;
      },
      py::arg("s") = 3.0, py::arg("eps") = 0.2, py::arg("modes") = 32, py::arg("r") = 4.0, py::arg("seed") = 7,
      py::arg("dt") = 0.01, py::arg("threshold") = 3.0, py::arg("nonlinear") = true);

  m.def(
      "residual_scaling",
      [](int order, int modes, std::vector<int> exponents, double dt, double tolerance, std::uint64_t seed, int jobs) {
        FlowConfig cfg;
        cfg.dt = dt;
        cfg.tolerance = tolerance;
        std::vector<double> lambdas;
        for (int e : exponents) lambdas.push_back(std::ldexp(1.0, -e));
        ScalingReport r;
        {
          py::gil_scoped_release release;
          r = residual_scaling(residual_probe(modes, seed), make_residual_setup(modes, order, jobs), lambdas, cfg, jobs);
        }
        py::dict d;
        d["lambdas"] = r.lambdas;
        d["residuals"] = r.residuals;
        d["slope"] = r.slope;
        return d;
      },
      py::arg("order") = 4, py::arg("modes") = 8, py::arg("exponents") = std::vector<int>{2, 3, 4, 5, 6},
      py::arg("dt") = 0.25, py::arg("tolerance") = 1e-12, py::arg("seed") = 7, py::arg("jobs") = 1);

  m.def(
      "verify_all",
      [](int modes, int appendix_bound, std::uint64_t random_pairs, int divisor_bound, std::uint64_t divisor_samples,
         int sextuple_bound, std::uint64_t sextuple_samples, int jobs) {
        VerifyOptions o;
        o.truncation = modes;
        o.appendix_bound = appendix_bound;
        o.random_pairs = random_pairs;
        o.divisor_bound = divisor_bound;
        o.divisor_samples = divisor_samples;
        o.sextuple_bound = sextuple_bound;
        o.sextuple_samples = sextuple_samples;
        o.jobs = jobs;
        std::vector<CheckResult> checks;
        {
          py::gil_scoped_release release;
          checks = verify_all(o);
        }
        py::list out;
        for (const auto& c : checks) {
          py::dict d;
          d["name"] = c.name;
          d["passed"] = c.passed;
          d["detail"] = c.detail;
          out.append(d);
        }
        return out;
      },
      py::arg("modes") = 8, py::arg("appendix_bound") = 30, py::arg("random_pairs") = 10'000,
      py::arg("divisor_bound") = 20, py::arg("divisor_samples") = 100'000, py::arg("sextuple_bound") = 8,
      py::arg("sextuple_samples") = 100'000, py::arg("jobs") = 1);

  m.def(
      "cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs nf_lab in process: (exit code, stdout, stderr)");
}

#include "nflab/sweeps.hpp"

#include "nflab/parallel.hpp"
#include "nflab/rng.hpp"
#include "nflab/stability.hpp"

#include <sstream>

namespace nflab {

void SweepResult::merge(const SweepResult& other) {
  checked += other.checked;
  excluded += other.excluded;
  violations += other.violations;
  factorization_failures += other.factorization_failures;
  if (first_violation.empty()) first_violation = other.first_violation;
}

namespace {

template <class Container>
std::string describe(const Container& c) {
  std::ostringstream os;
  os << '(';
  bool first = true;
  for (auto v : c) {
    if (!first) os << ',';
    os << v;
    first = false;
  }
  os << ')';
  return os.str();
}

void record(SweepResult& r, const DivisorReport& d) {
  ++r.checked;
  if (!d.bound_holds) ++r.violations;
  if (!d.factorization_holds) ++r.factorization_failures;
  if ((!d.bound_holds || !d.factorization_holds) && r.first_violation.empty())
    r.first_violation = describe(std::array<int, 4>{d.tuple.j, d.tuple.k, d.tuple.l, d.tuple.m});
}

void record(SweepResult& r, const Sextuple& t) {
  const SextupleReport s = sextuple_bound_check(t);
  if (s.kind == SextupleCase::Excluded) {
    ++r.excluded;
    return;
  }
  ++r.checked;
  if (!s.bound_holds) {
    ++r.violations;
    if (r.first_violation.empty()) r.first_violation = describe(t.j);
  }
}

void record(SweepResult& r, const IndexTuple& t, int s) {
  ++r.checked;
  if (!omega_bound_check(t, SobolevIndex(s)).holds) {
    ++r.violations;
    if (r.first_violation.empty()) r.first_violation = describe(t.entries()) + " s=" + std::to_string(s);
  }
}

std::vector<int> nonzero_range(int bound) {
  std::vector<int> v;
  for (int x = -bound; x <= bound; ++x)
    if (x != 0) v.push_back(x);
  return v;
}

template <class Fn>
SweepResult run_chunks(std::size_t n, int jobs, Fn&& fn) {
  const int chunks = resolve_jobs(jobs);
  std::vector<SweepResult> parts(static_cast<std::size_t>(std::max(1, chunks)));
  parallel_chunks(n, chunks, [&](int c, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) fn(parts[static_cast<std::size_t>(c)], i);
  });
  SweepResult total;
  for (const auto& p : parts) total.merge(p);
  return total;
}

long nonzero_draw(CounterRng& rng, long max_entry) {
  for (;;) {
    const long x = rng.uniform_int(-max_entry, max_entry);
    if (x != 0) return x;
  }
}

}  // namespace

SweepResult divisor_sweep_exhaustive(int bound, int jobs, const std::function<void(const DivisorReport&)>& on_report) {
  const auto vals = nonzero_range(bound);
  auto visit = [&](SweepResult& r, std::size_t i, const std::function<void(const DivisorReport&)>& cb) {
    const int j = vals[i];
    for (int k : vals)
      for (int l : vals) {
        const int m = j - k + l;
        if (m == 0 || std::abs(m) > bound) continue;
        const Quadruple t{j, k, l, m};
        if (!t.in_delta()) continue;
        const DivisorReport d = divisor_bound_check(t);
        if (cb) cb(d);
        record(r, d);
      }
  };
  if (on_report) {
    SweepResult r;
    for (std::size_t i = 0; i < vals.size(); ++i) visit(r, i, on_report);
    return r;
  }
  return run_chunks(vals.size(), jobs, [&](SweepResult& r, std::size_t i) { visit(r, i, {}); });
}

SweepResult divisor_sweep_random(std::uint64_t samples, long max_entry, std::uint64_t seed, int jobs) {
  const CounterRng root(seed);
  return run_chunks(samples, jobs, [&](SweepResult& r, std::size_t i) {
    CounterRng rng = root.stream(i);
    for (;;) {
      const long j = nonzero_draw(rng, max_entry), k = nonzero_draw(rng, max_entry), l = nonzero_draw(rng, max_entry);
      const long m = j - k + l;
      if (m == 0 || std::labs(m) > max_entry) continue;
      const Quadruple t{int(j), int(k), int(l), int(m)};
      if (!t.in_delta()) continue;
      record(r, divisor_bound_check(t));
      return;
    }
  });
}

SweepResult sextuple_sweep_exhaustive(int bound, int jobs) {
  const auto vals = nonzero_range(bound);
  return run_chunks(vals.size(), jobs, [&](SweepResult& r, std::size_t i) {
    Sextuple t{};
    t.j[0] = vals[i];
    for (int b : vals)
      for (int c : vals)
        for (int d : vals)
          for (int e : vals) {
            const int f = t.j[0] - b + c - d + e;
            if (f == 0 || std::abs(f) > bound) continue;
            t.j = {t.j[0], b, c, d, e, f};
            if (!t.in_delta_tilde()) continue;
            record(r, t);
          }
  });
}

SweepResult sextuple_sweep_random(std::uint64_t samples, long max_entry, std::uint64_t seed, int jobs) {
  const CounterRng root(seed);
  // Odd samples put one large pair in the first two slots with small partners,
  // the configuration where the excluded case and the tight cases live.
  const long small = std::min(10L, max_entry);
  return run_chunks(samples, jobs, [&](SweepResult& r, std::size_t i) {
    CounterRng rng = root.stream(i);
    for (;;) {
      Sextuple t{};
      if (i % 2 == 0) {
        for (int a = 0; a < 5; ++a) t.j[a] = int(nonzero_draw(rng, max_entry));
        const long f = long(t.j[0]) - t.j[1] + t.j[2] - t.j[3] + t.j[4];
        if (f == 0 || std::labs(f) > max_entry) continue;
        t.j[5] = int(f);
      } else {
        const long n = rng.uniform_int(1, max_entry);
        for (int a = 2; a < 6; ++a) t.j[a] = int(nonzero_draw(rng, small));
        t.j[0] = int(n);
        const long second = n + t.j[2] - t.j[3] + t.j[4] - t.j[5];
        if (second == 0 || std::labs(second) > max_entry) continue;
        t.j[1] = int(second);
      }
      if (!t.in_delta_tilde()) continue;
      record(r, t);
      return;
    }
  });
}

SweepResult omega_sweep_exhaustive(int r, int bound, const std::vector<int>& s_values, int jobs) {
  if (r < 2) throw std::invalid_argument("omega sweep needs r >= 2");
  const auto vals = nonzero_range(bound);
  const int free = 2 * r - 1;
  return run_chunks(vals.size(), jobs, [&](SweepResult& res, std::size_t i) {
    std::vector<std::size_t> idx(static_cast<std::size_t>(free - 1), 0);
    std::vector<int> e(static_cast<std::size_t>(2 * r));
    for (;;) {
      e[0] = vals[i];
      long last = e[0];
      for (int a = 1; a < free; ++a) {
        e[static_cast<std::size_t>(a)] = vals[idx[static_cast<std::size_t>(a - 1)]];
        last += a % 2 == 0 ? e[static_cast<std::size_t>(a)] : -e[static_cast<std::size_t>(a)];
      }
      if (last != 0 && std::labs(last) <= bound) {
        e.back() = int(last);
        const IndexTuple t(e);
        for (int s : s_values) record(res, t, s);
      }
      std::size_t a = 0;
      while (a < idx.size() && ++idx[a] == vals.size()) idx[a++] = 0;
      if (a == idx.size()) break;
    }
  });
}

SweepResult omega_sweep_random(std::uint64_t samples, const std::vector<int>& r_values, long max_entry,
                               const std::vector<int>& s_values, std::uint64_t seed, int jobs) {
  if (r_values.empty() || s_values.empty()) throw std::invalid_argument("omega sweep needs r and s values");
  const CounterRng root(seed);
  return run_chunks(samples, jobs, [&](SweepResult& res, std::size_t i) {
    CounterRng rng = root.stream(i);
    const int r = r_values[static_cast<std::size_t>(rng.uniform_int(0, long(r_values.size()) - 1))];
    const int s = s_values[static_cast<std::size_t>(rng.uniform_int(0, long(s_values.size()) - 1))];
    std::vector<int> e(static_cast<std::size_t>(2 * r));
    for (;;) {
      long last = 0;
      for (int a = 0; a + 1 < 2 * r; ++a) {
        e[static_cast<std::size_t>(a)] = int(nonzero_draw(rng, max_entry));
        last += a % 2 == 0 ? e[static_cast<std::size_t>(a)] : -e[static_cast<std::size_t>(a)];
      }
      if (last == 0 || std::labs(last) > max_entry) continue;
      e.back() = int(last);
      record(res, IndexTuple(e), s);
      return;
    }
  });
}

}  // namespace nflab

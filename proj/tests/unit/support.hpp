#pragma once

#include "nflab/modes.hpp"
#include "nflab/poly.hpp"
#include "nflab/rng.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

namespace testing_support {

using namespace nflab;

inline FourierState random_state(int m, std::uint64_t seed, double scale = 1.0) {
  CounterRng rng(seed);
  FourierState q(m);
  for (int j = -m; j <= m; ++j)
    if (j != 0) q[j] = scale * Complex(2 * rng.uniform() - 1, 2 * rng.uniform() - 1);
  return q;
}

inline Rational small_rational(CounterRng& rng) { return make_rational(rng.uniform_int(-9, 9), rng.uniform_int(1, 5)); }

/// Real-valued polynomial with `terms` random zero-momentum monomials of degree 2r.
inline PolyHamiltonian random_poly(int m, int r, int terms, std::uint64_t seed) {
  CounterRng rng(seed);
  PolyHamiltonian p(m);
  auto draw = [&] {
    for (;;) {
      const long x = rng.uniform_int(-m, m);
      if (x != 0) return int(x);
    }
  };
  int added = 0;
  while (added < terms) {
    std::vector<int> plus, minus;
    long balance = 0;
    for (int i = 0; i < r; ++i) {
      plus.push_back(draw());
      balance += plus.back();
    }
    for (int i = 0; i + 1 < r; ++i) {
      minus.push_back(draw());
      balance -= minus.back();
    }
    if (balance == 0 || std::labs(balance) > m) continue;
    minus.push_back(int(balance));
    const Monomial mono(plus, minus);
    if (mono == mono.conj()) {
      p.add_term(mono, ExactCoeff::real(small_rational(rng)));
    } else {
      const ExactCoeff c(small_rational(rng), small_rational(rng));
      p.add_term(mono, c);
      p.add_term(mono.conj(), c.conj());
    }
    ++added;
  }
  return p;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace testing_support

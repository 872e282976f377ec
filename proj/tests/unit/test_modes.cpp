#include "nflab/modes.hpp"
#include "nflab/numeric_poly.hpp"
#include "nflab/poly.hpp"

#include "oracles.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace nflab;
using testing_support::random_state;

namespace {

FourierState two_mode() {
  FourierState q(2);
  q[1] = 1.0;
  q[-2] = Complex(0, 2);
  return q;
}

}  // namespace

TEST_CASE("mode index and slots") {
  CHECK_THROWS_AS(ModeIndex(0), std::invalid_argument);
  CHECK(ModeIndex(-3).value() == -3);
  CHECK_THROWS_AS(SobolevIndex(-0.5), std::invalid_argument);
  CHECK_THROWS_AS(FourierState(0), std::invalid_argument);

  FourierState q(3);
  CHECK(q.size() == 6);
  CHECK_THROWS_AS(q[0], std::out_of_range);
  CHECK_THROWS_AS(q[4], std::out_of_range);
  for (std::size_t s = 0; s < q.size(); ++s) CHECK(FourierState::slot(q.mode_at(s), 3) == s);
  CHECK(q.mode_at(0) == -3);
  CHECK(q.mode_at(5) == 3);
  CHECK(q.empty());
  CHECK(q.support_bound() == 0);
  q[-2] = 1.0;
  CHECK(q.support_bound() == 2);
  CHECK(q.at(ModeIndex(-2)) == Complex(1.0));
  CHECK(q.resized(5)[-2] == Complex(1.0));
  CHECK(q.resized(1).empty());
}

TEST_CASE("sobolev norm, mass and Lambda") {
  const FourierState q = two_mode();
  CHECK(sobolev_norm(q, SobolevIndex(1)) == doctest::Approx(oracle::sobolev_two_mode_s1).epsilon(1e-15));
  CHECK(sobolev_norm(q, SobolevIndex(0)) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));
  CHECK(lambda_energy(q) == oracle::lambda_two_mode);
  CHECK(mass(q) == 5.0);
  CHECK(sobolev_norm(FourierState(4), SobolevIndex(2)) == 0.0);

  // monotone in s since |j| >= 1
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const FourierState r = random_state(6, seed);
    double prev = 0.0;
    for (double s : {0.0, 0.5, 1.0, 1.5, 2.0, 3.0}) {
      const double n = sobolev_norm(r, SobolevIndex(s));
      CHECK(n >= prev);
      prev = n;
    }
  }
}

TEST_CASE("physical evaluation") {
  FourierState q(1);
  q[1] = 1.0;
  CHECK(std::abs(eval_physical(q, 0.0) - 1.0 / std::sqrt(2 * oracle::pi)) < 1e-15);
  CHECK(std::abs(eval_physical(q, oracle::pi / 2) - Complex(0, 1) / std::sqrt(2 * oracle::pi)) < 1e-15);

  const FourierState r = random_state(7, 3);
  const auto samples = sample_physical(r, 15);
  CHECK(l2_distance(state_from_samples(samples, 7), r) < 1e-13);
  CHECK_THROWS_AS(state_from_samples(std::span<const Complex>(samples).first(14), 7), std::invalid_argument);
}

TEST_CASE("Hamiltonian in both representations") {
  FourierState unit(1);
  unit[1] = 1.0;
  CHECK(hamiltonian_physical(unit, 5) == doctest::Approx(oracle::hamiltonian_unit_mode).epsilon(1e-14));
  CHECK(coefficient_hamiltonian(unit) == doctest::Approx(oracle::hamiltonian_unit_mode).epsilon(1e-14));
  CHECK_THROWS_AS(hamiltonian_physical(unit, 4), std::invalid_argument);

  for (int m : {2, 5, 8, 16}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const FourierState q = random_state(m, 100 * m + seed);
      const double phys = hamiltonian_physical(q, 4 * m + 1);
      const double coeff = coefficient_hamiltonian(q);
      CHECK(std::abs(phys - coeff) <= 1e-10 * std::max(1.0, std::abs(coeff)));
      CHECK(quartic_energy(q) == doctest::Approx(evaluate_real(build_G(m), q)).epsilon(1e-12));
    }
  }
}

TEST_CASE("state JSON") {
  const FourierState q = two_mode();
  const FourierState back = load_state_json(dump_state_json(q));
  CHECK(back.truncation() == 2);
  CHECK(l2_distance(back, q) == 0.0);
  CHECK(load_state_json(dump_state_json(q, true), 5).truncation() == 5);

  CHECK_THROWS_AS(load_state_json(R"([{"j":0,"re":1,"im":0}])"), std::invalid_argument);
  CHECK_THROWS_AS(load_state_json(R"([{"j":1,"re":1,"im":0},{"j":1,"re":0,"im":1}])"), std::invalid_argument);
  CHECK_THROWS_AS(load_state_json(R"([{"j":4,"re":1,"im":0}])", 3), std::invalid_argument);
  CHECK_THROWS_AS(load_state_json(R"({"j":1})"), std::invalid_argument);
}

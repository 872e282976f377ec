#include "nflab/modes.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

namespace nflab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

const double kInvSqrtTwoPi = 1.0 / std::sqrt(kTwoPi);

}  // namespace

ModeIndex::ModeIndex(int j) : j_(j) {
  if (j == 0) throw std::invalid_argument("mode index 0 is excluded from the phase space");
}

SobolevIndex::SobolevIndex(double s) : s_(s) {
  if (!(s >= 0.0)) throw std::invalid_argument("Sobolev index must be nonnegative");
}

FourierState::FourierState(int truncation) : m_(truncation) {
  if (truncation < 1) throw std::invalid_argument("truncation must be at least 1");
  amp_.assign(static_cast<std::size_t>(2 * truncation), Complex{});
}

std::size_t FourierState::slot(int mode, int truncation) {
  if (mode == 0 || std::abs(mode) > truncation) {
    throw std::out_of_range("mode " + std::to_string(mode) + " outside 1 <= |j| <= " +
                            std::to_string(truncation));
  }
  return static_cast<std::size_t>(mode < 0 ? mode + truncation : mode + truncation - 1);
}

int FourierState::mode_at(std::size_t s, int truncation) {
  const int i = static_cast<int>(s);
  return i < truncation ? i - truncation : i - truncation + 1;
}

Complex& FourierState::operator[](int mode) { return amp_[slot(mode, m_)]; }

const Complex& FourierState::operator[](int mode) const { return amp_[slot(mode, m_)]; }

Complex FourierState::at(ModeIndex j) const { return (*this)[j.value()]; }

bool FourierState::empty() const {
  return std::all_of(amp_.begin(), amp_.end(), [](const Complex& c) { return c == Complex{}; });
}

FourierState FourierState::resized(int truncation) const {
  FourierState out(truncation);
  const int common = std::min(truncation, m_);
  for (int j = -common; j <= common; ++j) {
    if (j != 0) out[j] = (*this)[j];
  }
  return out;
}

void FourierState::check_same_truncation(const FourierState& other) const {
  if (other.m_ != m_) throw std::invalid_argument("truncation mismatch between states");
}

FourierState& FourierState::operator+=(const FourierState& other) {
  check_same_truncation(other);
  for (std::size_t i = 0; i < amp_.size(); ++i) amp_[i] += other.amp_[i];
  return *this;
}

FourierState& FourierState::operator-=(const FourierState& other) {
  check_same_truncation(other);
  for (std::size_t i = 0; i < amp_.size(); ++i) amp_[i] -= other.amp_[i];
  return *this;
}

FourierState& FourierState::operator*=(Complex scale) {
  for (auto& a : amp_) a *= scale;
  return *this;
}

int FourierState::support_bound() const {
  int bound = 0;
  for (std::size_t s = 0; s < amp_.size(); ++s) {
    if (amp_[s] != Complex{}) bound = std::max(bound, std::abs(mode_at(s)));
  }
  return bound;
}

double l2_distance(const FourierState& a, const FourierState& b) {
  if (a.truncation() != b.truncation()) throw std::invalid_argument("truncation mismatch between states");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::norm(a.data()[i] - b.data()[i]);
  return std::sqrt(acc);
}

double sobolev_norm(const FourierState& state, SobolevIndex s) {
  double acc = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    const double j = std::abs(state.mode_at(i));
    acc += std::norm(state.data()[i]) * std::pow(j, 2.0 * s.value());
  }
  return std::sqrt(acc);
}

double mass(const FourierState& state) {
  double acc = 0.0;
  for (const auto& a : state.data()) acc += std::norm(a);
  return acc;
}

double lambda_energy(const FourierState& state) {
  double acc = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) acc += state.mode_at(i) * std::norm(state.data()[i]);
  return acc;
}

Complex eval_physical(const FourierState& state, double x) {
  Complex acc{};
  for (std::size_t i = 0; i < state.size(); ++i) {
    acc += state.data()[i] * std::polar(1.0, state.mode_at(i) * x);
  }
  return acc * kInvSqrtTwoPi;
}

std::vector<Complex> sample_physical(const FourierState& state, std::size_t n) {
  std::vector<Complex> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = eval_physical(state, kTwoPi * double(k) / double(n));
  return out;
}

FourierState state_from_samples(std::span<const Complex> samples, int truncation) {
  const std::size_t n = samples.size();
  if (n < static_cast<std::size_t>(2 * truncation + 1)) {
    throw std::invalid_argument("need at least 2M+1 samples to recover modes up to M");
  }
  FourierState out(truncation);
  const double w = std::sqrt(kTwoPi) / double(n);
  for (int j = -truncation; j <= truncation; ++j) {
    if (j == 0) continue;
    Complex acc{};
    for (std::size_t k = 0; k < n; ++k) acc += samples[k] * std::polar(1.0, -j * kTwoPi * double(k) / double(n));
    out[j] = w * acc;
  }
  return out;
}

double hamiltonian_physical(const FourierState& state, int quadrature_points) {
  const int m = state.truncation();
  if (quadrature_points < 4 * m + 1) {
    throw std::invalid_argument("quadrature needs at least 4M+1 = " + std::to_string(4 * m + 1) + " points");
  }
  const double h = kTwoPi / quadrature_points;
  Complex kinetic{};
  double quartic = 0.0;
  for (int k = 0; k < quadrature_points; ++k) {
    const double x = h * k;
    Complex u{}, ux{};
    for (std::size_t i = 0; i < state.size(); ++i) {
      const int j = state.mode_at(i);
      const Complex term = state.data()[i] * std::polar(1.0, j * x);
      u += term;
      ux += Complex(0.0, j) * term;
    }
    u *= kInvSqrtTwoPi;
    ux *= kInvSqrtTwoPi;
    kinetic += ux * std::conj(u);
    quartic += std::norm(u) * std::norm(u);
  }
  const Complex value = Complex(0.0, -1.0) * kinetic * h + 0.5 * quartic * h;
  return value.real();
}

double quartic_energy(const FourierState& state) {
  const int m = state.truncation();
  Complex acc{};
  for (int j = -m; j <= m; ++j) {
    if (j == 0) continue;
    for (int k = -m; k <= m; ++k) {
      if (k == 0) continue;
      for (int l = -m; l <= m; ++l) {
        const int mm = j - k + l;
        if (l == 0 || mm == 0 || std::abs(mm) > m) continue;
        acc += state[j] * std::conj(state[k]) * state[l] * std::conj(state[mm]);
      }
    }
  }
  return acc.real() / (4.0 * std::numbers::pi);
}

double coefficient_hamiltonian(const FourierState& state) { return lambda_energy(state) + quartic_energy(state); }

FourierState load_state_json(const std::string& text, std::optional<int> truncation) {
  const auto doc = nlohmann::json::parse(text);
  const auto& entries = doc.is_object() && doc.contains("data") ? doc.at("data") : doc;
  if (!entries.is_array()) throw std::invalid_argument("state JSON must be an array of {j, re, im}");
  std::set<int> seen;
  int bound = 0;
  for (const auto& e : entries) {
    const int j = e.at("j").get<int>();
    if (j == 0) throw std::invalid_argument("state JSON contains mode j = 0");
    if (!seen.insert(j).second) throw std::invalid_argument("state JSON contains duplicate mode " + std::to_string(j));
    bound = std::max(bound, std::abs(j));
  }
  const int m = truncation.value_or(std::max(bound, 1));
  if (bound > m) throw std::invalid_argument("state JSON mode exceeds truncation " + std::to_string(m));
  FourierState out(m);
  for (const auto& e : entries) out[e.at("j").get<int>()] = Complex(e.at("re").get<double>(), e.at("im").get<double>());
  return out;
}

std::string dump_state_json(const FourierState& state, bool include_zeros) {
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t i = 0; i < state.size(); ++i) {
    const Complex a = state.data()[i];
    if (!include_zeros && a == Complex{}) continue;
    arr.push_back({{"j", state.mode_at(i)}, {"re", a.real()}, {"im", a.imag()}});
  }
  return arr.dump();
}

}  // namespace nflab

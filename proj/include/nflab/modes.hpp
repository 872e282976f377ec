#pragma once

#include <complex>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nflab {

using Complex = std::complex<double>;

/// A Fourier mode j of the zero-mean phase space; j == 0 is rejected.
class ModeIndex {
 public:
  explicit ModeIndex(int j);
  int value() const { return j_; }
  friend auto operator<=>(const ModeIndex&, const ModeIndex&) = default;

 private:
  int j_;
};

class SobolevIndex {
 public:
  explicit SobolevIndex(double s);
  double value() const { return s_; }

 private:
  double s_;
};

/// Galerkin-truncated phase-space point: amplitudes q_j for 1 <= |j| <= M.
///
/// Storage is dense, slot order -M, ..., -1, 1, ..., M. Mode 0 has no slot, so
/// the zero-mean constraint holds structurally.
class FourierState {
 public:
  explicit FourierState(int truncation);

  int truncation() const { return m_; }
  std::size_t size() const { return amp_.size(); }

  static std::size_t slot(int mode, int truncation);
  static int mode_at(std::size_t slot, int truncation);

  int mode_at(std::size_t s) const { return mode_at(s, m_); }

  /// Throws std::out_of_range for j == 0 or |j| > M.
  Complex& operator[](int mode);
  const Complex& operator[](int mode) const;
  Complex at(ModeIndex j) const;

  std::span<Complex> data() { return amp_; }
  std::span<const Complex> data() const { return amp_; }

  /// True when every amplitude is zero.
  bool empty() const;

  /// Zero-extends or truncates to a new mode bound.
  FourierState resized(int truncation) const;

  FourierState& operator+=(const FourierState& other);
  FourierState& operator-=(const FourierState& other);
  FourierState& operator*=(Complex scale);
  friend FourierState operator+(FourierState a, const FourierState& b) { return a += b; }
  friend FourierState operator-(FourierState a, const FourierState& b) { return a -= b; }
  friend FourierState operator*(Complex s, FourierState a) { return a *= s; }

  /// Largest |j| with a nonzero amplitude, 0 for the empty state.
  int support_bound() const;

 private:
  void check_same_truncation(const FourierState& other) const;

  int m_;
  std::vector<Complex> amp_;
};

/// l2 distance between two states with equal truncation.
double l2_distance(const FourierState& a, const FourierState& b);

double sobolev_norm(const FourierState& state, SobolevIndex s);

/// Mass: sum |q_j|^2.
double mass(const FourierState& state);

/// Lambda = sum j |q_j|^2.
double lambda_energy(const FourierState& state);

/// u(x) = sum q_j e^{ijx} / sqrt(2 pi).
Complex eval_physical(const FourierState& state, double x);

/// Samples u on n uniform points x_k = 2 pi k / n.
std::vector<Complex> sample_physical(const FourierState& state, std::size_t n);

/// Inverse of sample_physical for band-limited data; requires n >= 2M + 1.
FourierState state_from_samples(std::span<const Complex> samples, int truncation);

/// H = -i int u_x conj(u) dx + 1/2 int |u|^4 dx by trapezoid quadrature on
/// quadrature_points uniform nodes. The rule is exact for band-limited data
/// once quadrature_points >= 4M + 1; fewer points throw std::invalid_argument.
double hamiltonian_physical(const FourierState& state, int quadrature_points);

/// G = 1/(4 pi) sum_{j-k+l-m=0} q_j conj(q_k) q_l conj(q_m), summed directly over
/// ordered index triples.
double quartic_energy(const FourierState& state);

/// Lambda + G evaluated in coefficient space.
double coefficient_hamiltonian(const FourierState& state);

/// JSON array of {"j": int, "re": float, "im": float}. Entries with j == 0,
/// duplicates, or |j| above an explicit truncation are rejected with
/// std::invalid_argument. Without a truncation the largest |j| is used.
FourierState load_state_json(const std::string& text, std::optional<int> truncation = std::nullopt);
std::string dump_state_json(const FourierState& state, bool include_zeros = false);

}  // namespace nflab

#pragma once

#include "nflab/exact.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nflab {

/// q_{p1} ... q_{pr} conj(q_{m1}) ... conj(q_{mr}) with both index lists kept as
/// sorted multisets, so structurally equal monomials compare equal.
class Monomial {
 public:
  Monomial(std::vector<int> plus, std::vector<int> minus);

  const std::vector<int>& plus() const { return plus_; }
  const std::vector<int>& minus() const { return minus_; }

  int r() const { return static_cast<int>(plus_.size()); }
  int degree() const { return 2 * r(); }

  long momentum() const;
  /// sum over plus of j^2 minus sum over minus of j^2.
  long square_divisor() const;
  int max_abs() const;

  Monomial conj() const { return Monomial(minus_, plus_, Presorted{}); }

  /// Number of ordered index tuples (j1, ..., j2r) collapsing to this monomial.
  long orderings() const;

  /// Index tuple (plus_1, minus_1, plus_2, minus_2, ...).
  std::vector<int> interleaved() const;

  std::string to_string() const;

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  struct Presorted {};
  Monomial(std::vector<int> plus, std::vector<int> minus, Presorted)
      : plus_(std::move(plus)), minus_(std::move(minus)) {}

  std::vector<int> plus_;
  std::vector<int> minus_;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

/// Action-only monomial: plus and minus agree as multisets.
bool is_normal_form(const Monomial& m);

/// Ordered tuple (j1, ..., j2r) of nonzero modes, odd slots unbarred.
class IndexTuple {
 public:
  explicit IndexTuple(std::vector<int> entries);

  const std::vector<int>& entries() const { return entries_; }
  int r() const { return static_cast<int>(entries_.size() / 2); }

  long momentum() const;
  bool zero_momentum() const { return momentum() == 0; }
  long square_divisor() const;

  /// j1* >= j2* >= ... >= j2r*: decreasing rearrangement of |j_i|.
  std::vector<long> rearranged() const;

  Monomial monomial() const;

 private:
  std::vector<int> entries_;
};

/// Exact polynomial in (q, conj q) over modes 1 <= |j| <= M.
///
/// Terms are graded by degree. Zero coefficients are never stored.
class PolyHamiltonian {
 public:
  using TermMap = std::map<Monomial, ExactCoeff>;

  explicit PolyHamiltonian(int truncation);

  int truncation() const { return m_; }

  /// Adds into any existing coefficient. Throws std::out_of_range when the
  /// monomial leaves the truncation.
  void add_term(const Monomial& m, const ExactCoeff& c);

  ExactCoeff coefficient(const Monomial& m) const;

  const std::map<int, TermMap>& graded() const { return graded_; }
  std::vector<int> degrees() const;

  /// Degree of a homogeneous polynomial; throws if not homogeneous, 0 if empty.
  int homogeneous_degree() const;

  PolyHamiltonian homogeneous_part(int degree) const;

  std::size_t size() const;
  bool empty() const { return graded_.empty(); }

  /// Conjugation symmetry: coeff(plus, minus) == conj(coeff(minus, plus)).
  bool is_real_valued() const;

  bool all_zero_momentum() const;

  void for_each_term(const std::function<void(const Monomial&, const ExactCoeff&)>& fn) const;

  /// Terms whose every index satisfies |j| <= window, as a polynomial with truncation window.
  PolyHamiltonian restricted(int window) const;

  /// Keeps the terms selected by the predicate.
  PolyHamiltonian filtered(const std::function<bool(const Monomial&, const ExactCoeff&)>& keep) const;

  PolyHamiltonian& operator+=(const PolyHamiltonian& other);
  PolyHamiltonian& operator-=(const PolyHamiltonian& other);
  PolyHamiltonian& operator*=(const ExactCoeff& scale);
  friend PolyHamiltonian operator+(PolyHamiltonian a, const PolyHamiltonian& b) { return a += b; }
  friend PolyHamiltonian operator-(PolyHamiltonian a, const PolyHamiltonian& b) { return a -= b; }
  friend PolyHamiltonian operator*(const ExactCoeff& s, PolyHamiltonian a) { return a *= s; }

  friend bool operator==(const PolyHamiltonian& a, const PolyHamiltonian& b);

 private:
  void check_same_truncation(const PolyHamiltonian& other) const;

  int m_;
  std::map<int, TermMap> graded_;
};

/// Weighted bracket {H, F} = -i sum_j j (dH/dq_j dF/dconj(q_j) - dH/dconj(q_j) dF/dq_j).
///
/// Both operands must share a truncation. With a window w (w <= M) only
/// output monomials with all |j| <= w are produced and the result carries
/// truncation w; the contraction index may still range up to M. Work is split
/// over `jobs` threads and merged exactly, so the result does not depend on it.
PolyHamiltonian bracket(const PolyHamiltonian& h, const PolyHamiltonian& f, std::optional<int> window = std::nullopt,
                        int jobs = 1);

/// (normal-form terms, remaining terms).
std::pair<PolyHamiltonian, PolyHamiltonian> split_normal(const PolyHamiltonian& h);

/// Lambda = sum j |q_j|^2.
PolyHamiltonian build_lambda(int truncation);

/// Mass = sum |q_j|^2.
PolyHamiltonian build_mass(int truncation);

/// Sobolev weight sum |j|^(2s) |q_j|^2 for integer s.
PolyHamiltonian build_sobolev_weight(int truncation, int s);

/// G = 1/(4 pi) sum over zero-momentum ordered quadruples, aggregated onto
/// canonical monomials.
PolyHamiltonian build_G(int truncation);

/// B = -1/(4 pi) sum |q_j|^4 + 1/(2 pi) (sum |q_j|^2)^2, expanded directly.
PolyHamiltonian build_B(int truncation);

/// Canonical JSON dump: list of {plus, minus, re, im, pi_power} in monomial order.
std::string dump_poly_json(const PolyHamiltonian& p, int indent = -1);

/// Accepts the list form or an object with a "data" list; truncation defaults
/// to the largest index present.
PolyHamiltonian load_poly_json(const std::string& text, std::optional<int> truncation = std::nullopt);

}  // namespace nflab

#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <string_view>

namespace nflab {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Builds p/q in canonical form. Throws std::domain_error when q == 0.
Rational make_rational(long p, long q = 1);

/// Parses "p/q" or "p". Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

double to_double(const Rational& r);

/// An exact complex coefficient (re + i*im) * pi^(-pi_power).
///
/// Every coefficient produced by the normal form construction is a Gaussian
/// rational times a negative power of pi, so carrying the power symbolically
/// keeps all identity checks free of rounding. A zero value has no pi power:
/// it is stored with pi_power == 0 and may be added to anything.
class ExactCoeff {
 public:
  ExactCoeff() = default;
  ExactCoeff(Rational re, Rational im, int pi_power = 0);

  static ExactCoeff real(Rational re, int pi_power = 0);
  static ExactCoeff imag(Rational im, int pi_power = 0);

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }
  int pi_power() const { return pi_power_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_imaginary() const { return sgn(re_) == 0; }

  ExactCoeff conj() const;
  ExactCoeff times_i() const;

  /// Adding two nonzero values with different pi powers has no exact
  /// representation here and throws std::domain_error.
  ExactCoeff& operator+=(const ExactCoeff& other);
  ExactCoeff& operator-=(const ExactCoeff& other);
  ExactCoeff& operator*=(const Rational& scale);

  friend ExactCoeff operator+(ExactCoeff a, const ExactCoeff& b) { return a += b; }
  friend ExactCoeff operator-(ExactCoeff a, const ExactCoeff& b) { return a -= b; }
  friend ExactCoeff operator-(const ExactCoeff& a);
  friend ExactCoeff operator*(const ExactCoeff& a, const ExactCoeff& b);
  friend ExactCoeff operator*(ExactCoeff a, const Rational& s) { return a *= s; }
  friend ExactCoeff operator*(const Rational& s, ExactCoeff a) { return a *= s; }

  friend bool operator==(const ExactCoeff& a, const ExactCoeff& b);

  /// Squared modulus without the pi factor, i.e. re^2 + im^2.
  Rational norm_sq_rational() const { return re_ * re_ + im_ * im_; }

  std::complex<double> to_complex() const;
  double abs() const;

  std::string to_string() const;

 private:
  void normalize();

  Rational re_{0};
  Rational im_{0};
  int pi_power_ = 0;
};

}  // namespace nflab

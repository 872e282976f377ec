#include "nflab/exact.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nflab {

Rational make_rational(long p, long q) {
  if (q == 0) throw std::domain_error("rational with zero denominator");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  Rational r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational literal: " + s);
  if (sgn(r.get_den()) == 0) throw std::invalid_argument("zero denominator in rational literal: " + s);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(10); }

double to_double(const Rational& r) { return r.get_d(); }

ExactCoeff::ExactCoeff(Rational re, Rational im, int pi_power)
    : re_(std::move(re)), im_(std::move(im)), pi_power_(pi_power) {
  if (pi_power < 0) throw std::domain_error("negative pi power");
  re_.canonicalize();
  im_.canonicalize();
  normalize();
}

ExactCoeff ExactCoeff::real(Rational re, int pi_power) { return ExactCoeff(std::move(re), 0, pi_power); }

ExactCoeff ExactCoeff::imag(Rational im, int pi_power) { return ExactCoeff(0, std::move(im), pi_power); }

void ExactCoeff::normalize() {
  if (is_zero()) pi_power_ = 0;
}

ExactCoeff ExactCoeff::conj() const {
  ExactCoeff c = *this;
  c.im_ = -c.im_;
  return c;
}

ExactCoeff ExactCoeff::times_i() const {
  ExactCoeff c;
  c.re_ = -im_;
  c.im_ = re_;
  c.pi_power_ = pi_power_;
  return c;
}

ExactCoeff& ExactCoeff::operator+=(const ExactCoeff& other) {
  if (other.is_zero()) return *this;
  if (is_zero()) {
    *this = other;
    return *this;
  }
  if (pi_power_ != other.pi_power_) {
    throw std::domain_error("adding coefficients with different powers of pi");
  }
  re_ += other.re_;
  im_ += other.im_;
  normalize();
  return *this;
}

ExactCoeff& ExactCoeff::operator-=(const ExactCoeff& other) { return *this += -other; }

ExactCoeff& ExactCoeff::operator*=(const Rational& scale) {
  re_ *= scale;
  im_ *= scale;
  normalize();
  return *this;
}

ExactCoeff operator-(const ExactCoeff& a) {
  ExactCoeff c = a;
  c.re_ = -c.re_;
  c.im_ = -c.im_;
  return c;
}

ExactCoeff operator*(const ExactCoeff& a, const ExactCoeff& b) {
  ExactCoeff c;
  if (a.is_zero() || b.is_zero()) return c;
  c.re_ = a.re_ * b.re_ - a.im_ * b.im_;
  c.im_ = a.re_ * b.im_ + a.im_ * b.re_;
  c.pi_power_ = a.pi_power_ + b.pi_power_;
  c.normalize();
  return c;
}

bool operator==(const ExactCoeff& a, const ExactCoeff& b) {
  return a.pi_power_ == b.pi_power_ && a.re_ == b.re_ && a.im_ == b.im_;
}

std::complex<double> ExactCoeff::to_complex() const {
  const double scale = std::pow(std::numbers::pi, -pi_power_);
  return {re_.get_d() * scale, im_.get_d() * scale};
}

double ExactCoeff::abs() const { return std::abs(to_complex()); }

std::string ExactCoeff::to_string() const {
  std::string s = "(" + nflab::to_string(re_) + ") + i(" + nflab::to_string(im_) + ")";
  if (pi_power_ != 0) s += " * pi^-" + std::to_string(pi_power_);
  return s;
}

}  // namespace nflab

#pragma once

#include <gmpxx.h>

#include <cmath>
#include <compare>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace logres {

using Rational = mpq_class;

inline Rational parse_rational(const std::string& text) {
  Rational r;
  if (text.empty() || r.set_str(text, 10) != 0) {
    throw std::invalid_argument("malformed rational '" + text + "'");
  }
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  r.canonicalize();
  return r;
}

inline Rational ratio(long num, long den) {
  if (den == 0) throw std::domain_error("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Rational factorial(int k) {
  Rational r = 1;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

/// Exact Gaussian rational re + i*im.
class Scalar {
 public:
  Scalar() = default;
  Scalar(int re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  Scalar(Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  Scalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static Scalar i() { return {0, 1}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  Scalar conj() const { return {re_, -im_}; }

  Scalar& operator+=(const Scalar& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  Scalar& operator*=(const Scalar& o) {
    if (o.is_real()) {
      re_ *= o.re_;
      im_ *= o.re_;
      return *this;
    }
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational m = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
  }
  Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

  Scalar inverse() const {
    Rational norm = re_ * re_ + im_ * im_;
    if (sgn(norm) == 0) throw std::domain_error("inverse of zero scalar");
    return {re_ / norm, -im_ / norm};
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend Scalar operator-(const Scalar& a) { return {-a.re_, -a.im_}; }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  /// "re", "im i", or "re + im i" with rationals written p/q.
  std::string str() const {
    if (is_real()) return re_.get_str();
    std::string ims = im_ == 1 ? "" : (im_ == -1 ? "-" : im_.get_str() + " ");
    if (sgn(re_) == 0) return ims + "i";
    if (sgn(im_) < 0) {
      Rational a = -im_;
      std::string mag = a == 1 ? "" : a.get_str() + " ";
      return re_.get_str() + " - " + mag + "i";
    }
    return re_.get_str() + " + " + ims + "i";
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

 private:
  Rational re_{0};
  Rational im_{0};
};

inline Scalar pow(Scalar base, int e) {
  if (e < 0) {
    base = base.inverse();
    e = -e;
  }
  Scalar r = 1;
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

/// coeff * pi^pi_power. Zero is canonical (pi_power forced to 0).
class PiScalar {
 public:
  PiScalar() = default;
  PiScalar(Scalar coeff, int pi_power) : coeff_(std::move(coeff)), pi_power_(pi_power) {
    if (coeff_.is_zero()) pi_power_ = 0;
  }

  const Scalar& coeff() const { return coeff_; }
  int pi_power() const { return pi_power_; }
  bool is_zero() const { return coeff_.is_zero(); }

  PiScalar& operator+=(const PiScalar& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    if (pi_power_ != o.pi_power_) {
      throw std::invalid_argument("PiScalar sum with mismatched powers of pi: " +
                                  std::to_string(pi_power_) + " vs " +
                                  std::to_string(o.pi_power_));
    }
    coeff_ += o.coeff_;
    if (coeff_.is_zero()) pi_power_ = 0;
    return *this;
  }
  PiScalar& operator-=(const PiScalar& o) { return *this += -o; }

  friend PiScalar operator+(PiScalar a, const PiScalar& b) { return a += b; }
  friend PiScalar operator-(PiScalar a, const PiScalar& b) { return a -= b; }
  friend PiScalar operator-(const PiScalar& a) { return {-a.coeff_, a.pi_power_}; }
  friend PiScalar operator*(const PiScalar& a, const PiScalar& b) {
    return {a.coeff_ * b.coeff_, a.pi_power_ + b.pi_power_};
  }
  friend PiScalar operator*(const Scalar& s, const PiScalar& a) {
    return {s * a.coeff_, a.pi_power_};
  }
  friend bool operator==(const PiScalar& a, const PiScalar& b) {
    return a.coeff_ == b.coeff_ && a.pi_power_ == b.pi_power_;
  }

  /// Exact rendering, e.g. "-1/96 * pi^-2" or "(1/2 + 1/3 i) * pi^-1".
  std::string str() const {
    if (is_zero()) return "0";
    std::string c = coeff_.str();
    if (!coeff_.is_real() && sgn(coeff_.re()) != 0) c = "(" + c + ")";
    if (pi_power_ == 0) return c;
    return c + " * pi^" + std::to_string(pi_power_);
  }

  /// Floating-point approximation of (re, im).
  std::pair<double, double> approx() const {
    double scale = std::pow(M_PI, pi_power_);
    return {coeff_.re().get_d() * scale, coeff_.im().get_d() * scale};
  }

  std::string approx_str() const {
    auto [re, im] = approx();
    std::ostringstream os;
    os.precision(12);
    os << re;
    if (!coeff_.is_real()) os << (im < 0 ? " - " : " + ") << std::abs(im) << " i";
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const PiScalar& s) { return os << s.str(); }

 private:
  Scalar coeff_;
  int pi_power_ = 0;
};

}  // namespace logres

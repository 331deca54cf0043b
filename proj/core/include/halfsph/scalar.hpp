#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <string>

#include <gmpxx.h>

namespace halfsph {

/// Exact Gaussian rational re + im*i. All symbolic coefficients use this type.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long n) : re_(n) {}  // NOLINT(google-explicit-constructor)
  Scalar(mpq_class re, mpq_class im = 0);

  static Scalar i() { return {0, 1}; }
  static Scalar rational(long num, long den);

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  Scalar conj() const { return {re_, -im_}; }
  mpq_class norm2() const { return re_ * re_ + im_ * im_; }
  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  Scalar operator-() const { return {-re_, -im_}; }
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  /// Total order (by real part, then imaginary part); used only for canonical keys.
  friend bool operator<(const Scalar& a, const Scalar& b) {
    if (a.re_ != b.re_) return a.re_ < b.re_;
    return a.im_ < b.im_;
  }

  /// Text form: `2`, `-1/2`, `i`, `-3/4i`, `(1/2+2i)`.
  std::string str() const;

  /// Inverse of str(); also accepts whitespace inside parentheses.
  static Scalar parse(const std::string& text);

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace halfsph

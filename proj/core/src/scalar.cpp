#include "halfsph/scalar.hpp"

#include <cctype>
#include <ostream>

#include "halfsph/error.hpp"

namespace halfsph {

Scalar::Scalar(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

Scalar Scalar::rational(long num, long den) {
  if (den == 0) throw InvalidArgument("Scalar::rational: zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return {q, 0};
}

Scalar& Scalar::operator+=(const Scalar& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw InvalidArgument("Scalar: division by zero");
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  mpq_class d = o.norm2();
  *this *= o.conj();
  re_ /= d;
  im_ /= d;
  return *this;
}

namespace {

std::string rat_str(const mpq_class& q) { return q.get_str(); }

}  // namespace

std::string Scalar::str() const {
  if (sgn(im_) == 0) return rat_str(re_);
  std::string imag;
  if (im_ == 1) {
    imag = "i";
  } else if (im_ == -1) {
    imag = "-i";
  } else {
    imag = rat_str(im_) + "i";
  }
  if (sgn(re_) == 0) return imag;
  std::string out = "(" + rat_str(re_);
  if (sgn(im_) > 0) out += "+";
  return out + imag + ")";
}

namespace {

// Parses `[sign] rational [i]` or `[sign] i` starting at pos.
Scalar parse_part(const std::string& s, std::size_t& pos) {
  auto skip = [&] {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  };
  skip();
  bool neg = false;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
    neg = s[pos] == '-';
    ++pos;
    skip();
  }
  std::size_t start = pos;
  while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/')) ++pos;
  std::string digits = s.substr(start, pos - start);
  bool imag = pos < s.size() && s[pos] == 'i';
  if (imag) ++pos;
  if (digits.empty() && !imag) throw InvalidArgument("Scalar::parse: expected a number in '" + s + "'");
  mpq_class q(1);
  if (!digits.empty()) {
    if (digits.back() == '/' || digits.front() == '/') {
      throw InvalidArgument("Scalar::parse: malformed rational '" + digits + "'");
    }
    q = mpq_class(digits);
    q.canonicalize();
  }
  if (neg) q = -q;
  return imag ? Scalar(0, q) : Scalar(q, 0);
}

}  // namespace

Scalar Scalar::parse(const std::string& text) {
  std::size_t pos = 0;
  bool paren = false;
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos < text.size() && text[pos] == '(') {
    paren = true;
    ++pos;
  }
  Scalar total = parse_part(text, pos);
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  if (paren) {
    while (true) {
      while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
      if (pos >= text.size() || text[pos] == ')') break;
      total += parse_part(text, pos);
    }
    if (pos >= text.size()) throw InvalidArgument("Scalar::parse: missing ')' in '" + text + "'");
    ++pos;
  }
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos != text.size()) throw InvalidArgument("Scalar::parse: trailing input in '" + text + "'");
  return total;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace halfsph

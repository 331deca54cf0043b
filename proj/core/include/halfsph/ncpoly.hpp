#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "halfsph/letter.hpp"
#include "halfsph/scalar.hpp"

namespace halfsph {

/// Element of the free *-algebra: a finite linear combination of words.
/// Zero coefficients are never stored. Values are immutable in practice; every
/// operation returns a new polynomial.
class NCPolynomial {
 public:
  using Terms = std::map<Word, Scalar, GradedLex>;

  NCPolynomial() = default;
  NCPolynomial(const Scalar& s);  // NOLINT(google-explicit-constructor)
  NCPolynomial(long n) : NCPolynomial(Scalar(n)) {}  // NOLINT(google-explicit-constructor)
  explicit NCPolynomial(const Letter& l);
  explicit NCPolynomial(const Word& w, const Scalar& coeff = Scalar(1));

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  std::size_t degree() const;
  Scalar coefficient(const Word& w) const;
  /// Largest word in graded-lex order and its coefficient. Requires a nonzero polynomial.
  const std::pair<const Word, Scalar>& leading() const;
  std::set<Letter> letters() const;

  void add_term(const Word& w, const Scalar& c);

  NCPolynomial operator-() const;
  NCPolynomial& operator+=(const NCPolynomial& o);
  NCPolynomial& operator-=(const NCPolynomial& o);
  NCPolynomial& operator*=(const Scalar& s);
  friend NCPolynomial operator+(NCPolynomial a, const NCPolynomial& b) { return a += b; }
  friend NCPolynomial operator-(NCPolynomial a, const NCPolynomial& b) { return a -= b; }
  friend NCPolynomial operator*(NCPolynomial a, const Scalar& s) { return a *= s; }
  friend NCPolynomial operator*(const Scalar& s, NCPolynomial a) { return a *= s; }
  friend NCPolynomial operator*(const NCPolynomial& a, const NCPolynomial& b);
  friend bool operator==(const NCPolynomial& a, const NCPolynomial& b) { return a.terms_ == b.terms_; }

  /// Divides by the leading coefficient so the leading word has coefficient 1.
  NCPolynomial monic() const;

  /// `2 z1 z2* - i z3`; the zero polynomial renders as `0`.
  std::string str() const;

 private:
  Terms terms_;
};

/// Unchecked product; see the alphabet-checked overload below.
NCPolynomial multiply(const NCPolynomial& p, const NCPolynomial& q);
/// Product of polynomials over declared alphabets. Throws InvalidArgument when the
/// declarations differ or a polynomial uses an undeclared letter.
NCPolynomial multiply(const NCPolynomial& p, const Alphabet& pa, const NCPolynomial& q, const Alphabet& qa);

NCPolynomial star(const NCPolynomial& p);

/// Letter images for substitute(). A starred letter without its own entry is sent
/// to the star of its unstarred image.
using LetterMap = std::map<Letter, NCPolynomial>;

/// Homomorphic image; throws InvalidArgument for a letter with no image.
NCPolynomial substitute(const NCPolynomial& p, const LetterMap& images);

/// Names that stand for letters while parsing, e.g. bound variables `a -> z1`.
using Bindings = std::map<std::string, Letter>;

/// Parses the canonical text form (also accepts `*` between factors and
/// parenthesized Gaussian-rational coefficients).
NCPolynomial parse_polynomial(const std::string& text, const Bindings& bindings = {});
/// Parses `lhs = rhs` into lhs - rhs; without `=` the text is parsed as a polynomial.
NCPolynomial parse_relation(const std::string& text, const Bindings& bindings = {});

/// Element of the two-leg tensor product: first leg group letters, second leg sphere letters.
class TensorPolynomial {
 public:
  using Key = std::pair<Word, Word>;
  struct KeyLess {
    bool operator()(const Key& a, const Key& b) const {
      GradedLex lt;
      if (lt(a.second, b.second)) return true;
      if (lt(b.second, a.second)) return false;
      return lt(a.first, b.first);
    }
  };
  using Terms = std::map<Key, Scalar, KeyLess>;

  TensorPolynomial() = default;
  /// Decomposable element a ⊗ x.
  static TensorPolynomial tensor(const NCPolynomial& a, const NCPolynomial& x);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add_term(const Word& left, const Word& right, const Scalar& c);

  TensorPolynomial& operator+=(const TensorPolynomial& o);
  TensorPolynomial& operator-=(const TensorPolynomial& o);
  friend TensorPolynomial operator+(TensorPolynomial a, const TensorPolynomial& b) { return a += b; }
  friend TensorPolynomial operator-(TensorPolynomial a, const TensorPolynomial& b) { return a -= b; }
  friend TensorPolynomial operator*(const TensorPolynomial& a, const TensorPolynomial& b);
  friend TensorPolynomial operator*(const Scalar& s, const TensorPolynomial& a);
  friend bool operator==(const TensorPolynomial& a, const TensorPolynomial& b) { return a.terms_ == b.terms_; }

  /// Groups by the right leg: right word -> left-leg coefficient polynomial.
  std::map<Word, NCPolynomial, GradedLex> by_right() const;
  /// Applies f to each right-leg word and re-expands (used to bring right legs to normal form).
  TensorPolynomial map_right(const std::function<NCPolynomial(const Word&)>& f) const;

  std::string str() const;

 private:
  Terms terms_;
};

TensorPolynomial star(const TensorPolynomial& t);

}  // namespace halfsph

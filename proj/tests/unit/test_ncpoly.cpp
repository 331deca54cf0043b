#include <gtest/gtest.h>

#include <random>

#include "halfsph/error.hpp"
#include "halfsph/ncpoly.hpp"
#include "oracles.hpp"

using namespace halfsph;

namespace {

const std::vector<Letter> kLetters = {Letter::z(1), Letter::z(2), Letter::z(3)};

NCPolynomial P(const std::string& s) { return parse_polynomial(s); }

}  // namespace

TEST(Scalar, GaussianArithmetic) {
  Scalar a(mpq_class(1, 2), 1), b(mpq_class(1, 2), -1);
  EXPECT_EQ(a * b, Scalar(mpq_class(5, 4)));
  EXPECT_EQ(a.conj(), b);
  EXPECT_EQ(Scalar::i() * Scalar::i(), Scalar(-1));
  EXPECT_EQ((a / b) * b, a);
  EXPECT_TRUE((a - a).is_zero());
}

TEST(Scalar, TextRoundTrip) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 300; ++t) {
    Scalar s = oracle::random_scalar(rng);
    EXPECT_EQ(Scalar::parse(s.str()), s) << s.str();
  }
  EXPECT_EQ(Scalar::parse("-3/4i"), Scalar(0, mpq_class(-3, 4)));
  EXPECT_EQ(Scalar::parse("( 1/2 + 2i )"), Scalar(mpq_class(1, 2), 2));
}

TEST(Letter, ParseAndPrint) {
  for (const char* s : {"z1", "z12*", "u1_2", "u3_1*", "c", "c*", "x2", "y1*", "p1_3", "q2_2*"}) {
    EXPECT_EQ(Letter::parse(s).str(), s);
  }
  EXPECT_EQ(Letter::parse("u12"), Letter::u(1, 2));
  EXPECT_THROW(Letter::parse("w1"), InvalidArgument);
  EXPECT_THROW(Letter::parse("z"), InvalidArgument);
  EXPECT_THROW(Letter::parse("c1"), InvalidArgument);
}

TEST(Letter, StarIsInvolution) {
  for (const auto& l : {Letter::z(2), Letter::u(1, 2, true), Letter::c()}) {
    EXPECT_EQ(l.star().star(), l);
    EXPECT_NE(l.star(), l);
    EXPECT_EQ(l.star().plain(), l.plain());
  }
}

TEST(GradedLex, IsStrictTotalOrder) {
  std::mt19937_64 rng(5);
  GradedLex lt;
  for (int t = 0; t < 500; ++t) {
    Word a = oracle::random_word(rng, kLetters, 4), b = oracle::random_word(rng, kLetters, 4),
         c = oracle::random_word(rng, kLetters, 4);
    EXPECT_FALSE(lt(a, a));
    EXPECT_EQ(lt(a, b) || lt(b, a), a != b);
    if (lt(a, b) && lt(b, c)) EXPECT_TRUE(lt(a, c));
    if (a.size() < b.size()) EXPECT_TRUE(lt(a, b));
  }
}

// Ring and involution axioms on random polynomials.
TEST(NCPolynomialProperty, RingAxioms) {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 200; ++t) {
    auto a = oracle::random_poly(rng, kLetters), b = oracle::random_poly(rng, kLetters),
         c = oracle::random_poly(rng, kLetters);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a + b) * c, a * c + b * c);
    EXPECT_TRUE((a - a).is_zero());
    EXPECT_EQ(a * NCPolynomial(1), a);
  }
}

TEST(NCPolynomialProperty, StarIsAntiInvolution) {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 200; ++t) {
    auto a = oracle::random_poly(rng, kLetters), b = oracle::random_poly(rng, kLetters);
    Scalar s = oracle::random_scalar(rng);
    EXPECT_EQ(star(star(a)), a);
    EXPECT_EQ(star(a * b), star(b) * star(a));
    EXPECT_EQ(star(a + b), star(a) + star(b));
    EXPECT_EQ(star(s * a), s.conj() * star(a));
  }
}

TEST(NCPolynomialProperty, TextRoundTrip) {
  std::mt19937_64 rng(44);
  for (int t = 0; t < 300; ++t) {
    auto a = oracle::random_poly(rng, kLetters, 5, 4);
    EXPECT_EQ(parse_polynomial(a.str()), a) << a.str();
  }
}

TEST(NCPolynomialProperty, MonicHasUnitLeadingCoefficient) {
  std::mt19937_64 rng(45);
  for (int t = 0; t < 200; ++t) {
    auto a = oracle::random_poly(rng, kLetters);
    if (a.is_zero()) continue;
    auto m = a.monic();
    EXPECT_TRUE(m.leading().second.is_one());
    EXPECT_EQ(m.leading().first, a.leading().first);
    EXPECT_EQ(m * a.leading().second, a);
  }
}

TEST(NCPolynomialProperty, SubstituteIsHomomorphism) {
  std::mt19937_64 rng(46);
  LetterMap images = {{Letter::z(1), P("z2 z3* + 1/2")}, {Letter::z(2), P("i z1")}, {Letter::z(3), P("z3 - z1*")}};
  for (int t = 0; t < 100; ++t) {
    auto a = oracle::random_poly(rng, kLetters), b = oracle::random_poly(rng, kLetters);
    EXPECT_EQ(substitute(a * b, images), substitute(a, images) * substitute(b, images));
    EXPECT_EQ(substitute(star(a), images), star(substitute(a, images)));
  }
  EXPECT_THROW(substitute(P("u1_1"), images), InvalidArgument);
}

TEST(NCPolynomial, ParseRelationWithBindings) {
  Bindings b = {{"a", Letter::z(1)}, {"b", Letter::z(2)}};
  EXPECT_EQ(parse_relation("a b* = b a*", b), P("z1 z2* - z2 z1*"));
  EXPECT_EQ(parse_relation("z1 * z2 = 2i z2 z1"), P("z1 z2 - 2i z2 z1"));
  EXPECT_EQ(parse_relation("(1/2+1/2i) z1"), P("(1/2+1/2i) z1"));
  EXPECT_THROW(parse_relation("z1 = z2 = z3"), InvalidArgument);
  EXPECT_THROW(parse_relation("a b"), InvalidArgument);
  EXPECT_THROW(parse_relation("z1 +"), InvalidArgument);
}

TEST(NCPolynomial, ZeroAndDegree) {
  EXPECT_EQ(NCPolynomial().str(), "0");
  EXPECT_EQ(P("z1 z2 z3 + z1").degree(), 3u);
  EXPECT_EQ(P("z1 z2 - z1 z2").size(), 0u);
  EXPECT_EQ(P("3 z1 z2* + z2").coefficient(Word{Letter::z(1), Letter::z(2, true)}), Scalar(3));
}

TEST(TensorPolynomial, ProductAndStar) {
  auto a = P("u1_1 + 2 u1_2*"), x = P("z1 z2*"), b = P("i u2_1"), y = P("z2");
  auto ax = TensorPolynomial::tensor(a, x), by = TensorPolynomial::tensor(b, y);
  EXPECT_EQ(ax * by, TensorPolynomial::tensor(a * b, x * y));
  EXPECT_EQ(star(ax), TensorPolynomial::tensor(star(a), star(x)));
  EXPECT_TRUE((ax - ax).is_zero());
  auto grouped = (ax + by).by_right();
  EXPECT_EQ(grouped.size(), 2u);
  EXPECT_EQ(grouped.at(Word{Letter::z(2)}), b);
}

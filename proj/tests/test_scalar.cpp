#include "wab/scalar.hpp"

#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace wab;

namespace {

Scalar S(int num, int den = 1) { return Scalar(Rational(num, den)); }
Scalar S2(int rn, int rd, int in_, int id) {
  return Scalar(Rational(rn, rd), Rational(in_, id));
}

TEST(Scalar, Addition) {
  EXPECT_EQ(S(1, 2) + S(1, 3), S(5, 6));
  Scalar x = S2(3, 4, -1, 7);
  EXPECT_EQ(Scalar(0) + x, x);
  EXPECT_EQ(S2(1, 2, 1, 2) + S2(1, 2, -1, 2), S(1));
}

TEST(Scalar, Multiplication) {
  EXPECT_EQ(Scalar::unit_i() * Scalar::unit_i(), S(-1));
  Scalar x = S2(3, 4, -1, 7);
  EXPECT_EQ(S(1) * x, x);
  EXPECT_EQ(S(2, 3) * S(3, 2), S(1));
}

TEST(Scalar, Inverse) {
  EXPECT_EQ(inv(S(2)), S(1, 2));
  EXPECT_EQ(inv(Scalar::unit_i()), S2(0, 1, -1, 1));
  // Oracle: multiplying back must give 1; the closed form follows.
  Scalar x = S2(1, 1, 1, 1);
  EXPECT_EQ(x * inv(x), S(1));
  EXPECT_EQ(inv(x), S2(1, 2, -1, 2));
  EXPECT_THROW(inv(Scalar(0)), division_by_zero);
}

TEST(Scalar, FieldAxiomsRandomized) {
  wabtest::Gen gen;
  for (int iter = 0; iter < 10000; ++iter) {
    Scalar x = gen.scalar(), y = gen.scalar(), z = gen.scalar();
    EXPECT_EQ((x + y) + z, x + (y + z));
    EXPECT_EQ((x * y) * z, x * (y * z));
    EXPECT_EQ(x + y, y + x);
    EXPECT_EQ(x * y, y * x);
    EXPECT_EQ(x * (y + z), x * y + x * z);
    EXPECT_EQ(x + Scalar(0), x);
    EXPECT_EQ(x * Scalar(1), x);
    if (!x.is_zero()) {
      EXPECT_EQ(x * inv(x), Scalar(1));
    }
  }
}

TEST(Scalar, AlwaysReduced) {
  using boost::multiprecision::gcd;
  wabtest::Gen gen(7);
  for (int iter = 0; iter < 2000; ++iter) {
    Scalar x = gen.scalar() * gen.scalar() + gen.scalar();
    for (const Rational& r : {x.re, x.im}) {
      EXPECT_GT(denominator(r), 0);
      EXPECT_EQ(gcd(BigInt(abs(numerator(r))), denominator(r)), 1);
    }
  }
}

TEST(Scalar, PrintParseRoundTrip) {
  wabtest::Gen gen(11);
  for (int iter = 0; iter < 2000; ++iter) {
    Scalar x = gen.scalar();
    EXPECT_EQ(parse_scalar(to_string(x)), x);
  }
  EXPECT_EQ(to_string(S(5, 6)), "5/6");
  EXPECT_EQ(to_string(S2(1, 2, -1, 3)), "1/2-1/3i");
  EXPECT_EQ(to_string(Scalar(0)), "0");
  EXPECT_EQ(to_string(Scalar::unit_i()), "1i");
}

TEST(Scalar, ParseForms) {
  EXPECT_EQ(parse_scalar("0+1/1i"), Scalar::unit_i());
  EXPECT_EQ(parse_scalar("-i"), -Scalar::unit_i());
  EXPECT_EQ(parse_scalar("2i"), S2(0, 1, 2, 1));
  EXPECT_EQ(parse_scalar(" 1/2 - 1/3i "), S2(1, 2, -1, 3));
  EXPECT_EQ(parse_rational("-42"), Rational(-42));
  EXPECT_THROW(parse_scalar("1/0"), parse_error);
  EXPECT_THROW(parse_scalar(""), parse_error);
  EXPECT_THROW(parse_scalar("abc"), parse_error);
  EXPECT_THROW(parse_scalar("1+2"), parse_error);
  EXPECT_THROW(parse_scalar("1i+2"), parse_error);
}

TEST(Scalar, IntegerPredicate) {
  EXPECT_TRUE(is_integer(S(-3)));
  EXPECT_FALSE(is_integer(S(1, 2)));
  EXPECT_FALSE(is_integer(S2(1, 1, 1, 1)));
  EXPECT_EQ(floor_int(Rational(-3, 2)), BigInt(-2));
  EXPECT_EQ(floor_int(Rational(3, 2)), BigInt(1));
  EXPECT_EQ(floor_int(Rational(4)), BigInt(4));
}

}  // namespace

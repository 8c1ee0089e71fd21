#include "ctheta/errors.hpp"
#include "ctheta/rational.hpp"
#include "ctheta/scalar.hpp"

#include <gtest/gtest.h>

#include <random>

namespace ctheta {
namespace {

TEST(RationalTest, ParsesCanonicalForms) {
    EXPECT_EQ(parse_rational("3"), Rational(3));
    EXPECT_EQ(parse_rational("-6/4"), Rational(-3, 2));
    EXPECT_EQ(parse_rational("+10/5"), Rational(2));
    EXPECT_EQ(to_string(parse_rational("-6/4")), "-3/2");
    EXPECT_EQ(to_string(parse_rational("0/7")), "0");
}

TEST(RationalTest, RejectsMalformedText) {
    EXPECT_THROW(parse_rational(""), InvalidArgument);
    EXPECT_THROW(parse_rational("1/0"), InvalidArgument);
    EXPECT_THROW(parse_rational("1.5"), InvalidArgument);
    EXPECT_THROW(parse_rational("0x10"), InvalidArgument);
    EXPECT_THROW(parse_rational(" 1"), InvalidArgument);
    EXPECT_THROW(parse_rational("1e3"), InvalidArgument);
    EXPECT_THROW(parse_rational("1/"), InvalidArgument);
}

TEST(RationalTest, TextRoundTripOnRandomValues) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> num(-1000000, 1000000), den(1, 100000);
    for (int i = 0; i < 500; ++i) {
        Rational q(num(rng), den(rng));
        q.canonicalize();
        EXPECT_EQ(parse_rational(to_string(q)), q);
    }
}

TEST(ScalarTest, ExactArithmeticStaysExact) {
    const Scalar a(Rational(1, 3)), b(Rational(1, 6));
    const Scalar s = a + b;
    ASSERT_TRUE(s.is_exact());
    EXPECT_EQ(s.rational(), Rational(1, 2));
    EXPECT_EQ((a * b).rational(), Rational(1, 18));
    EXPECT_EQ((a / b).rational(), Rational(2));
    EXPECT_EQ((-a).rational(), Rational(-1, 3));
    EXPECT_THROW(a / Scalar(0), InvalidArgument);
}

TEST(ScalarTest, MixedArithmeticIsApproximate) {
    const Scalar s = Scalar(1) + Scalar::approx(0.5, 1.0);
    EXPECT_FALSE(s.is_exact());
    EXPECT_DOUBLE_EQ(s.real(), 1.5);
    EXPECT_DOUBLE_EQ(s.conj().imag(), -1.0);
    EXPECT_THROW((void)s.rational(), InvalidArgument);
}

TEST(ScalarTest, EqualityIsRepresentational) {
    EXPECT_EQ(Scalar(2), Scalar(Rational(4, 2)));
    EXPECT_FALSE(Scalar(2) == Scalar::approx(2.0));
    EXPECT_TRUE(approx_equal(Scalar(2), Scalar::approx(2.0 + 1e-12), 1e-9));
    EXPECT_FALSE(approx_equal(Scalar(2), Scalar(Rational(2000000001, 1000000000)), 1.0));
}

TEST(ScalarTest, ZeroAndSignPredicates) {
    EXPECT_TRUE(Scalar(0).is_zero());
    EXPECT_FALSE(Scalar(Rational(1, 1000000)).is_zero(1.0));
    EXPECT_TRUE(Scalar::approx(1e-12).is_zero(1e-9));
    EXPECT_TRUE(Scalar(Rational(0)).is_nonnegative_real());
    EXPECT_FALSE(Scalar(Rational(-1, 7)).is_nonnegative_real(1.0));
    EXPECT_TRUE(Scalar::approx(-1e-12, 1e-12).is_nonnegative_real(1e-9));
    EXPECT_FALSE(Scalar::approx(1.0, 1e-3).is_nonnegative_real(1e-9));
}

TEST(ScalarTest, TextForms) {
    EXPECT_EQ(Scalar(Rational(-3, 2)).to_string(), "-3/2");
    EXPECT_EQ(Scalar::approx(0.5).to_string(), "0.5");
    EXPECT_EQ(Scalar::approx(1.0, -2.0).to_string(), "1-2i");
}

}  // namespace
}  // namespace ctheta

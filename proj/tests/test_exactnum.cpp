#include "fgalab/exactnum.hpp"

#include <gtest/gtest.h>

using namespace fgalab;

TEST(TwoAdic, Valuations) {
    EXPECT_EQ(two_adic_valuation(8), 3u);
    EXPECT_EQ(two_adic_valuation(12), 2u);
    EXPECT_EQ(two_adic_valuation(7), 0u);
    EXPECT_EQ(two_adic_valuation(-40), 3u);
    EXPECT_EQ(two_adic_valuation(factorial(5 / 2)), 1u);
    EXPECT_THROW(two_adic_valuation(0L), Error);
}

TEST(TwoAdic, LargeValues) {
    Integer big = pow2(200) * 3;
    EXPECT_EQ(two_adic_valuation(big), 200u);
}

TEST(Mod2, Integers) {
    EXPECT_EQ(mod2_reduce(Integer(6)), 0);
    EXPECT_EQ(mod2_reduce(Integer(-1)), 1);
    EXPECT_EQ(mod2_reduce(Integer(0)), 0);
}

TEST(Mod2, ParamPoly) {
    auto ring = make_param_ring({"a11", "a22"});
    auto a11 = ParamPoly::variable(ring, "a11");
    auto a22 = ParamPoly::variable(ring, "a22");
    auto p = ParamPoly(ring, 3) * a11 + ParamPoly(ring, 2) * a22;
    EXPECT_EQ(mod2_reduce(p), a11);
}

TEST(ExactDiv, Integers) {
    EXPECT_EQ(*exact_div_int(Integer(4), Integer(2)), 2);
    EXPECT_FALSE(exact_div_int(Integer(3), Integer(2)).has_value());
    EXPECT_THROW(exact_div_int(Integer(3), Integer(0)), Error);
}

TEST(ExactDiv, ParamPoly) {
    auto ring = make_param_ring({"a11"});
    auto a11 = ParamPoly::variable(ring, "a11");
    EXPECT_EQ(*exact_div_int(ParamPoly(ring, 2) * a11, Integer(2)), a11);
    EXPECT_FALSE(exact_div_int(ParamPoly(ring, 2) * a11 + ParamPoly(ring, 1), Integer(2)).has_value());
}

TEST(ExactDiv, DyadicAbsorbsPowersOfTwo) {
    auto q = exact_div_int(Dyadic(3), Integer(4));
    ASSERT_TRUE(q.has_value());
    EXPECT_EQ(q->numerator(), 3);
    EXPECT_EQ(q->exponent(), 2u);
    EXPECT_FALSE(exact_div_int(Dyadic(4), Integer(3)).has_value());
}

TEST(Dyadic, LowestTerms) {
    Dyadic d(Integer(12), 3); // 12/8 = 3/2
    EXPECT_EQ(d.numerator(), 3);
    EXPECT_EQ(d.exponent(), 1u);
    EXPECT_TRUE((Dyadic(Integer(1), 1) + Dyadic(Integer(1), 1)).is_integral());
    EXPECT_TRUE((Dyadic(5) - Dyadic(5)).is_zero());
    EXPECT_EQ(Dyadic(Integer(0), 4).exponent(), 0u);
}

TEST(Dyadic, NoMod2) { EXPECT_THROW(mod2_reduce(Dyadic(1)), Error); }

TEST(ParamRing, NamesAreDistinctAndNonempty) {
    EXPECT_THROW(make_param_ring({"a", "a"}), Error);
    EXPECT_THROW(make_param_ring({""}), Error);
}

TEST(ParamPoly, CanonicalZero) {
    auto ring = make_param_ring({"a", "b"});
    auto a = ParamPoly::variable(ring, "a");
    auto z = a - a;
    EXPECT_TRUE(z.is_zero());
    EXPECT_EQ(z, ParamPoly(ring, 0));
}

TEST(ParamPoly, MixingRingsFails) {
    auto r1 = make_param_ring({"a"});
    auto r2 = make_param_ring({"b"});
    EXPECT_THROW(ParamPoly::variable(r1, "a") + ParamPoly::variable(r2, "b"), Error);
}

TEST(ParamPoly, Evaluate) {
    auto ring = make_param_ring({"a", "b"});
    auto a = ParamPoly::variable(ring, "a"), b = ParamPoly::variable(ring, "b");
    auto p = a * a * b - ParamPoly(ring, 3) * b;
    EXPECT_EQ(p.evaluate({Integer(2), Integer(5)}), 5);
}

TEST(Content, Basics) {
    EXPECT_EQ(content(Integer(-6)), 6);
    auto ring = make_param_ring({"a"});
    auto a = ParamPoly::variable(ring, "a");
    EXPECT_EQ(content(ParamPoly(ring, 4) * a + ParamPoly(ring, 6)), 2);
}

TEST(Arithmetic, GcdLcmFloor) {
    EXPECT_EQ(gcd(Integer(12), Integer(18)), 6);
    EXPECT_EQ(lcm(Integer(4), Integer(6)), 12);
    EXPECT_EQ(floor_div(Integer(-7), Integer(2)), -4);
    EXPECT_TRUE(divisible(Integer(12), Integer(4)));
    EXPECT_FALSE(divisible(Integer(4), Integer(12)));
}

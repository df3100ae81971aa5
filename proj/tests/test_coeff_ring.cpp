#include "support.hpp"

#include <gtest/gtest.h>

using namespace intform;

namespace {

VariableList g_only() { return make_variables({"g"}); }

LaurentPoly g_pow(const VariableList& v, int k, Rational c = 1) { return LaurentPoly::monomial(v, c, {k}); }

}  // namespace

TEST(Rational, StaysReduced) {
    Rational q(6, 4);
    q.canonicalize();
    EXPECT_EQ(q.get_num(), 3);
    EXPECT_EQ(q.get_den(), 2);
    Rational r = Rational(1, 3) + Rational(1, 6);
    EXPECT_EQ(r.get_num(), 1);
    EXPECT_EQ(r.get_den(), 2);
    Rational s = Rational(-2, 4) * Rational(-4, 3);
    EXPECT_EQ(to_string(s), "2/3");
}

TEST(Rational, Helpers) {
    EXPECT_EQ(factorial(0), 1);
    EXPECT_EQ(factorial(5), 120);
    EXPECT_EQ(falling_factorial(5, 2), 20);
    EXPECT_EQ(falling_factorial(3, 0), 1);
    EXPECT_EQ(power(Rational(2, 3), -2), Rational(9, 4));
}

TEST(LpAdd, Examples) {
    auto v = g_only();
    auto one = LaurentPoly::constant(v, 1);
    EXPECT_EQ(lp_add(g_pow(v, 1) + one, -one), g_pow(v, 1));
    EXPECT_EQ(lp_add(g_pow(v, -1), g_pow(v, -1)), g_pow(v, -1, 2));
    LaurentPoly p = g_pow(v, 3) + g_pow(v, -2, Rational(1, 2));
    EXPECT_EQ(lp_add(LaurentPoly(v), p), p);
    EXPECT_TRUE((p - p).is_zero());
    EXPECT_TRUE((p - p).terms().empty());
}

TEST(LpMul, Examples) {
    auto v = g_only();
    auto one = LaurentPoly::constant(v, 1);
    EXPECT_EQ(lp_mul(g_pow(v, 1), g_pow(v, -1)), one);
    EXPECT_EQ(lp_mul(g_pow(v, 1) + one, g_pow(v, 1) - one), g_pow(v, 2) - one);
    EXPECT_EQ(lp_mul(g_pow(v, -2), g_pow(v, -2)), g_pow(v, -4));
}

TEST(LpArith, VariableMismatchIsStructural) {
    auto a = LaurentPoly::variable(make_variables({"g"}), 0);
    auto b = LaurentPoly::variable(make_variables({"h"}), 0);
    EXPECT_THROW(lp_add(a, b), StructuralError);
    EXPECT_THROW(lp_mul(a, b), StructuralError);
    // Same names in a distinct list object are the same variables.
    auto c = LaurentPoly::variable(make_variables({"g"}), 0);
    EXPECT_EQ(lp_add(a, c), g_pow(a.variables(), 1, 2));
}

TEST(LpSubstitute, Examples) {
    auto v = g_only();
    std::vector<MonomialImage> inv{{1, {-1}}};
    EXPECT_EQ(lp_substitute_monomial(g_pow(v, 3), inv, v), g_pow(v, -3));
    auto one = LaurentPoly::constant(v, 1);
    EXPECT_EQ(lp_substitute_monomial(one, inv, v), one);
    std::vector<MonomialImage> triple{{3, {1}}};
    auto p = g_pow(v, 1, 2) + g_pow(v, -1);
    auto q = lp_substitute_monomial(p, triple, v);
    EXPECT_EQ(q, g_pow(v, 1, 6) + g_pow(v, -1, Rational(1, 3)));
    for (int x : {1, 2}) {
        Rational pt[1] = {x};
        Rational img[1] = {3 * x};
        EXPECT_EQ(q.evaluate(pt), p.evaluate(img));
    }
}

TEST(LpSubstitute, ImagesAcrossVariableLists) {
    auto src = make_variables({"g"});
    auto dst = make_variables({"gt"});
    auto p = g_pow(src, 2) + g_pow(src, -1, 5);
    std::vector<MonomialImage> imgs{{1, {-1}}};
    auto q = lp_substitute_monomial(p, imgs, dst);
    EXPECT_EQ(q, g_pow(dst, -2) + g_pow(dst, 1, 5));
}

TEST(LpSubstitute, NonMonomialImageIsUnsupported) {
    auto v = g_only();
    std::vector<LaurentPoly> imgs{g_pow(v, 1) + LaurentPoly::constant(v, 1)};
    EXPECT_THROW(lp_substitute_monomial(g_pow(v, 2), imgs), UnsupportedError);
    std::vector<MonomialImage> zero{{0, {1}}};
    EXPECT_THROW(lp_substitute_monomial(g_pow(v, 2), zero, v), UnsupportedError);
}

TEST(LpPartial, Examples) {
    auto v = g_only();
    EXPECT_EQ(lp_partial(g_pow(v, 2), 0), g_pow(v, 1, 2));
    EXPECT_EQ(lp_partial(g_pow(v, -1), 0), g_pow(v, -2, -1));
    EXPECT_TRUE(lp_partial(LaurentPoly::constant(v, 7), 0).is_zero());
    EXPECT_THROW(lp_partial(g_pow(v, 1), 1), StructuralError);
}

TEST(LaurentPoly, PowersAndInverse) {
    auto v = make_variables({"x", "y"});
    auto m = LaurentPoly::monomial(v, Rational(2, 3), {1, -2});
    EXPECT_EQ(m * m.inverse_monomial(), LaurentPoly::constant(v, 1));
    EXPECT_EQ(m.pow(-2), LaurentPoly::monomial(v, Rational(9, 4), {-2, 4}));
    auto s = LaurentPoly::variable(v, 0) + LaurentPoly::variable(v, 1);
    EXPECT_EQ(s.pow(2), s * s);
    EXPECT_THROW(s.inverse_monomial(), UnsupportedError);
    EXPECT_THROW(s.pow(-1), UnsupportedError);
}

TEST(LaurentPoly, ExponentLengthChecked) {
    auto v = make_variables({"x", "y"});
    EXPECT_THROW(LaurentPoly::monomial(v, 1, {1}), StructuralError);
}

#include "support.hpp"

#include <gtest/gtest.h>

using namespace intform;

namespace {

const Atlas& p11() {
    static const Atlas a = builtin_p11();
    return a;
}

Superform u0(const std::string& s) { return parse_form(s, p11().chart("U0")); }

std::size_t error_position(const std::string& text, const Chart& c) {
    try {
        parse_form(text, c);
    } catch (const ParseError& e) {
        return e.position();
    }
    ADD_FAILURE() << "no parse error for " << text;
    return 0;
}

std::size_t atlas_error_position(const std::string& text) {
    try {
        parse_atlas(text);
    } catch (const ParseError& e) {
        return e.position();
    }
    ADD_FAILURE() << "no parse error for atlas";
    return 0;
}

}  // namespace

TEST(Parse, Constructors) {
    const auto& t = p11().chart("U0").table;
    auto a = u0("psi*dg*delta'(dpsi)");
    EXPECT_EQ(a, Superform::product("U0", t, {Factor::theta(0), Factor::d_even(0), Factor::delta(0, 1)}));
    auto gen = u0("g^-1 * psi * dg * delta(dpsi)");
    EXPECT_EQ(gen, Superform::product("U0", t, {Factor::theta(0), Factor::d_even(0), Factor::delta(0)},
                                      LaurentPoly::variable(t->evens, 0, -1)));
    EXPECT_TRUE(u0("dpsi*delta(dpsi)").is_zero());
}

TEST(Parse, Arithmetic) {
    EXPECT_EQ(u0("2*g - g"), u0("g"));
    EXPECT_EQ(u0("(g + 1)*(g - 1)"), u0("g^2 - 1"));
    EXPECT_EQ(u0("-psi + 3/6*psi"), u0("-1/2*psi"));
    EXPECT_EQ(u0("psi/g^2"), u0("g^-2*psi"));
    EXPECT_EQ(u0("dpsi^3"), u0("dpsi*dpsi*dpsi"));
    EXPECT_EQ(u0("delta^(3)(dpsi)"), u0("delta'''(dpsi)"));
    EXPECT_EQ(u0("delta'^(1)(dpsi)"), u0("delta''(dpsi)"));
    EXPECT_TRUE(u0("psi^2").is_zero());
    EXPECT_TRUE(u0("dg^2").is_zero());
    EXPECT_EQ(u0("psi^0"), u0("1"));
    EXPECT_TRUE(u0("0").is_zero());
}

TEST(Parse, IndexedCoordinates) {
    Atlas f = builtin_flat(2, 2);
    auto a = parse_form("g1*psi2*dg2*delta(dpsi1)", f.chart("C"));
    EXPECT_EQ(a.size(), 1u);
    EXPECT_EQ(a.terms().begin()->first.picture(), 1);
    EXPECT_THROW(parse_form("g3", f.chart("C")), ParseError);
}

TEST(Parse, ErrorsCarryPositions) {
    const auto& c = p11().chart("U0");
    EXPECT_EQ(error_position("g + h", c), 4u);
    EXPECT_EQ(error_position("psi^-1", c), 0u);
    EXPECT_EQ(error_position("g * (psi", c), 8u);
    EXPECT_EQ(error_position("delta(dg)", c), 6u);
    EXPECT_EQ(error_position("delta^(-1)(dpsi)", c), 7u);
    EXPECT_EQ(error_position("g $ 2", c), 2u);
    EXPECT_EQ(error_position("psi/(g+1)", c), 3u);
    EXPECT_EQ(error_position("psi/psi", c), 3u);
    EXPECT_EQ(error_position("g g", c), 2u);
    EXPECT_EQ(error_position("", c), 0u);
}

TEST(PrettyPrint, Examples) {
    EXPECT_EQ(pretty_print(Superform("U0", p11().chart("U0").table)), "0");
    EXPECT_EQ(pretty_print(u0("g*delta(dpsi) - psi*dg*delta'(dpsi)")), "g*delta(dpsi) - psi*dg*delta'(dpsi)");
    EXPECT_EQ(pretty_print(u0("-psi*dg*delta'(dpsi) + g*delta(dpsi)")), "g*delta(dpsi) - psi*dg*delta'(dpsi)");
    EXPECT_EQ(pretty_print(u0("3")), "3");
    EXPECT_EQ(pretty_print(u0("-1/2*g^-2*dpsi^2")), "-1/2*g^-2*dpsi^2");
    EXPECT_EQ(pretty_print(u0("delta^(4)(dpsi)")), "delta^(4)(dpsi)");
    EXPECT_EQ(pretty_print(u0("g^2 + g + 1 + dg")), "1 + g + g^2 + dg");
    EXPECT_EQ(bidegree_summary(u0("psi*delta(dpsi) + dg")), "(0|1): psi*delta(dpsi)\n(1|0): dg");
}

TEST(PrettyPrint, RoundTripsSamples) {
    for (const char* s : {"g^-1*psi*dg*delta(dpsi)", "g^2*delta'(dpsi) - g*psi*dg*delta''(dpsi)", "7/3*psi*dpsi^5"}) {
        auto a = u0(s);
        EXPECT_EQ(u0(pretty_print(a)), a) << s;
    }
}

TEST(AtlasFile, Parses) {
    auto a = parse_atlas(
        "# two charts\n"
        "atlas demo\n"
        "chart L (x | t) weights (1 | 1)\n"
        "chart R (y | s) weights (-1 | 0)   # trailing comment\n"
        "map R -> L : y = x^-1, s = t/x\n"
        "map L -> R : x = y^-1, t = s/y\n");
    EXPECT_EQ(a.name(), "demo");
    ASSERT_EQ(a.charts().size(), 2u);
    EXPECT_EQ(*a.chart("L").table->evens, (VariableNames{"x"}));
    EXPECT_EQ(a.chart("R").weights.front().even, (std::vector<int>{-1}));
    auto pulled = a.morphism("L", "R").pullback(parse_form("s", a.chart("R")));
    EXPECT_EQ(pulled, parse_form("x^-1*t", a.chart("L")));
    EXPECT_TRUE(a.morphism("L", "R").preserves_weights());
}

TEST(AtlasFile, Errors) {
    EXPECT_THROW(parse_atlas("chart A (x | )\n"), ParseError);
    EXPECT_EQ(atlas_error_position("atlas a\nfoo bar\n"), 8u);
    EXPECT_EQ(atlas_error_position("atlas a\nchart A x | t\n"), 15u);
    EXPECT_THROW(parse_atlas("atlas a\nchart A (x | t)\nchart A (y | s)\n"), ParseError);
    EXPECT_THROW(parse_atlas("atlas a\nchart A (x | x)\n"), ParseError);
    EXPECT_THROW(parse_atlas("atlas a\nchart A (x | t) weights (1 | )\n"), ParseError);
    EXPECT_THROW(parse_atlas("atlas a\nchart A (x | t) weights (one | 1)\n"), ParseError);
    EXPECT_THROW(parse_atlas("atlas a\nchart A (x | t)\nmap B -> A : y = x\n"), ParseError);
    const std::string two = "atlas a\nchart A (x | t)\nchart B (y | s)\n";
    EXPECT_THROW(parse_atlas(two + "map B -> A : y = x + 1, s = t\n"), ParseError);
    EXPECT_THROW(parse_atlas(two + "map B -> A : y = x, s = t*dx\n"), ParseError);
    EXPECT_THROW(parse_atlas(two + "map B -> A : y = x\n"), ParseError);
    EXPECT_THROW(parse_atlas(two + "map B -> A : z = x, s = t\n"), ParseError);
    // Position of the bad token inside a map expression is absolute.
    const std::string bad = two + "map B -> A : y = x, s = q\n";
    EXPECT_EQ(atlas_error_position(bad), bad.find(" q") + 1);
}

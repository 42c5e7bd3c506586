#include <gtest/gtest.h>

#include "splitnorm/roots.hpp"
#include "splitnorm/split.hpp"
#include "support/generators.hpp"
#include "support/shapes.hpp"

using namespace splitnorm;
using namespace splitnorm::testing;

TEST(Split, IndicatorHalves) {
    SplitPair s = split(chi(q(-1), q(1)));
    EXPECT_EQ(s.plus, chi(q(0), q(1)));
    EXPECT_EQ(s.minus, chi(q(-1), q(0)));
}

TEST(Split, OneSidedSupport) {
    PiecewisePoly f = PiecewisePoly::on_interval(q(2), q(3), P({1, -2, 1}));
    SplitPair s = split(f);
    EXPECT_EQ(s.plus, f);
    EXPECT_TRUE(s.minus.is_zero());
}

TEST(Split, TriangleGivesRamps) {
    PiecewisePoly f({q(-2), q(0), q(2)}, {P({2, 1}), P({2, -1})});
    SplitPair s = split(f);
    EXPECT_EQ(s.plus, PiecewisePoly::on_interval(q(0), q(2), P({2, -1})));
    EXPECT_EQ(s.minus, PiecewisePoly::on_interval(q(-2), q(0), P({2, 1})));
    EXPECT_EQ(s.plus, reflect(s.minus));
}

TEST(Split, ReconstructsRandomFunctions) {
    Gen g(11);
    for (int k = 0; k < 50; ++k) {
        PiecewisePoly f = g.piecewise(q(3, 2), 4, 3, true);
        SplitPair s = split(f);
        EXPECT_EQ(s.plus + s.minus, f);
        if (!s.plus.is_zero()) {
            EXPECT_GE(s.plus.support()->first, q(0));
        }
        if (!s.minus.is_zero()) {
            EXPECT_LE(s.minus.support()->second, q(0));
        }
    }
}

TEST(ApplySplit, ZeroShiftIsIdentity) {
    Gen g(12);
    for (int k = 0; k < 20; ++k) {
        PiecewisePoly f = g.piecewise(q(1), 3, 2, true);
        EXPECT_EQ(apply_split(f, q(0)), f);
    }
}

TEST(ApplySplit, IndicatorMovesApart) {
    for (Rat t : {q(1, 3), q(1), q(5, 2)}) {
        PiecewisePoly expected = chi(-1 - t, -t) + chi(t, 1 + t);
        EXPECT_EQ(apply_split(chi(q(-1), q(1)), t), expected);
    }
}

TEST(ApplySplit, NegativeShiftRejected) {
    expect_error(ErrorCode::NegativeShift, [] { apply_split(chi(q(-1), q(1)), q(-1, 2)); });
}

TEST(ApplySplit, ExactIsometry) {
    Gen g(13);
    for (int k = 0; k < 60; ++k) {
        PiecewisePoly f = g.piecewise(q(2), 4, 3, true);
        Rat t = g.rat(0, 12, 4);
        PiecewisePoly s = apply_split(f, t);
        EXPECT_EQ(l2_inner(s, s), l2_inner(f, f)) << "t = " << to_string(t);
    }
}

TEST(GenSplit, ZeroOffsetMatchesSplit) {
    Gen g(14);
    for (int k = 0; k < 20; ++k) {
        PiecewisePoly f = g.piecewise(q(1), 3, 2, true);
        SplitPair s = split(f);
        GenSplitSpec spec{s.minus, s.plus, q(1), q(0)};
        Rat t = g.rat(0, 8, 3);
        EXPECT_EQ(apply_gen_split(spec, t), apply_split(f, t));
    }
}

TEST(GenSplit, ZeroShiftAddsPieces) {
    GenSplitSpec spec{chi(q(-1), q(1, 2)), chi(q(-1, 2), q(1)), q(1), q(1, 2)};
    EXPECT_EQ(apply_gen_split(spec, q(0)), spec.f1 + spec.f2);
}

TEST(GenSplit, FactorsThroughShiftByB) {
    Gen g(15);
    for (int k = 0; k < 30; ++k) {
        Rat A(1), b = g.rat_in(q(-5, 6), q(5, 6));
        GenSplitSpec spec{PiecewisePoly::on_interval(-A, b, g.poly(2, true)),
                          PiecewisePoly::on_interval(-b, A, g.poly(2, true)), A, b};
        PiecewisePoly shifted = apply_gen_split(spec, b);
        for (int j = 0; j < 3; ++j) {
            Rat t = b + g.rat(0, 6, 2);
            EXPECT_EQ(apply_gen_split(spec, t), apply_split(shifted, t - b));
        }
    }
}

TEST(GenSplit, SupportViolationsRejected) {
    GenSplitSpec too_wide{chi(q(-1), q(1)), chi(q(0), q(1)), q(1), q(1, 2)};
    expect_error(ErrorCode::InvalidSpec, [&] { validate(too_wide); });
    GenSplitSpec bad_offset{chi(q(-1), q(0)), chi(q(0), q(1)), q(1), q(2)};
    expect_error(ErrorCode::InvalidSpec, [&] { apply_gen_split(bad_offset, q(1)); });
}

TEST(EvenOdd, IndicatorOnUnitInterval) {
    auto [e, o] = even_odd(chi(q(0), q(1)));
    EXPECT_EQ(e, chi(q(-1), q(1)) * GRat(q(1, 2)));
    EXPECT_EQ(o, (chi(q(0), q(1)) - chi(q(-1), q(0))) * GRat(q(1, 2)));
}

TEST(EvenOdd, Decomposition) {
    Gen g(16);
    for (int k = 0; k < 40; ++k) {
        PiecewisePoly f = g.piecewise(q(2), 4, 3, true);
        auto [e, o] = even_odd(f);
        EXPECT_EQ(e + o, f);
        EXPECT_EQ(reflect(e), e);
        EXPECT_EQ(reflect(o), o * GRat(-1));
    }
    PiecewisePoly even = tent();
    auto [e, o] = even_odd(even);
    EXPECT_EQ(e, even);
    EXPECT_TRUE(o.is_zero());
}

TEST(ClassS, Examples) {
    EXPECT_TRUE(class_s_check(chi(q(-1), q(1))).member);
    EXPECT_TRUE(class_s_check(tent()).member);

    ClassSVerdict v = class_s_check(two_bump());
    ASSERT_FALSE(v.member);
    ASSERT_TRUE(v.witness.has_value());
    // The witness is an exact pair x1 < x2 with (f_+ * f_-)(x1) < (f_+ * f_-)(x2).
    SplitPair s = split(two_bump());
    PiecewisePoly c = convolve(s.plus, s.minus);
    auto [x1, x2] = *v.witness;
    EXPECT_LT(x1, x2);
    EXPECT_GE(x1, q(0));
    EXPECT_LT(c.eval(x1).re, c.eval(x2).re);

    expect_error(ErrorCode::NonRealInput, [] {
        class_s_check(chi(q(-1), q(1)) * GRat(q(0), q(1)));
    });
}

TEST(ClassS, SufficientConditionExamples) {
    EXPECT_TRUE(class_s_sufficient(chi(q(-1), q(1)), q(0)));
    EXPECT_TRUE(class_s_sufficient(tent(), q(0)));
    for (Rat r : {q(0), q(1, 2), q(1), q(5), q(21, 2), q(11), q(20)})
        EXPECT_FALSE(class_s_sufficient(two_bump(), r)) << to_string(r);
    // Not even.
    EXPECT_FALSE(class_s_sufficient(chi(q(-1), q(2)), q(0)));
    // Not nonnegative.
    EXPECT_FALSE(class_s_sufficient(chi(q(-1), q(1)) * GRat(-1), q(0)));
    // Even annulus with its bump at r = 2.
    PiecewisePoly ring = chi(q(1), q(3)) + chi(q(-3), q(-1));
    EXPECT_TRUE(class_s_sufficient(ring, q(2)));
    EXPECT_FALSE(class_s_sufficient(ring, q(0)));
    EXPECT_TRUE(class_s_check(ring).member);
}

TEST(ClassS, NestedStepsAreMembers) {
    Gen g(17);
    for (int k = 0; k < 60; ++k) {
        Rat r;
        PiecewisePoly f = g.nested_steps(&r);
        ASSERT_TRUE(class_s_sufficient(f, r)) << "r = " << to_string(r);
        EXPECT_TRUE(class_s_check(f).member);
    }
}

TEST(ClassS, SufficientImpliesMember) {
    Gen g(18);
    int sufficient = 0;
    for (int k = 0; k < 80; ++k) {
        PiecewisePoly f = g.even_nonnegative();
        for (Rat r : {q(0), q(1), q(2), q(7, 2)}) {
            if (!class_s_sufficient(f, r)) continue;
            ++sufficient;
            EXPECT_TRUE(class_s_check(f).member);
        }
    }
    EXPECT_GT(sufficient, 0);
}

TEST(ClassSLemmas, NestedIndicatorCorrelationDecreases) {
    Gen g(19);
    for (int k = 0; k < 100; ++k) {
        Rat a2 = g.rat(0, 8, 3), b2 = a2 + g.rat(1, 8, 3);
        Rat a1 = g.rat_in(a2, b2), b1 = g.rat_in(a1, b2);
        if (a1 == b1) continue;
        PiecewisePoly small = chi(a1, b1), large = chi(a2, b2);
        EXPECT_TRUE(is_nonincreasing_on(convolve(small, reflect(large)), q(0)).holds);
        EXPECT_TRUE(is_nonincreasing_on(convolve(large, reflect(small)), q(0)).holds);
    }
}

TEST(ClassSLemmas, ConvolutionWithDecreasingKernel) {
    Gen g(20);
    for (int k = 0; k < 80; ++k) {
        // u >= 0 on (-inf, 0]
        PiecewisePoly u;
        for (int j = 0; j < 3; ++j) {
            Rat a = g.rat(-8, -1, 2);
            Rat b = g.rat_in(a, q(0));
            if (a < b) u += chi(a, b) * GRat(g.rat(1, 4, 2));
        }
        if (u.is_zero()) u = chi(q(-1), q(0));
        // v nonincreasing on [0, inf), arbitrary on the negative axis
        PiecewisePoly v = g.piecewise(q(2), 2, 2, false).restrict_to(std::nullopt, q(0));
        for (int j = 0; j < 3; ++j) {
            Rat b = g.rat(1, 8, 2);
            if (g.coin()) {
                v += chi(q(0), b) * GRat(g.rat(1, 3, 2));
            } else {
                v += PiecewisePoly::on_interval(q(0), b, Poly({GRat(b), GRat(-1)}));
            }
        }
        ASSERT_TRUE(is_nonincreasing_on(v, q(0)).holds);
        EXPECT_TRUE(is_nonincreasing_on(convolve(u, v), q(0)).holds);
    }
}

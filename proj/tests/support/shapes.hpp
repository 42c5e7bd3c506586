#pragma once

#include <gtest/gtest.h>

#include <initializer_list>
#include <vector>

#include "splitnorm/error.hpp"
#include "splitnorm/piecewise.hpp"

namespace splitnorm::testing {

inline Rat q(long n, long d = 1) { return ratio(n, d); }

inline Poly P(std::initializer_list<long> c) {
    std::vector<GRat> v;
    for (long x : c) v.emplace_back(x);
    return Poly(v);
}

inline PiecewisePoly chi(const Rat& a, const Rat& b) { return PiecewisePoly::indicator(a, b); }

// (1 - |x|)_+
inline PiecewisePoly tent() { return PiecewisePoly({q(-1), q(0), q(1)}, {P({1, 1}), P({1, -1})}); }

// chi_{|x| < 1} + chi_{10 < |x| < 11}
inline PiecewisePoly two_bump() { return chi(q(-1), q(1)) + chi(q(10), q(11)) + chi(q(-11), q(-10)); }

template <class F>
void expect_error(ErrorCode code, F&& body) {
    try {
        body();
        ADD_FAILURE() << "expected " << error_code_name(code);
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), code) << e.what();
    }
}

}  // namespace splitnorm::testing

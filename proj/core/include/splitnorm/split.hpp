#pragma once

#include <optional>
#include <utility>

#include "splitnorm/piecewise.hpp"
#include "splitnorm/roots.hpp"

namespace splitnorm {

struct SplitPair {
    PiecewisePoly plus;   // f restricted to x > 0
    PiecewisePoly minus;  // f restricted to x < 0
};

// f1 supported in [-A, b], f2 supported in [-b, A], |b| <= A.
struct GenSplitSpec {
    PiecewisePoly f1;
    PiecewisePoly f2;
    Rat A;
    Rat b;
};

SplitPair split(const PiecewisePoly& f);
// S_t f = f_+(x - t) + f_-(x + t).
PiecewisePoly apply_split(const PiecewisePoly& f, const Rat& t);
void validate(const GenSplitSpec& spec);
// f2(x - t) + f1(x + t).
PiecewisePoly apply_gen_split(const GenSplitSpec& spec, const Rat& t);
std::pair<PiecewisePoly, PiecewisePoly> even_odd(const PiecewisePoly& f);

struct ClassSVerdict {
    bool member = true;
    std::optional<std::pair<Rat, Rat>> witness;
};

// Decides whether f_+ * f_- is nonincreasing on [0, inf).
ClassSVerdict class_s_check(const PiecewisePoly& f);
// Bump criterion: f even, f >= 0, f_+ nondecreasing on (0, r], nonincreasing on [r, inf).
bool class_s_sufficient(const PiecewisePoly& f, const Rat& r);
bool is_nonnegative(const PiecewisePoly& f);

}  // namespace splitnorm

#include "splitnorm/split.hpp"

#include "splitnorm/error.hpp"

namespace splitnorm {

SplitPair split(const PiecewisePoly& f) {
    return {f.restrict_to(Rat(0), std::nullopt), f.restrict_to(std::nullopt, Rat(0))};
}

PiecewisePoly apply_split(const PiecewisePoly& f, const Rat& t) {
    if (sgn(t) < 0) throw Error(ErrorCode::NegativeShift, "split shift must be nonnegative, got " + to_string(t));
    SplitPair s = split(f);
    return translate(s.plus, t) + translate(s.minus, Rat(-t));
}

namespace {

bool within(const PiecewisePoly& f, const Rat& lo, const Rat& hi) {
    auto s = f.support();
    return !s || (s->first >= lo && s->second <= hi);
}

}  // namespace

void validate(const GenSplitSpec& spec) {
    if (rat_abs(spec.b) > spec.A) throw Error(ErrorCode::InvalidSpec, "|b| must not exceed A");
    if (!within(spec.f1, -spec.A, spec.b)) throw Error(ErrorCode::InvalidSpec, "f1 must be supported in [-A, b]");
    if (!within(spec.f2, -spec.b, spec.A)) throw Error(ErrorCode::InvalidSpec, "f2 must be supported in [-b, A]");
}

PiecewisePoly apply_gen_split(const GenSplitSpec& spec, const Rat& t) {
    validate(spec);
    return translate(spec.f2, t) + translate(spec.f1, Rat(-t));
}

std::pair<PiecewisePoly, PiecewisePoly> even_odd(const PiecewisePoly& f) {
    PiecewisePoly even = (f + reflect(f)) * GRat(Rat(1, 2));
    PiecewisePoly odd = f - even;
    return {even, odd};
}

ClassSVerdict class_s_check(const PiecewisePoly& f) {
    if (!f.is_real()) throw Error(ErrorCode::NonRealInput, "class S is defined for real functions");
    SplitPair s = split(f);
    MonotoneVerdict v = is_nonincreasing_on(convolve(s.plus, s.minus), Rat(0));
    return {v.holds, v.witness};
}

bool is_nonnegative(const PiecewisePoly& f) {
    if (!f.is_real()) return false;
    const auto& bp = f.breakpoints();
    for (std::size_t k = 0; k < f.pieces().size(); ++k) {
        const Poly& p = f.pieces()[k];
        if (p.is_zero()) continue;
        // The sign is constant between consecutive roots, so one probe per gap decides it.
        Rat prev = bp[k];
        for (const auto& root : isolate_real_roots(p, bp[k], bp[k + 1])) {
            if (sign_of(p, (prev + root.lo) / 2) < 0) return false;
            prev = root.hi;
        }
        if (sign_of(p, (prev + bp[k + 1]) / 2) < 0) return false;
    }
    return true;
}

bool class_s_sufficient(const PiecewisePoly& f, const Rat& r) {
    if (sgn(r) < 0 || !f.is_real()) return false;
    if (reflect(f) != f || !is_nonnegative(f)) return false;
    PiecewisePoly plus = split(f).plus;
    if (sgn(r) > 0 && !is_nondecreasing_on(plus, Rat(0), r).holds) return false;
    return is_nonincreasing_on(plus, r).holds;
}

}  // namespace splitnorm

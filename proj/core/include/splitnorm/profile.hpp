#pragma once

#include <map>
#include <optional>
#include <vector>

#include "splitnorm/piecewise.hpp"
#include "splitnorm/roots.hpp"
#include "splitnorm/split.hpp"

namespace splitnorm {

// (N_t f)^p as an exact piecewise polynomial in t on [t_start, t_max); constant tail_value beyond.
struct NormProfile {
    int p = 2;
    PiecewisePoly profile;
    Rat t0;
    Rat t_start;
    Rat t_max;
    Rat tail_value;
    Rat constancy_onset;

    Rat value(const Rat& t) const;
    double value(double t) const;
};

struct ConstancyVerdict {
    Rat constant_from;
    bool theorem_holds = false;
};

NormProfile norm_profile(const PiecewisePoly& f, int p);
// Reference values at a single t: ||(S_t f)^{*p/2}||_2^2 computed directly, and the unfolded
// sum over every ordered (i, j) correlation.
Rat profile_value_direct(const PiecewisePoly& f, int p, const Rat& t);
Rat profile_value_pairwise(const PiecewisePoly& f, int p, const Rat& t);
ConstancyVerdict check_constancy(const NormProfile& profile, const Rat& A);
ConstancyVerdict check_constancy_against(const NormProfile& profile, const Rat& threshold);
MonotoneVerdict check_monotone(const NormProfile& profile);
MonotoneVerdict check_monotone_between(const NormProfile& profile, const Rat& lo, const Rat& hi);
GRat newt_constant(const PiecewisePoly& f, int p);

Rat gen_t0(const Rat& A, const Rat& b, int p);
Rat gen_t0_2(const Rat& A, const Rat& b1, const Rat& b2, int p);
NormProfile gen_profile(const GenSplitSpec& spec, int p);

// Profile of g (x) h with ||F g||_p = gnorm: every value scales by gnorm^p.
struct ScaledProfile {
    NormProfile base;
    double scale = 1.0;

    double value(double t) const { return scale * base.value(t); }
    double tail_value() const { return scale * base.tail_value.get_d(); }
};

ScaledProfile separable_profile(double gnorm, const PiecewisePoly& h, int p);
NormProfile separable_profile_exact(const Rat& gnorm, const PiecewisePoly& h, int p);

// Smallest support radius A with supp f inside [-A, A].
Rat support_radius(const PiecewisePoly& f);
void require_even_p(int p);

}  // namespace splitnorm

#include "splitnorm/profile.hpp"

#include <cmath>
#include <stdexcept>

#include "splitnorm/error.hpp"
#include "splitnorm/jump_form.hpp"

namespace splitnorm {

void require_even_p(int p) {
    if (p < 2 || p % 2 != 0)
        throw Error(ErrorCode::OddOrNonintegerP, "exact engine needs an even p >= 2, got " + std::to_string(p));
}

Rat support_radius(const PiecewisePoly& f) {
    auto s = f.support();
    if (!s) return Rat(0);
    Rat lo = rat_abs(s->first), hi = rat_abs(s->second);
    return lo < hi ? hi : lo;
}

Rat NormProfile::value(const Rat& t) const {
    if (t >= t_max) return tail_value;
    return profile.eval(t).re;
}

double NormProfile::value(double t) const {
    if (t >= t_max.get_d()) return tail_value.get_d();
    return profile.eval(t).real();
}

namespace {

struct Blocks {
    std::vector<JumpForm> G;           // G_i, i = 0..m
    std::vector<PiecewisePoly> G_pp;
};

// G_i = a^{*i} * b^{*(m-i)}: `a` is the factor shifted by +t, `b` the one shifted by -t.
Blocks building_blocks(const PiecewisePoly& a, const PiecewisePoly& b, int m) {
    JumpForm ja = JumpForm::from_piecewise(a), jb = JumpForm::from_piecewise(b);
    std::vector<JumpForm> pa(static_cast<std::size_t>(m) + 1), pb(static_cast<std::size_t>(m) + 1);
    for (int k = 1; k <= m; ++k) {
        pa[static_cast<std::size_t>(k)] = k == 1 ? ja : convolve(pa[static_cast<std::size_t>(k) - 1], ja);
        pb[static_cast<std::size_t>(k)] = k == 1 ? jb : convolve(pb[static_cast<std::size_t>(k) - 1], jb);
    }
    Blocks out;
    for (int i = 0; i <= m; ++i) {
        const JumpForm& x = pa[static_cast<std::size_t>(i)];
        const JumpForm& y = pb[static_cast<std::size_t>(m - i)];
        JumpForm g = i == 0 ? y : (i == m ? x : convolve(x, y));
        out.G_pp.push_back(g.to_piecewise());
        out.G.push_back(std::move(g));
    }
    return out;
}

NormProfile assemble(const JumpForm& t_terms, const Rat& base, const Rat& t_start, int p, const Rat& t0) {
    std::vector<Rat> bp;
    std::vector<Poly> polys;
    t_terms.sweep(t_start, Poly::constant(GRat(base)), bp, polys);
    const Poly& tail = polys.back();
    if (tail.degree() > 0) throw std::logic_error("profile does not become constant");
    NormProfile out;
    out.p = p;
    out.t0 = t0;
    out.t_start = t_start;
    out.tail_value = tail.coeff(0).re;
    out.constancy_onset = bp.back();
    out.t_max = bp.back() + 1;
    bp.push_back(out.t_max);
    out.profile = PiecewisePoly(std::move(bp), std::move(polys));
    return out;
}

NormProfile profile_from_halves(const PiecewisePoly& right, const PiecewisePoly& left, int p, const Rat& t_start,
                                const Rat& t0) {
    require_even_p(p);
    const int m = p / 2;
    Blocks blocks = building_blocks(right, left, m);
    Rat base = 0;
    for (int i = 0; i <= m; ++i) {
        const auto& g = blocks.G_pp[static_cast<std::size_t>(i)];
        Rat b = binomial(m, i);
        base += b * b * l2_inner(g, g).re;
    }
    std::vector<JumpForm::Term> terms;
    for (int j = 1; j <= m; ++j) {
        JumpForm reflected = blocks.G[static_cast<std::size_t>(j)].conj_reflect();
        for (int i = 0; i < j; ++i) {
            // <tau_{s_i} G_i, tau_{s_j} G_j> = (G_i * conj-reflected G_j)(2 (j - i) t)
            JumpForm c = convolve(blocks.G[static_cast<std::size_t>(i)], reflected);
            const long k2 = 2L * (j - i);
            Rat weight = 2 * binomial(m, i) * binomial(m, j);
            for (const auto& term : c.terms()) {
                if (sgn(term.coeff.re) == 0) continue;
                Rat coeff = weight * term.coeff.re * rat_pow(Rat(k2), static_cast<unsigned long>(term.order));
                terms.push_back({term.at / k2, term.order, GRat(coeff)});
            }
        }
    }
    return assemble(JumpForm::from_terms(std::move(terms)), base, t_start, p, t0);
}

}  // namespace

NormProfile norm_profile(const PiecewisePoly& f, int p) {
    require_even_p(p);
    SplitPair s = split(f);
    Rat t0 = Rat(p - 2) * support_radius(f) / 4;
    return profile_from_halves(s.plus, s.minus, p, Rat(0), t0);
}

Rat profile_value_direct(const PiecewisePoly& f, int p, const Rat& t) {
    require_even_p(p);
    PiecewisePoly g = conv_power(apply_split(f, t), p / 2);
    return l2_inner(g, g).re;
}

Rat profile_value_pairwise(const PiecewisePoly& f, int p, const Rat& t) {
    require_even_p(p);
    const int m = p / 2;
    SplitPair s = split(f);
    Blocks blocks = building_blocks(s.plus, s.minus, m);
    GRat total;
    for (int i = 0; i <= m; ++i) {
        for (int j = 0; j <= m; ++j) {
            PiecewisePoly c = correlate(blocks.G_pp[static_cast<std::size_t>(j)], blocks.G_pp[static_cast<std::size_t>(i)]);
            total += c.eval(Rat(2 * (j - i)) * t) * (binomial(m, i) * binomial(m, j));
        }
    }
    if (!total.is_real()) throw std::logic_error("pairwise profile value is not real");
    return total.re;
}

ConstancyVerdict check_constancy_against(const NormProfile& profile, const Rat& threshold) {
    return {profile.constancy_onset, profile.constancy_onset <= threshold};
}

ConstancyVerdict check_constancy(const NormProfile& profile, const Rat& A) {
    return check_constancy_against(profile, Rat(profile.p - 2) * A / 4);
}

MonotoneVerdict check_monotone(const NormProfile& profile) {
    return is_nonincreasing_on(profile.profile, profile.t_start);
}

MonotoneVerdict check_monotone_between(const NormProfile& profile, const Rat& lo, const Rat& hi) {
    return is_nonincreasing_on(profile.profile, lo, hi);
}

GRat newt_constant(const PiecewisePoly& f, int p) {
    require_even_p(p);
    const int m = p / 2;
    SplitPair s = split(f);
    if (s.plus.is_zero() || s.minus.is_zero()) return {};
    JumpForm g = convolve(conv_power(JumpForm::from_piecewise(s.plus), m),
                          conv_power(JumpForm::from_piecewise(s.minus), m));
    return g.eval(Rat(0)) * binomial(p, m);
}

Rat gen_t0(const Rat& A, const Rat& b, int p) {
    require_even_p(p);
    if (rat_abs(b) > A) throw Error(ErrorCode::InvalidOffsets, "|b| must not exceed A");
    return Rat(p - 2) * (A + b) / 4 + b;
}

Rat gen_t0_2(const Rat& A, const Rat& b1, const Rat& b2, int p) {
    require_even_p(p);
    if (rat_abs(b1) > A || rat_abs(b2) > A) throw Error(ErrorCode::InvalidOffsets, "|b1|, |b2| must not exceed A");
    return Rat(p - 2) / 4 * (A + rat_abs(b1 + b2) / 2) + Rat(p - 2) / 8 * (b1 - b2);
}

NormProfile gen_profile(const GenSplitSpec& spec, int p) {
    require_even_p(p);
    validate(spec);
    Rat t0 = gen_t0(spec.A, spec.b, p);
    Rat start = sgn(t0) < 0 ? t0 : Rat(0);
    return profile_from_halves(spec.f2, spec.f1, p, start, t0);
}

ScaledProfile separable_profile(double gnorm, const PiecewisePoly& h, int p) {
    if (!(gnorm >= 0.0)) throw Error(ErrorCode::NegativeNorm, "gnorm must be nonnegative");
    ScaledProfile out;
    out.base = norm_profile(h, p);
    out.scale = std::pow(gnorm, p);
    return out;
}

NormProfile separable_profile_exact(const Rat& gnorm, const PiecewisePoly& h, int p) {
    if (sgn(gnorm) < 0) throw Error(ErrorCode::NegativeNorm, "gnorm must be nonnegative");
    NormProfile out = norm_profile(h, p);
    Rat scale = rat_pow(gnorm, static_cast<unsigned long>(p));
    out.profile *= GRat(scale);
    out.tail_value *= scale;
    return out;
}

}  // namespace splitnorm

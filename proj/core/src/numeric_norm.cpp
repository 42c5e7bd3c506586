#include "splitnorm/numeric_norm.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "splitnorm/fourier.hpp"
#include "splitnorm/jump_form.hpp"
#include "splitnorm/special.hpp"
#include "splitnorm/split.hpp"

namespace splitnorm {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double total_variation_bound(const PiecewisePoly& f) {
    if (f.is_zero()) return 0.0;
    double tv = 0.0;
    const auto& bp = f.breakpoints();
    const auto& pieces = f.pieces();
    for (std::size_t k = 0; k < bp.size(); ++k) {
        GRat right = k < pieces.size() ? pieces[k].eval(bp[k]) : GRat();
        GRat left = k > 0 ? pieces[k - 1].eval(bp[k]) : GRat();
        tv += std::abs((right - left).to_complex());
    }
    for (std::size_t k = 0; k < pieces.size(); ++k) {
        Rat c = (bp[k] + bp[k + 1]) / 2;
        double h = Rat((bp[k + 1] - bp[k]) / 2).get_d();
        Poly dq = pieces[k].taylor_shift(c).derivative();
        double sup = 0.0;
        for (int j = 0; j <= dq.degree(); ++j) sup += std::abs(dq.coeff(j).to_complex()) * std::pow(h, j);
        tv += 2.0 * h * sup;
    }
    return tv * (1.0 + 1e-12);
}

struct Interval {
    double lo;
    double hi;
};

std::optional<Interval> split_support(const SplitPair& s, double t) {
    std::optional<Interval> out;
    auto grow = [&](const PiecewisePoly& g, double shift) {
        auto sup = g.support();
        if (!sup) return;
        Interval iv{sup->first.get_d() + shift, sup->second.get_d() + shift};
        if (!out) out = iv;
        else out = Interval{std::min(out->lo, iv.lo), std::max(out->hi, iv.hi)};
    };
    grow(s.plus, t);
    grow(s.minus, -t);
    return out;
}

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    long evaluations = 0;
    bool capped = false;
};

template <class F>
void adaptive_panel(const F& g, double a, double b, double tol, int depth, QuadResult& acc, long cap) {
    double err = 0.0;
    double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(g, a, b, 0, 0.0, &err);
    acc.evaluations += 15;
    if (err <= tol || depth >= 30 || acc.evaluations >= cap) {
        if (err > tol && acc.evaluations >= cap) acc.capped = true;
        acc.value += v;
        acc.error += err;
        return;
    }
    double mid = 0.5 * (a + b);
    adaptive_panel(g, a, mid, 0.5 * tol, depth + 1, acc, cap);
    adaptive_panel(g, mid, b, 0.5 * tol, depth + 1, acc, cap);
}

template <class F>
QuadResult integrate_panels(const F& g, double Y, double width, double tol, long cap) {
    QuadResult acc;
    const long panels = std::max(2L, static_cast<long>(std::ceil(2.0 * Y / width)));
    const double w = 2.0 * Y / static_cast<double>(panels);
    const double panel_tol = tol / static_cast<double>(panels);
    for (long k = 0; k < panels; ++k) {
        double a = -Y + w * static_cast<double>(k);
        double b = k + 1 == panels ? Y : a + w;
        adaptive_panel(g, a, b, panel_tol, 0, acc, cap);
    }
    return acc;
}

struct ExpTerm {
    double phase;
    int order;
    std::complex<double> coeff;
};

using ExpKey = std::pair<long long, int>;

std::vector<ExpTerm> group_terms(const std::map<ExpKey, ExpTerm>& m) {
    std::vector<ExpTerm> out;
    for (const auto& [key, term] : m)
        if (term.coeff != 0.0) out.push_back(term);
    return out;
}

void accumulate(std::map<ExpKey, ExpTerm>& m, double phase, int order, std::complex<double> coeff) {
    ExpKey key{std::llround(phase * 1e9), order};
    auto it = m.find(key);
    if (it == m.end()) m.emplace(key, ExpTerm{phase, order, coeff});
    else it->second.coeff += coeff;
}

std::complex<double> inverse_i_power(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, -1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, 1.0};
    }
}

}  // namespace

double envelope_constant(const PiecewisePoly& f) {
    SplitPair s = split(f);
    return (total_variation_bound(s.plus) + total_variation_bound(s.minus)) / kTwoPi;
}

double tail_bound(const PiecewisePoly& f, double p, double Y) {
    if (!(p > 1.0)) throw Error(ErrorCode::TailDivergence, "tail integral diverges for p <= 1");
    if (!(Y > 0.0)) throw Error(ErrorCode::InvalidArgument, "tail cutoff must be positive");
    const double C = envelope_constant(f);
    return 2.0 * std::pow(C, p) * std::pow(Y, 1.0 - p) / (p - 1.0);
}

double expansion_tail(const PiecewisePoly& f, int p, double t, double Y, double* rounding_error, std::size_t term_cap) {
    if (p < 2 || p % 2 != 0) throw Error(ErrorCode::OddOrNonintegerP, "expansion tail needs an even integer p");
    SplitPair s = split(f);
    // F(y) = sum c e^{-i w x} (i w)^{-(n+1)}, w = 2 pi y, over the jumps (x, n, c) of S_t f.
    std::map<ExpKey, ExpTerm> base;
    auto add_jumps = [&](const PiecewisePoly& g, double shift) {
        const JumpForm jumps = JumpForm::from_piecewise(g);
        for (const auto& term : jumps.terms()) {
            int order = term.order + 1;
            accumulate(base, term.at.get_d() + shift, order, term.coeff.to_complex() * inverse_i_power(order));
        }
    };
    add_jumps(s.plus, t);
    add_jumps(s.minus, -t);
    std::vector<ExpTerm> F = group_terms(base);

    std::map<ExpKey, ExpTerm> sq;
    for (const auto& a : F)
        for (const auto& b : F) accumulate(sq, a.phase - b.phase, a.order + b.order, a.coeff * std::conj(b.coeff));
    std::vector<ExpTerm> square = group_terms(sq);
    std::vector<ExpTerm> power = square;
    for (int k = 1; k < p / 2; ++k) {
        if (power.size() * square.size() > term_cap * 64)
            throw Error(ErrorCode::BudgetExceeded, "asymptotic expansion too large");
        std::map<ExpKey, ExpTerm> next;
        for (const auto& a : power)
            for (const auto& b : square) accumulate(next, a.phase + b.phase, a.order + b.order, a.coeff * b.coeff);
        power = group_terms(next);
        if (power.size() > term_cap) throw Error(ErrorCode::BudgetExceeded, "asymptotic expansion too large");
    }

    const double omega = kTwoPi * Y;
    std::complex<double> total = 0.0;
    double magnitude = 0.0;
    for (const auto& term : power) {
        std::complex<double> right = oscillatory_tail(term.order, term.phase, omega);
        std::complex<double> left = oscillatory_tail(term.order, -term.phase, omega);
        if (term.order % 2 != 0) left = -left;
        total += term.coeff * (right + left);
        magnitude += std::abs(term.coeff) * 2.0 * std::pow(omega, 1.0 - term.order) / (term.order - 1.0);
    }
    total /= kTwoPi;
    magnitude /= kTwoPi;
    if (rounding_error) *rounding_error = 1e-13 * magnitude + std::abs(total.imag());
    return total.real();
}

NumericNorm norm_numeric(const PiecewisePoly& f, double p, double t, double target, const NumericOptions& options) {
    if (!(p > 1.0)) throw Error(ErrorCode::TailDivergence, "p must exceed 1 for a finite tail");
    if (t < 0.0) throw Error(ErrorCode::NegativeShift, "t must be nonnegative");
    if (!(target > 0.0)) throw Error(ErrorCode::InvalidArgument, "target error must be positive");

    NumericNorm out;
    out.p = p;
    out.t = t;
    SplitPair halves = split(f);
    auto support = split_support(halves, t);
    if (!support) return out;

    const SplitTransform transform(f);
    auto integrand = [&](double y) { return std::pow(std::abs(transform(y, t)), p); };
    const double diameter = std::max(support->hi - support->lo, 1e-3);
    const double width = 1.0 / (diameter * std::max(1.0, p / 2.0));
    auto nodes_for = [&](double Y) { return 2.0 * Y / width * 15.0 * 2.0; };

    const double C = envelope_constant(f);
    const double tail_target = target / 2.0;
    double Y_bound = std::pow(2.0 * std::pow(C, p) / ((p - 1.0) * tail_target), 1.0 / (p - 1.0));
    Y_bound = std::max(Y_bound, 1.0);

    const bool even_integer = std::abs(p - std::round(p)) == 0.0 && static_cast<long>(std::round(p)) % 2 == 0;
    bool use_expansion = options.allow_expansion && even_integer && nodes_for(Y_bound) > options.node_cap / 2.0;
    double tail_value = 0.0;
    double Y = Y_bound;
    if (use_expansion) {
        double min_width = std::numeric_limits<double>::infinity();
        int max_degree = 0;
        for (const auto* g : {&halves.plus, &halves.minus}) {
            const auto& bp = g->breakpoints();
            for (std::size_t k = 0; k + 1 < bp.size(); ++k) min_width = std::min(min_width, Rat(bp[k + 1] - bp[k]).get_d());
            max_degree = std::max(max_degree, g->max_degree());
        }
        Y = std::max(2.0, 2.0 * (max_degree + 1) / min_width);
        try {
            double rounding = 0.0;
            tail_value = expansion_tail(f, static_cast<int>(std::lround(p)), t, Y, &rounding);
            out.tail_error = rounding;
            out.tail_method = TailMethod::Expansion;
        } catch (const Error&) {
            use_expansion = false;
            Y = Y_bound;
        }
    }
    if (!use_expansion) {
        // Cap the cutoff so the quadrature itself stays inside the node budget.
        const double Y_cap = options.node_cap / 2.0 * width / 30.0;
        Y = std::min(Y_bound, std::max(Y_cap, 1.0));
        const double bound = tail_bound(f, p, Y);
        tail_value = 0.5 * bound;
        out.tail_error = 0.5 * bound;
        out.tail_method = TailMethod::Bound;
    }

    const double quad_target = std::max(target - out.tail_error, target * 0.25);
    QuadResult q = integrate_panels(integrand, Y, width, quad_target, options.node_cap);
    out.cutoff = Y;
    out.value = q.value + tail_value;
    out.quadrature_error = q.error;
    out.abs_error = q.error + out.tail_error;
    out.evaluations = q.evaluations;
    out.met_target = out.abs_error <= target && !q.capped;
    if (!out.met_target && options.strict) {
        std::ostringstream msg;
        msg.precision(6);
        msg << "target " << target << " unreachable within " << options.node_cap
            << " evaluations; achieved error " << out.abs_error;
        throw BudgetExceededError(msg.str(), out);
    }
    return out;
}

}  // namespace splitnorm

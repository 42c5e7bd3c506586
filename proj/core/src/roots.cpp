#include "splitnorm/roots.hpp"

#include "splitnorm/error.hpp"

namespace splitnorm {

namespace {

int sign_variations(const Poly& p) {
    int count = 0, last = 0;
    for (const auto& c : p.coeffs()) {
        int s = sgn(c.re);
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

// Shrinks a step away from a root at `x` toward `toward` until the gap is root-free.
Rat step_off_root(const Poly& q, const Rat& x, const Rat& toward) {
    Rat step = (toward - x) / 2;
    while (true) {
        Rat y = x + step;
        bool clear = sign_of(q, y) != 0 &&
                     (sgn(step) > 0 ? descartes_bound(q, x, y) : descartes_bound(q, y, x)) == 0;
        if (clear) return y;
        step /= 2;
    }
}

void isolate(const Poly& q, const Rat& a, const Rat& b, std::vector<RootInterval>& out) {
    int v = descartes_bound(q, a, b);
    if (v == 0) return;
    if (v == 1) {
        out.push_back({a, b});
        return;
    }
    Rat m = (a + b) / 2;
    if (sign_of(q, m) != 0) {
        isolate(q, a, m, out);
        isolate(q, m, b, out);
        return;
    }
    Rat left = step_off_root(q, m, a);
    Rat right = step_off_root(q, m, b);
    isolate(q, a, left, out);
    out.push_back({m, m});
    isolate(q, right, b, out);
}

}  // namespace

int descartes_bound(const Poly& p, const Rat& lo, const Rat& hi) {
    Poly mapped = p.taylor_shift(lo).scale_argument(hi - lo);
    std::vector<GRat> rev(mapped.coeffs().rbegin(), mapped.coeffs().rend());
    return sign_variations(Poly(std::move(rev)).taylor_shift(Rat(1)));
}

std::vector<RootInterval> isolate_real_roots(const Poly& p, const Rat& lo, const Rat& hi) {
    if (p.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "cannot isolate roots of the zero polynomial");
    if (!p.is_real()) throw Error(ErrorCode::NonRealInput, "root isolation needs real coefficients");
    std::vector<RootInterval> out;
    if (!(lo < hi) || p.degree() == 0) return out;
    Poly q = square_free_part(p);
    Rat a = lo, b = hi;
    if (sign_of(q, a) == 0) a = step_off_root(q, a, (lo + hi) / 2);
    if (sign_of(q, b) == 0) b = step_off_root(q, b, (lo + hi) / 2);
    isolate(q, a, b, out);
    return out;
}

namespace {

struct Segment {
    Rat lo;
    std::optional<Rat> hi;
    Poly poly;
};

using Witnesses = std::vector<std::pair<Rat, Rat>>;

// Appends one witness per maximal open interval of (l, r) on which p increases.
void interior_witnesses(const Poly& p, const Rat& l, const Rat& r, Witnesses& out, bool first_only) {
    Poly q = p.derivative();
    if (q.is_zero()) return;
    std::vector<RootInterval> roots = isolate_real_roots(q, l, r);
    Poly qs = square_free_part(q);
    // Shrink isolating intervals away from l and r so every component has interior points.
    for (auto& iv : roots) {
        while (!iv.exact() && (iv.lo == l || iv.hi == r)) {
            Rat mid = (iv.lo + iv.hi) / 2;
            if (sign_of(qs, mid) == 0) {
                iv = {mid, mid};
                break;
            }
            auto left = isolate_real_roots(qs, iv.lo, mid);
            iv = left.empty() ? isolate_real_roots(qs, mid, iv.hi).front() : left.front();
        }
    }
    // Boundary points between components: the left inner point of each component and the right inner point.
    std::vector<Rat> lefts{l}, rights;
    for (const auto& root : roots) {
        rights.push_back(root.lo);
        lefts.push_back(root.hi);
    }
    rights.push_back(r);
    for (std::size_t k = 0; k < lefts.size(); ++k) {
        const Rat& x1 = lefts[k];
        const Rat& bound = rights[k];
        if (x1 < bound) {
            Rat s = (x1 + bound) / 2;
            if (sign_of(q, s) > 0) {
                out.emplace_back(Rat((x1 + s) / 2), s);
                if (first_only) return;
            }
            continue;
        }
        // Shared isolating endpoint: x1 is strictly between two roots.
        if (sign_of(q, x1) > 0) {
            Rat limit = k + 1 < lefts.size() ? lefts[k + 1] : r;
            Rat step = (limit - x1) / 2;
            while (descartes_bound(qs, x1, x1 + step) != 0) step /= 2;
            out.emplace_back(x1, x1 + step);
            if (first_only) return;
        }
    }
}

Witnesses scan(const PiecewisePoly& f, const Rat& a, const std::optional<Rat>& hi, bool first_only) {
    if (!f.is_real()) throw Error(ErrorCode::NonRealInput, "monotonicity needs a real function");
    Witnesses out;
    if (f.is_zero() || (hi && !(a < *hi))) return out;

    std::vector<Segment> segments;
    const auto& bp = f.breakpoints();
    if (a < bp.front()) segments.push_back({a, bp.front(), Poly()});
    for (std::size_t k = 0; k < f.pieces().size(); ++k) {
        if (bp[k + 1] <= a) continue;
        segments.push_back({bp[k] < a ? a : bp[k], bp[k + 1], f.pieces()[k]});
    }
    segments.push_back({a < bp.back() ? bp.back() : a, std::nullopt, Poly()});

    for (std::size_t k = 0; k < segments.size(); ++k) {
        Segment& seg = segments[k];
        if (hi && seg.lo >= *hi) break;
        if (hi && (!seg.hi || *seg.hi > *hi)) seg.hi = *hi;
        if (k > 0) {
            const Segment& prev = segments[k - 1];
            GRat left = prev.poly.eval(seg.lo);
            GRat value = seg.poly.eval(seg.lo);
            if (left.re < value.re) {
                Rat delta = (seg.lo - prev.lo) / 2;
                while (!(prev.poly.eval(seg.lo - delta).re < value.re)) delta /= 2;
                out.emplace_back(seg.lo - delta, seg.lo);
                if (first_only) return out;
            }
        }
        if (!seg.hi) continue;
        interior_witnesses(seg.poly, seg.lo, *seg.hi, out, first_only);
        if (first_only && !out.empty()) return out;
    }
    return out;
}

}  // namespace

MonotoneVerdict is_nonincreasing_on(const PiecewisePoly& f, const Rat& a, const std::optional<Rat>& hi) {
    MonotoneVerdict verdict;
    Witnesses w = scan(f, a, hi, true);
    if (!w.empty()) {
        verdict.holds = false;
        verdict.witness = w.front();
    }
    return verdict;
}

std::vector<std::pair<Rat, Rat>> increase_witnesses(const PiecewisePoly& f, const Rat& a, const std::optional<Rat>& hi) {
    return scan(f, a, hi, false);
}

MonotoneVerdict is_nondecreasing_on(const PiecewisePoly& f, const Rat& a, const std::optional<Rat>& hi) {
    return is_nonincreasing_on(f * GRat(-1), a, hi);
}

}  // namespace splitnorm

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "splitnorm/piecewise.hpp"

namespace splitnorm {

// A root lies in the open interval (lo, hi), or equals lo when lo == hi.
struct RootInterval {
    Rat lo;
    Rat hi;
    bool exact() const { return lo == hi; }
};

std::vector<RootInterval> isolate_real_roots(const Poly& p, const Rat& lo, const Rat& hi);
// Upper bound on the number of roots of p in (lo, hi) from Descartes' rule of signs.
int descartes_bound(const Poly& p, const Rat& lo, const Rat& hi);

struct MonotoneVerdict {
    bool holds = true;
    // When !holds: x1 < x2 with f(x1) < f(x2).
    std::optional<std::pair<Rat, Rat>> witness;
};

// Exact decision of "f nonincreasing on [a, hi)" (hi absent means +infinity).
MonotoneVerdict is_nonincreasing_on(const PiecewisePoly& f, const Rat& a,
                                    const std::optional<Rat>& hi = std::nullopt);
// One witness for each place where f increases on [a, hi): every jump up and every maximal
// open interval with positive derivative, in increasing order.
std::vector<std::pair<Rat, Rat>> increase_witnesses(const PiecewisePoly& f, const Rat& a,
                                                    const std::optional<Rat>& hi = std::nullopt);
// Same decision for "nondecreasing on [a, hi)".
MonotoneVerdict is_nondecreasing_on(const PiecewisePoly& f, const Rat& a,
                                    const std::optional<Rat>& hi = std::nullopt);

}  // namespace splitnorm

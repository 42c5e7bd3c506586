#pragma once

#include <vector>

#include "splitnorm/piecewise.hpp"

namespace splitnorm {

// Truncated-power representation f(x) = sum_k c_k (x - b_k)_+^{n_k} / n_k!.
// For a piecewise polynomial the coefficient c of (b, n) is the jump of f^{(n)} at b,
// so convolution reduces to (b1, n1, c1) * (b2, n2, c2) = (b1 + b2, n1 + n2 + 1, c1 c2).
class JumpForm {
public:
    struct Term {
        Rat at;
        int order = 0;
        GRat coeff;
    };

    JumpForm() = default;
    static JumpForm from_piecewise(const PiecewisePoly& f);
    // Builds from arbitrary terms; merges duplicates and drops zeros.
    static JumpForm from_terms(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    GRat eval(const Rat& x) const;
    // Requires compact support: the polynomial to the right of the last jump must vanish.
    PiecewisePoly to_piecewise() const;

    // Sweeps the jumps in increasing order starting from `start` with `base` as the polynomial
    // valid left of every jump. Returns breakpoints (first is `start`) and the polynomial on each
    // gap; the last polynomial is the one valid beyond the final jump.
    void sweep(const Rat& start, const Poly& base, std::vector<Rat>& breakpoints,
               std::vector<Poly>& polys) const;

    JumpForm conj_reflect() const;
    JumpForm real_part() const;

    friend JumpForm convolve(const JumpForm& a, const JumpForm& b);

private:
    std::vector<Term> terms_;  // sorted by (at, order)
};

JumpForm convolve(const JumpForm& a, const JumpForm& b);
JumpForm conv_power(const JumpForm& f, int k);

}  // namespace splitnorm

#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "splitnorm/rational.hpp"

namespace splitnorm {

// Finite sequence {c_k}, k in [-A, A].
struct CoeffSeq {
    std::map<long, GRat> coeffs;
    long A = 0;

    void validate() const;
};

// Coefficients of S_t c: c_k moves to k + t (k > 0) or k - t (k < 0); c_0 splits evenly onto +-t.
std::map<long, GRat> split_sequence(const CoeffSeq& c, long t);
// int_0^1 |sum_k b_k e^{-2 pi i k x}|^p dx for the split sequence at integer t >= 0.
Rat series_value(const CoeffSeq& c, int p, long t);
std::vector<std::pair<long, Rat>> series_profile(const CoeffSeq& c, int p, long t_lo, long t_hi);

struct SeriesConstancy {
    long threshold = 0;  // first integer t at which the statement is checked
    bool constant = true;
    std::optional<long> first_mismatch;
    long onset = 1;  // least integer t >= 1 from which the values on [t, t_hi] agree
};

// Checks equality of values for every integer t in [threshold, t_hi],
// threshold = max(1, ceil((p - 2) A / 4)). When (p - 2) A / 4 is an integer the value at the
// threshold itself can differ: the edge correlation term is a product of the extreme
// coefficients, and only t > (p - 2) A / 4 removes it.
SeriesConstancy series_constancy(const CoeffSeq& c, int p, long t_hi);
long series_threshold(long A, int p);

}  // namespace splitnorm

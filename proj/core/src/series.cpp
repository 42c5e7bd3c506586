#include "splitnorm/series.hpp"

#include <algorithm>

#include "splitnorm/error.hpp"
#include "splitnorm/profile.hpp"

namespace splitnorm {

void CoeffSeq::validate() const {
    if (A < 0) throw Error(ErrorCode::InvalidArgument, "A must be nonnegative");
    for (const auto& [k, c] : coeffs)
        if ((k < -A || k > A) && !c.is_zero())
            throw Error(ErrorCode::InvalidArgument, "coefficient index " + std::to_string(k) + " outside [-A, A]");
}

std::map<long, GRat> split_sequence(const CoeffSeq& c, long t) {
    if (t < 0) throw Error(ErrorCode::NegativeShift, "series shift must be a nonnegative integer");
    std::map<long, GRat> b;
    for (const auto& [k, v] : c.coeffs) {
        if (v.is_zero()) continue;
        if (k > 0) b[k + t] += v;
        else if (k < 0) b[k - t] += v;
        else {
            GRat half = v / Rat(2);
            b[t] += half;
            b[-t] += half;
        }
    }
    return b;
}

namespace {

std::map<long, GRat> convolve_seq(const std::map<long, GRat>& a, const std::map<long, GRat>& b) {
    std::map<long, GRat> out;
    for (const auto& [i, x] : a)
        for (const auto& [j, y] : b) out[i + j] += x * y;
    return out;
}

}  // namespace

Rat series_value(const CoeffSeq& c, int p, long t) {
    require_even_p(p);
    c.validate();
    std::map<long, GRat> b = split_sequence(c, t);
    std::map<long, GRat> power = b;
    for (int k = 1; k < p / 2; ++k) power = convolve_seq(power, b);
    Rat total = 0;
    for (const auto& [k, v] : power) total += v.norm_sq();
    return total;
}

std::vector<std::pair<long, Rat>> series_profile(const CoeffSeq& c, int p, long t_lo, long t_hi) {
    require_even_p(p);
    if (t_lo < 0) throw Error(ErrorCode::NegativeShift, "series shifts start at t = 0");
    std::vector<std::pair<long, Rat>> out;
    for (long t = t_lo; t <= t_hi; ++t) out.emplace_back(t, series_value(c, p, t));
    return out;
}

long series_threshold(long A, int p) {
    require_even_p(p);
    Rat t0 = ratio((p - 2) * A, 4);
    return std::max(1L, rat_ceil(t0).get_num().get_si());
}

SeriesConstancy series_constancy(const CoeffSeq& c, int p, long t_hi) {
    SeriesConstancy out;
    out.threshold = series_threshold(c.A, p);
    t_hi = std::max(t_hi, out.threshold);
    std::vector<Rat> values;
    for (long t = 1; t <= t_hi; ++t) values.push_back(series_value(c, p, t));
    const Rat& reference = values[static_cast<std::size_t>(out.threshold - 1)];
    for (long t = out.threshold + 1; t <= t_hi; ++t) {
        if (values[static_cast<std::size_t>(t - 1)] != reference) {
            out.constant = false;
            out.first_mismatch = t;
            break;
        }
    }
    out.onset = t_hi;
    while (out.onset > 1 && values[static_cast<std::size_t>(out.onset - 2)] == values.back()) --out.onset;
    return out;
}

}  // namespace splitnorm

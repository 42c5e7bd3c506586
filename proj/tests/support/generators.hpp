#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "splitnorm/piecewise.hpp"
#include "splitnorm/rational.hpp"

namespace splitnorm::testing {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
    bool coin() { return integer(0, 1) == 1; }

    // Small rational num/den with den in [1, max_den].
    Rat rat(long lo_num, long hi_num, long max_den = 4) {
        return ratio(integer(lo_num, hi_num), integer(1, max_den));
    }

    Rat rat_in(const Rat& lo, const Rat& hi, long steps = 12) {
        return Rat(lo + (hi - lo) * ratio(integer(0, steps), steps));
    }

    GRat grat(bool complex) {
        GRat z(rat(-4, 4, 3));
        if (complex) z.im = rat(-4, 4, 3);
        return z;
    }

    Poly poly(int max_degree, bool complex) {
        std::vector<GRat> c;
        int d = static_cast<int>(integer(0, max_degree));
        for (int k = 0; k <= d; ++k) c.push_back(grat(complex));
        return Poly(c);
    }

    // Breakpoints are drawn from the grid A * k / 6 inside [-A, A].
    PiecewisePoly piecewise(const Rat& A, int max_pieces, int max_degree, bool complex) {
        const long steps = 6;
        std::vector<long> ks;
        int pieces = static_cast<int>(integer(1, max_pieces));
        while (static_cast<int>(ks.size()) < pieces + 1) {
            long k = integer(-steps, steps);
            if (std::find(ks.begin(), ks.end(), k) == ks.end()) ks.push_back(k);
        }
        std::sort(ks.begin(), ks.end());
        std::vector<Rat> bp;
        for (long k : ks) bp.push_back(Rat(A * ratio(k, steps)));
        std::vector<Poly> ps;
        for (int k = 0; k < pieces; ++k) ps.push_back(poly(max_degree, complex));
        return PiecewisePoly(bp, ps);
    }

    // Even, nonnegative, radially nonincreasing step-and-tent bump: in S with r = 0.
    PiecewisePoly centred_bump() {
        PiecewisePoly f;
        int terms = static_cast<int>(integer(1, 3));
        for (int k = 0; k < terms; ++k) {
            Rat a = rat(1, 8, 4);
            GRat c(rat(1, 4, 2));
            if (coin()) {
                f += PiecewisePoly::indicator(-a, a) * c;
            } else {
                Poly up({GRat(1), GRat(Rat(1) / a)});
                Poly down({GRat(1), GRat(Rat(-1) / a)});
                f += PiecewisePoly({-a, Rat(0), a}, {up, down}) * c;
            }
        }
        return f;
    }

    // Even step function whose positive half is sum c_j chi_{A_j} with nested A_j containing r.
    PiecewisePoly nested_steps(Rat* centre = nullptr) {
        Rat r = rat(0, 8, 2);
        if (centre) *centre = r;
        Rat lo = r, hi = r;
        PiecewisePoly plus;
        int terms = static_cast<int>(integer(1, 4));
        for (int k = 0; k < terms; ++k) {
            lo = std::max(Rat(0), Rat(lo - rat(0, 4, 2)));
            hi = hi + rat(1, 4, 2);
            plus += PiecewisePoly::indicator(lo, hi) * GRat(rat(1, 3, 2));
        }
        return plus + reflect(plus);
    }

    // Real, even, nonnegative; not necessarily in S.
    PiecewisePoly even_nonnegative() {
        PiecewisePoly h;
        int terms = static_cast<int>(integer(1, 3));
        for (int k = 0; k < terms; ++k) {
            Rat a = rat(-6, 6, 2);
            Rat w = rat(1, 4, 2);
            GRat c(rat(1, 3, 2));
            switch (integer(0, 2)) {
                case 0:
                    h += PiecewisePoly::indicator(a, a + w) * c;
                    break;
                case 1: {
                    Rat mid = a + w / 2;
                    Poly up({GRat(Rat(-a) / (mid - a)), GRat(Rat(1) / (mid - a))});
                    Poly down({GRat(Rat(a + w) / (a + w - mid)), GRat(Rat(-1) / (a + w - mid))});
                    h += PiecewisePoly({a, mid, Rat(a + w)}, {up, down}) * c;
                    break;
                }
                default: {
                    // (x - a)^2 on [a, a + w)
                    Poly sq({GRat(Rat(a * a)), GRat(Rat(-2 * a)), GRat(1)});
                    h += PiecewisePoly::on_interval(a, a + w, sq) * c;
                    break;
                }
            }
        }
        return h + reflect(h);
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace splitnorm::testing

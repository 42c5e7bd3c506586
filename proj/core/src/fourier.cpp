#include "splitnorm/fourier.hpp"

#include <cmath>

#include "splitnorm/split.hpp"

namespace splitnorm {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr int kMaxSeriesTerms = 120;

}  // namespace

FTEvaluator::FTEvaluator(const PiecewisePoly& f) : source_(f) {
    const auto& bp = f.breakpoints();
    for (std::size_t k = 0; k < f.pieces().size(); ++k) {
        if (f.pieces()[k].is_zero()) continue;
        Rat c = (bp[k] + bp[k + 1]) / 2;
        Rat h = (bp[k + 1] - bp[k]) / 2;
        Poly q = f.pieces()[k].taylor_shift(c);
        Piece piece;
        piece.center = c.get_d();
        piece.half = h.get_d();
        const int d = q.degree();
        for (const auto& coeff : q.coeffs()) piece.local.push_back(coeff.to_complex());
        Poly dq = q;
        Rat neg_h = -h;
        for (int j = 0; j <= d; ++j) {
            piece.derivs.push_back({dq.eval(neg_h).to_complex(), dq.eval(h).to_complex()});
            dq = dq.derivative();
        }
        // moments[n] = sum_k q_k int_{-h}^{h} u^{n+k} du / h^n, left without the n! and h^n factors.
        for (int n = 0; n < kMaxSeriesTerms; ++n) {
            std::complex<double> m = 0.0;
            for (int kk = 0; kk <= d; ++kk) {
                if ((n + kk) % 2 != 0) continue;
                m += piece.local[static_cast<std::size_t>(kk)] * (2.0 * std::pow(piece.half, kk + 1) / (n + kk + 1));
            }
            piece.moments.push_back(m);
        }
        piece.moment_bound = 0.0;
        for (int kk = 0; kk <= d; ++kk)
            piece.moment_bound += std::abs(piece.local[static_cast<std::size_t>(kk)]) * 2.0 * std::pow(piece.half, kk + 1);
        piece.switch_at = 0.5 + d;
        pieces_.push_back(std::move(piece));
    }
}

std::complex<double> FTEvaluator::piece_integral(const Piece& piece, double omega) const {
    const double wh = omega * piece.half;
    if (std::abs(wh) < piece.switch_at) {
        const std::complex<double> z(0.0, -wh);
        std::complex<double> power = 1.0, sum = 0.0;
        for (int n = 0; n < kMaxSeriesTerms; ++n) {
            if (n > 0) power *= z / static_cast<double>(n);
            std::complex<double> term = power * piece.moments[static_cast<std::size_t>(n)];
            sum += term;
            if (n > static_cast<int>(piece.local.size()) && std::abs(power) * piece.moment_bound <= 1e-18 * std::abs(sum))
                break;
        }
        return sum;
    }
    const std::complex<double> iw(0.0, omega);
    const std::complex<double> e_plus = std::polar(1.0, wh), e_minus = std::polar(1.0, -wh);
    std::complex<double> inv = 1.0 / iw, sum = 0.0;
    for (const auto& dv : piece.derivs) {
        sum += (dv[0] * e_plus - dv[1] * e_minus) * inv;
        inv /= iw;
    }
    return sum;
}

std::complex<double> FTEvaluator::operator()(double y) const {
    const double omega = kTwoPi * y;
    std::complex<double> total = 0.0;
    for (const auto& piece : pieces_) total += std::polar(1.0, -omega * piece.center) * piece_integral(piece, omega);
    return total;
}

std::complex<double> ft_eval(const PiecewisePoly& f, double y) { return FTEvaluator(f)(y); }

namespace {

SplitPair halves(const PiecewisePoly& f) { return split(f); }

}  // namespace

SplitTransform::SplitTransform(const PiecewisePoly& f)
    : plus_(halves(f).plus), minus_(halves(f).minus) {}

std::complex<double> SplitTransform::operator()(double y, double t) const {
    const double phase = kTwoPi * t * y;
    return std::polar(1.0, -phase) * plus_(y) + std::polar(1.0, phase) * minus_(y);
}

}  // namespace splitnorm

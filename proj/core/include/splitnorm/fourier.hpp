#pragma once

#include <complex>
#include <vector>

#include "splitnorm/piecewise.hpp"

namespace splitnorm {

// Fourier transform f^(y) = int f(x) e^{-2 pi i x y} dx of a piecewise polynomial.
// Each piece is handled in centred coordinates u = x - c on [-h, h]: a moment series when
// |omega| h is small, the closed integration-by-parts form otherwise.
class FTEvaluator {
public:
    explicit FTEvaluator(const PiecewisePoly& f);

    std::complex<double> operator()(double y) const;
    const PiecewisePoly& source() const { return source_; }

private:
    struct Piece {
        double center;
        double half;
        std::vector<std::complex<double>> local;                // coefficients in u
        std::vector<std::vector<std::complex<double>>> derivs;  // derivs[j][side]: q^{(j)}(-h), q^{(j)}(h)
        std::vector<std::complex<double>> moments;              // int_{-h}^{h} u^n q(u) du / n!
        double moment_bound;
        double switch_at;
    };
    std::complex<double> piece_integral(const Piece& piece, double omega) const;

    PiecewisePoly source_;
    std::vector<Piece> pieces_;
};

std::complex<double> ft_eval(const PiecewisePoly& f, double y);

// Transform of S_t f for real t >= 0: e^{-2 pi i t y} F f_+(y) + e^{2 pi i t y} F f_-(y).
class SplitTransform {
public:
    explicit SplitTransform(const PiecewisePoly& f);
    std::complex<double> operator()(double y, double t) const;
    const PiecewisePoly& plus() const { return plus_.source(); }
    const PiecewisePoly& minus() const { return minus_.source(); }

private:
    FTEvaluator plus_;
    FTEvaluator minus_;
};

}  // namespace splitnorm

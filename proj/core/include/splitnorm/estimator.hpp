#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "splitnorm/piecewise.hpp"

namespace splitnorm {

// Samples of a multiplier on the periodized grid xi_k = k * 2 Omega / N, k in [-N/2, N/2),
// stored in FFT order (index k for k >= 0, N + k for k < 0). At a jump the sample is the
// midpoint of the one-sided limits.
struct DiscreteMultiplier {
    std::size_t N = 0;
    double omega = 1.0;
    std::vector<std::complex<double>> samples;
    std::optional<double> support_radius;  // A
    std::optional<double> ell;             // max(|m(0-)|, |m(0+)|)
    std::string label;

    double spacing() const { return 2.0 * omega / static_cast<double>(N); }
    double frequency(std::size_t index) const;
    double sup_norm() const;
    bool is_even_real(double tol = 0.0) const;
    void validate() const;
};

// chi_{(-shift, inf)}; shift = 0 gives the half-line s.
DiscreteMultiplier half_line_multiplier(std::size_t N, double omega, double shift = 0.0);
DiscreteMultiplier segment_multiplier(std::size_t N, double omega, double a, double b);
DiscreteMultiplier tent_discrete(std::size_t N, double omega, double lambda = 1.0);
DiscreteMultiplier sample_multiplier(const PiecewisePoly& m, std::size_t N, double omega);
// m restricted to xi > 0 (the zero sample halves, as at any jump).
DiscreteMultiplier plus_part(const DiscreteMultiplier& m);

struct SplitMultiplier {
    DiscreteMultiplier multiplier;
    double t = 0.0;        // t after snapping to the grid
    long shift_steps = 0;  // t / spacing
};

// S_t m on the grid: xi > 0 samples move right by t, xi < 0 samples left by t, the zero sample
// is copied to both +-t and the gap is zero-filled. Exact when m is continuous at 0.
SplitMultiplier split_multiplier(const DiscreteMultiplier& m, double t);

enum class StepRule { Lbfgs, Power };

struct EstimateOptions {
    int iterations = 200;   // per start
    int starts = 1;         // seeded random starts, plus the initial function if one is given
    StepRule step_rule = StepRule::Power;
    bool real_test_functions = false;
    std::uint64_t seed = 1;
    std::optional<std::vector<std::complex<double>>> initial;
};

struct LowerEstimate {
    double p = 2.0;
    double estimate = 0.0;                           // ||T f||_p / ||f||_p for the best f found
    std::vector<std::complex<double>> test_function;  // best f, normalized to ||f||_p = 1
    std::vector<double> history;                     // quotient after each accepted step of the best run
    int iterations = 0;
    bool converged = false;
    bool approximate = true;                         // continuum claim is approximate
};

// Discrete operator T f = IDFT(m DFT f) and the quotient ||T f||_p / ||f||_p.
double discrete_quotient(const DiscreteMultiplier& m, const std::vector<std::complex<double>>& f, double p);

// Maximizes the quotient; the result is a certified lower bound for the discrete operator norm.
LowerEstimate estimate_lower(const DiscreteMultiplier& m, double p, const EstimateOptions& options = {});

}  // namespace splitnorm

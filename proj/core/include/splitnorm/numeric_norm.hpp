#pragma once

#include <string>

#include "splitnorm/error.hpp"
#include "splitnorm/piecewise.hpp"

namespace splitnorm {

enum class TailMethod { Bound, Expansion };

struct NumericOptions {
    long node_cap = 1L << 20;       // total integrand evaluations; the first pass over the base panels always runs
    bool allow_expansion = true;    // exact asymptotic tail for even integer p
    bool strict = true;             // throw BudgetExceeded when the target is missed
};

struct NumericNorm {
    double p = 0.0;
    double t = 0.0;
    double value = 0.0;       // (N_t f)^p
    double abs_error = 0.0;   // quadrature estimate + tail uncertainty
    double quadrature_error = 0.0;
    double tail_error = 0.0;
    double cutoff = 0.0;      // quadrature over [-cutoff, cutoff]
    long evaluations = 0;
    TailMethod tail_method = TailMethod::Bound;
    bool met_target = true;
};

class BudgetExceededError : public Error {
public:
    BudgetExceededError(const std::string& what, NumericNorm achieved)
        : Error(ErrorCode::BudgetExceeded, what), achieved_(achieved) {}
    const NumericNorm& achieved() const { return achieved_; }

private:
    NumericNorm achieved_;
};

// Envelope C with |F[S_t f](y)| <= C / |y| for every t: total variation of f_+ and f_- over 2 pi.
double envelope_constant(const PiecewisePoly& f);
// Proved bound for int_{|y| > Y} |F[S_t f]|^p dy, uniform in t.
double tail_bound(const PiecewisePoly& f, double p, double Y);
// Exact value of int_{|y| > Y} |F[S_t f]|^p dy for even integer p from the jump expansion of the transform.
double expansion_tail(const PiecewisePoly& f, int p, double t, double Y, double* rounding_error = nullptr,
                      std::size_t term_cap = 400000);

NumericNorm norm_numeric(const PiecewisePoly& f, double p, double t, double target_abs_err,
                         const NumericOptions& options = {});

}  // namespace splitnorm

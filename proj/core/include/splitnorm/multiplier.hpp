#pragma once

#include <map>
#include <optional>
#include <string>

#include "splitnorm/piecewise.hpp"
#include "splitnorm/rational.hpp"

namespace splitnorm {

// Half-line, real half-line and segment multiplier norms on L^p(R).
struct MultConstants {
    double p = 2.0;
    double n_p = 1.0;       // segment: max{tan, cot}(pi / 2p)
    double c_p = 1.0;       // half-line, complex test functions: csc(pi / p)
    double c_p_real = 1.0;  // half-line, real test functions: max{sec, csc}(pi / 2p) / 2
};

MultConstants constants(double p);
// (p - 2) A / 4 for even p.
Rat multiplier_t0(const Rat& A, int p);
double multiplier_t0(double A, int p);
// binom(p, p/2)^{1/p}, the binomial computed exactly.
double central_binomial_root(int p);

enum class BoundQuantity {
    SplitUpper,       // |||S_t m||| <= B (|||m+||| |||m-|||)^{1/2}
    SplitUpperReal,   // |||S_t m||| <= B |||m+|||, even real m
    Dual,             // the same bound at the conjugate exponent
    MPlusUpper,       // |||m+||| <= c_p |||m|||
    MPlusUpperReal,   // |||m+|||^R <= c_p^R |||m|||^R
    SplitLower,       // |||S_t m||| >= l c_p
    TwoWay,           // l c_p <= |||S_t m||| <= c_p B |||m|||
    MPlusTwoWay,      // c_p |l| <= |||m+||| <= c_p |||m|||  (c_p^R with real_norms)
    PolyTwoWay,       // n_p c_p <= |||S_t chi_P||| <= B |||chi_{P+}|||
    Square,           // n_p c_p <= |||S_t chi_Q||| <= B c_p^3
};

const char* bound_quantity_name(BoundQuantity q);
std::optional<BoundQuantity> parse_bound_quantity(const std::string& name);

struct BoundInputs {
    std::optional<double> p;
    std::optional<double> A;
    std::optional<double> t;
    std::optional<double> ell;
    std::optional<double> m_norm;
    std::optional<double> m_plus_norm;   // for PolyTwoWay: |||chi_{P+}|||
    std::optional<double> m_minus_norm;
    // Caller's declaration that T_{S_t m} (or T_m) maps real functions to real functions.
    bool real_preserving = false;
    // MPlusTwoWay: report the real-test-function version (requires m real and even).
    bool real_norms = false;
};

struct BoundReport {
    BoundQuantity quantity = BoundQuantity::SplitUpper;
    std::map<std::string, double> inputs;
    std::optional<double> lower;
    std::optional<double> upper;
    bool applicable = false;
    std::string reason;
};

// Throws MissingInput when an input the quantity needs is absent; failed hypotheses are reported
// through applicable = false with a reason, never as numbers.
BoundReport bound_report(BoundQuantity quantity, const BoundInputs& inputs);
// Throws InapplicableHypothesis for an inapplicable report.
void require_applicable(const BoundReport& report);

struct PositiveKernelNorm {
    double p = 2.0;
    double ell = 0.0;               // m(0)
    double m_norm = 0.0;            // |||m||| = |m(0)|
    double m_plus_norm = 0.0;       // c_p |m(0)|
    double m_plus_norm_real = 0.0;  // c_p^R |m(0)|
    std::string source;             // "registered:tent" or "asserted"
};

// Exact norms for multipliers with a nonnegative integrable kernel. Registered family:
// lambda (1 - |x| / w) on (-w, w). Anything else requires asserted_positive.
PositiveKernelNorm exact_norm_positive_kernel(const PiecewisePoly& m, double p, bool asserted_positive = false);
// Matches lambda (1 - |x|/w) chi_{(-w, w)}; returns (lambda, w).
std::optional<std::pair<GRat, Rat>> match_tent(const PiecewisePoly& m);
PiecewisePoly tent_multiplier(const GRat& lambda = GRat(1), const Rat& width = Rat(1));

}  // namespace splitnorm

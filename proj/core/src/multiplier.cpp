#include "splitnorm/multiplier.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "splitnorm/error.hpp"

namespace splitnorm {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_even_integer(double p) {
    return std::isfinite(p) && std::floor(p) == p && std::fmod(p, 2.0) == 0.0;
}

double need(const std::optional<double>& value, const char* name, BoundQuantity q) {
    if (!value) {
        throw Error(ErrorCode::MissingInput,
                    std::string(bound_quantity_name(q)) + " needs input '" + name + "'");
    }
    if (!std::isfinite(*value)) {
        throw Error(ErrorCode::InvalidArgument, std::string("input '") + name + "' is not finite");
    }
    return *value;
}

double need_norm(const std::optional<double>& value, const char* name, BoundQuantity q) {
    double v = need(value, name, q);
    if (v < 0) throw Error(ErrorCode::InvalidArgument, std::string("norm '") + name + "' is negative");
    return v;
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

// Gate shared by every quantity resting on the constancy threshold: p even and t >= t0.
bool threshold_gate(BoundReport& r, double p, double A, double t) {
    if (!is_even_integer(p)) {
        r.reason = "p = " + fmt(p) + " is not an even integer";
        return false;
    }
    if (A < 0) throw Error(ErrorCode::InvalidArgument, "support radius A is negative");
    double t0 = multiplier_t0(A, static_cast<int>(p));
    r.inputs["t0"] = t0;
    if (t < t0) {
        r.reason = "t = " + fmt(t) + " is below t0 = " + fmt(t0);
        return false;
    }
    return true;
}

}  // namespace

MultConstants constants(double p) {
    if (!(p > 1.0) || !std::isfinite(p)) {
        throw Error(ErrorCode::POutOfRange, "multiplier constants need 1 < p < infinity, got " + fmt(p));
    }
    // s = min(1/p, 1/p'); every constant is a function of s alone. Writing 1/p' as (p - 1) / p keeps it
    // a single rounding, so conjugate exponents that are both representable agree bit for bit.
    double s = std::min(1.0 / p, (p - 1.0) / p);
    double half_angle = kPi * s / 2.0;
    MultConstants c;
    c.p = p;
    c.c_p = 1.0 / std::sin(kPi * s);
    c.n_p = 1.0 / std::tan(half_angle);
    c.c_p_real = 0.5 / std::sin(half_angle);
    return c;
}

Rat multiplier_t0(const Rat& A, int p) {
    if (p % 2 != 0) throw Error(ErrorCode::OddP, "t0 needs an even p, got " + std::to_string(p));
    if (sgn(A) < 0) throw Error(ErrorCode::InvalidArgument, "support radius A is negative");
    return Rat(Rat(p - 2) * A / 4);
}

double multiplier_t0(double A, int p) {
    if (p % 2 != 0) throw Error(ErrorCode::OddP, "t0 needs an even p, got " + std::to_string(p));
    return (p - 2) * A / 4.0;
}

double central_binomial_root(int p) {
    if (p < 2 || p % 2 != 0) throw Error(ErrorCode::OddP, "binom(p, p/2) needs an even p >= 2");
    return std::pow(binomial(p, p / 2).get_d(), 1.0 / p);
}

const char* bound_quantity_name(BoundQuantity q) {
    switch (q) {
        case BoundQuantity::SplitUpper: return "split_upper";
        case BoundQuantity::SplitUpperReal: return "split_upper_real";
        case BoundQuantity::Dual: return "dual";
        case BoundQuantity::MPlusUpper: return "m_plus_upper";
        case BoundQuantity::MPlusUpperReal: return "m_plus_upper_real";
        case BoundQuantity::SplitLower: return "split_lower";
        case BoundQuantity::TwoWay: return "two_way";
        case BoundQuantity::MPlusTwoWay: return "m_plus_two_way";
        case BoundQuantity::PolyTwoWay: return "poly_two_way";
        case BoundQuantity::Square: return "square";
    }
    return "unknown";
}

std::optional<BoundQuantity> parse_bound_quantity(const std::string& name) {
    for (auto q : {BoundQuantity::SplitUpper, BoundQuantity::SplitUpperReal, BoundQuantity::Dual,
                   BoundQuantity::MPlusUpper, BoundQuantity::MPlusUpperReal, BoundQuantity::SplitLower,
                   BoundQuantity::TwoWay, BoundQuantity::MPlusTwoWay, BoundQuantity::PolyTwoWay,
                   BoundQuantity::Square}) {
        if (name == bound_quantity_name(q)) return q;
    }
    return std::nullopt;
}

BoundReport bound_report(BoundQuantity q, const BoundInputs& in) {
    BoundReport r;
    r.quantity = q;
    const double p = need(in.p, "p", q);
    r.inputs["p"] = p;
    const MultConstants k = constants(p);

    auto record = [&](const char* name, const std::optional<double>& v) {
        if (v) r.inputs[name] = *v;
    };
    record("A", in.A);
    record("t", in.t);
    record("ell", in.ell);
    record("m_norm", in.m_norm);
    record("m_plus_norm", in.m_plus_norm);
    record("m_minus_norm", in.m_minus_norm);

    auto real_gate = [&]() {
        if (!in.real_preserving) {
            r.reason = "the real-preserving hypothesis was not declared";
            return false;
        }
        return true;
    };
    auto ell_gate = [&](double ell) {
        if (!(ell > 0)) {
            r.reason = "ell = " + fmt(ell) + " must be positive";
            return false;
        }
        return true;
    };

    switch (q) {
        case BoundQuantity::SplitUpper:
        case BoundQuantity::Dual: {
            double A = need(in.A, "A", q), t = need(in.t, "t", q);
            double mp = need_norm(in.m_plus_norm, "m_plus_norm", q);
            double mm = need_norm(in.m_minus_norm, "m_minus_norm", q);
            if (q == BoundQuantity::Dual && p > 1) r.inputs["p_conjugate"] = p / (p - 1);
            if (!threshold_gate(r, p, A, t) || !real_gate()) break;
            r.upper = central_binomial_root(static_cast<int>(p)) * std::sqrt(mp * mm);
            r.applicable = true;
            break;
        }
        case BoundQuantity::SplitUpperReal: {
            double A = need(in.A, "A", q), t = need(in.t, "t", q);
            double mp = need_norm(in.m_plus_norm, "m_plus_norm", q);
            if (!threshold_gate(r, p, A, t) || !real_gate()) break;
            r.upper = central_binomial_root(static_cast<int>(p)) * mp;
            r.applicable = true;
            break;
        }
        case BoundQuantity::MPlusUpper: {
            r.upper = k.c_p * need_norm(in.m_norm, "m_norm", q);
            r.applicable = true;
            break;
        }
        case BoundQuantity::MPlusUpperReal: {
            double mn = need_norm(in.m_norm, "m_norm", q);
            if (!real_gate()) break;
            r.upper = k.c_p_real * mn;
            r.applicable = true;
            break;
        }
        case BoundQuantity::SplitLower: {
            double t = need(in.t, "t", q), ell = need(in.ell, "ell", q);
            if (!ell_gate(ell)) break;
            if (!(t > 0)) {
                r.reason = "t must be positive";
                break;
            }
            r.lower = ell * k.c_p;
            r.applicable = true;
            break;
        }
        case BoundQuantity::TwoWay: {
            double A = need(in.A, "A", q), t = need(in.t, "t", q), ell = need(in.ell, "ell", q);
            double mn = need_norm(in.m_norm, "m_norm", q);
            if (!threshold_gate(r, p, A, t) || !real_gate() || !ell_gate(ell)) break;
            if (!(t > 0)) {
                r.reason = "t must be positive";
                break;
            }
            r.lower = ell * k.c_p;
            r.upper = k.c_p * central_binomial_root(static_cast<int>(p)) * mn;
            r.applicable = true;
            break;
        }
        case BoundQuantity::MPlusTwoWay: {
            double ell = need(in.ell, "ell", q);
            double mn = need_norm(in.m_norm, "m_norm", q);
            if (ell == 0) {
                r.reason = "m(0) must be nonzero";
                break;
            }
            double c = k.c_p;
            if (in.real_norms) {
                if (!in.real_preserving) {
                    r.reason = "real norms need m real-valued and even (declare real_preserving)";
                    break;
                }
                c = k.c_p_real;
            }
            r.lower = c * std::abs(ell);
            r.upper = c * mn;
            r.applicable = true;
            break;
        }
        case BoundQuantity::PolyTwoWay: {
            double A = need(in.A, "A", q), t = need(in.t, "t", q);
            double pp = need_norm(in.m_plus_norm, "m_plus_norm", q);
            if (!threshold_gate(r, p, A, t)) break;
            r.lower = k.n_p * k.c_p;
            r.upper = central_binomial_root(static_cast<int>(p)) * pp;
            r.applicable = true;
            break;
        }
        case BoundQuantity::Square: {
            double A = need(in.A, "A", q), t = need(in.t, "t", q);
            if (!threshold_gate(r, p, A, t)) break;
            r.lower = k.n_p * k.c_p;
            r.upper = central_binomial_root(static_cast<int>(p)) * k.c_p * k.c_p * k.c_p;
            r.applicable = true;
            break;
        }
    }

    if (r.applicable && r.lower && r.upper && *r.lower > *r.upper) {
        r.applicable = false;
        r.reason = "inconsistent inputs: lower bound " + fmt(*r.lower) + " exceeds upper bound " + fmt(*r.upper);
    }
    if (!r.applicable) {
        r.lower.reset();
        r.upper.reset();
    }
    return r;
}

void require_applicable(const BoundReport& report) {
    if (!report.applicable) {
        throw Error(ErrorCode::InapplicableHypothesis,
                    std::string(bound_quantity_name(report.quantity)) + ": " + report.reason);
    }
}

PiecewisePoly tent_multiplier(const GRat& lambda, const Rat& width) {
    if (sgn(width) <= 0) throw Error(ErrorCode::InvalidArgument, "tent width must be positive");
    Rat inv = 1 / width;
    Poly left({lambda, lambda * inv});
    Poly right({lambda, lambda * Rat(-inv)});
    return PiecewisePoly({-width, Rat(0), width}, {left, right});
}

std::optional<std::pair<GRat, Rat>> match_tent(const PiecewisePoly& m) {
    const auto& bp = m.breakpoints();
    if (bp.size() != 3 || sgn(bp[1]) != 0 || bp[0] != -bp[2] || sgn(bp[2]) <= 0) return std::nullopt;
    GRat lambda = m.eval(Rat(0));
    if (lambda.is_zero()) return std::nullopt;
    if (tent_multiplier(lambda, bp[2]) != m) return std::nullopt;
    return std::make_pair(lambda, bp[2]);
}

PositiveKernelNorm exact_norm_positive_kernel(const PiecewisePoly& m, double p, bool asserted_positive) {
    const MultConstants k = constants(p);
    PositiveKernelNorm out;
    out.p = p;
    if (auto tent = match_tent(m)) {
        out.ell = std::sqrt(tent->first.norm_sq().get_d());
        out.source = "registered:tent";
    } else if (asserted_positive) {
        GRat at0 = m.eval(Rat(0));
        if (m.eval_left(Rat(0)) != at0) {
            throw Error(ErrorCode::UnverifiedPositivity,
                        "asserted positive kernel, but m is discontinuous at 0");
        }
        if (!at0.is_real() || sgn(at0.re) <= 0) {
            throw Error(ErrorCode::UnverifiedPositivity,
                        "asserted positive kernel, but m(0) = " + to_string(at0) + " is not positive");
        }
        out.ell = at0.re.get_d();
        out.source = "asserted";
    } else {
        throw Error(ErrorCode::UnverifiedPositivity,
                    "kernel positivity neither asserted nor registered for this multiplier");
    }
    out.m_norm = out.ell;
    out.m_plus_norm = k.c_p * out.ell;
    out.m_plus_norm_real = k.c_p_real * out.ell;
    return out;
}

}  // namespace splitnorm

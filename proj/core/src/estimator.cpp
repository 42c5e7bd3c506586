#include "splitnorm/estimator.hpp"

#include <fftw3.h>

#include <algorithm>
#include <boost/random/mersenne_twister.hpp>
#include <boost/random/normal_distribution.hpp>
#include <ceres/ceres.h>
#include <cmath>
#include <memory>
#include <mutex>

#include "splitnorm/error.hpp"
#include "splitnorm/profile.hpp"

namespace splitnorm {

using cplx = std::complex<double>;

namespace {

bool is_power_of_two(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

// T f = IDFT(m . DFT f) and its adjoint, on private FFTW buffers.
class DiscreteOperator {
public:
    explicit DiscreteOperator(const DiscreteMultiplier& m) : n_(m.N), m_(m.samples) {
        buf_ = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n_));
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        fwd_ = fftw_plan_dft_1d(static_cast<int>(n_), buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd_ = fftw_plan_dft_1d(static_cast<int>(n_), buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    ~DiscreteOperator() {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
        fftw_free(buf_);
    }
    DiscreteOperator(const DiscreteOperator&) = delete;
    DiscreteOperator& operator=(const DiscreteOperator&) = delete;

    void apply(const cplx* in, cplx* out, bool adjoint) {
        auto* b = reinterpret_cast<cplx*>(buf_);
        std::copy(in, in + n_, b);
        fftw_execute(fwd_);
        for (std::size_t k = 0; k < n_; ++k) b[k] *= adjoint ? std::conj(m_[k]) : m_[k];
        fftw_execute(bwd_);
        const double scale = 1.0 / static_cast<double>(n_);
        for (std::size_t k = 0; k < n_; ++k) out[k] = b[k] * scale;
    }

    std::size_t size() const { return n_; }

private:
    std::size_t n_;
    std::vector<cplx> m_;
    fftw_complex* buf_ = nullptr;
    fftw_plan fwd_ = nullptr;
    fftw_plan bwd_ = nullptr;
};

double p_sum(const std::vector<cplx>& v, double p) {
    double s = 0.0;
    for (const auto& z : v) s += std::pow(std::abs(z), p);
    return s;
}

// |z|^{q-1} z / |z|, zero at zero.
cplx signed_power(cplx z, double q) {
    double a = std::abs(z);
    if (a == 0.0) return 0.0;
    return z * std::pow(a, q - 2.0);
}

void normalize(std::vector<cplx>& f, double p) {
    double s = std::pow(p_sum(f, p), 1.0 / p);
    if (s > 0)
        for (auto& z : f) z /= s;
}

// Ceres cost: -log(||T f||_p / ||f||_p) over f = x (real) or x[0:N] + i x[N:2N].
class NegLogQuotient final : public ceres::FirstOrderFunction {
public:
    NegLogQuotient(DiscreteOperator& op, double p, bool real) : op_(op), p_(p), real_(real) {
        f_.resize(op.size());
        g_.resize(op.size());
        w_.resize(op.size());
    }

    bool Evaluate(const double* x, double* cost, double* gradient) const override {
        const std::size_t n = op_.size();
        for (std::size_t k = 0; k < n; ++k) f_[k] = real_ ? cplx(x[k], 0.0) : cplx(x[k], x[n + k]);
        op_.apply(f_.data(), g_.data(), false);
        const double A = p_sum(g_, p_), B = p_sum(f_, p_);
        if (!(A > 0) || !(B > 0) || !std::isfinite(A) || !std::isfinite(B)) return false;
        *cost = -(std::log(A) - std::log(B)) / p_;
        if (gradient) {
            for (std::size_t k = 0; k < n; ++k) w_[k] = signed_power(g_[k], p_);
            op_.apply(w_.data(), w_.data(), true);
            for (std::size_t k = 0; k < n; ++k) {
                cplx G = -w_[k] / A + signed_power(f_[k], p_) / B;
                gradient[k] = G.real();
                if (!real_) gradient[n + k] = G.imag();
            }
        }
        return true;
    }

    int NumParameters() const override { return static_cast<int>(real_ ? op_.size() : 2 * op_.size()); }

private:
    DiscreteOperator& op_;
    double p_;
    bool real_;
    mutable std::vector<cplx> f_, g_, w_;
};

class HistoryRecorder final : public ceres::IterationCallback {
public:
    explicit HistoryRecorder(std::vector<double>& out) : out_(out) {}
    ceres::CallbackReturnType operator()(const ceres::IterationSummary& s) override {
        out_.push_back(std::exp(-s.cost));
        return ceres::SOLVER_CONTINUE;
    }

private:
    std::vector<double>& out_;
};

struct RunResult {
    std::vector<cplx> f;
    double quotient = 0.0;
    std::vector<double> history;
    int iterations = 0;
    bool converged = false;
};

double quotient_of(DiscreteOperator& op, const std::vector<cplx>& f, double p) {
    std::vector<cplx> g(f.size());
    op.apply(f.data(), g.data(), false);
    double B = p_sum(f, p);
    if (!(B > 0)) return 0.0;
    return std::pow(p_sum(g, p) / B, 1.0 / p);
}

RunResult run_lbfgs(DiscreteOperator& op, std::vector<cplx> f0, double p, const EstimateOptions& o) {
    const std::size_t n = op.size();
    normalize(f0, p);
    std::vector<double> x(o.real_test_functions ? n : 2 * n);
    for (std::size_t k = 0; k < n; ++k) {
        x[k] = f0[k].real();
        if (!o.real_test_functions) x[n + k] = f0[k].imag();
    }
    RunResult r;
    HistoryRecorder recorder(r.history);
    ceres::GradientProblemSolver::Options opts;
    opts.line_search_direction_type = ceres::LBFGS;
    opts.max_num_iterations = o.iterations;
    opts.function_tolerance = 1e-12;
    opts.gradient_tolerance = 1e-14;
    opts.parameter_tolerance = 1e-14;
    opts.logging_type = ceres::SILENT;
    opts.callbacks.push_back(&recorder);
    ceres::GradientProblem problem(new NegLogQuotient(op, p, o.real_test_functions));
    ceres::GradientProblemSolver::Summary summary;
    ceres::Solve(opts, problem, x.data(), &summary);

    r.f.resize(n);
    for (std::size_t k = 0; k < n; ++k) r.f[k] = o.real_test_functions ? cplx(x[k], 0.0) : cplx(x[k], x[n + k]);
    normalize(r.f, p);
    r.quotient = quotient_of(op, r.f, p);
    r.iterations = static_cast<int>(summary.iterations.empty() ? 0 : summary.iterations.size() - 1);
    r.converged = summary.termination_type == ceres::CONVERGENCE;
    return r;
}

// p-norm power iteration: f <- psi_{p'}(T* psi_p(T f)), psi_q(v) = |v|^{q-1} sgn v, with a damped
// half step when a full step lowers the quotient.
RunResult run_power(DiscreteOperator& op, std::vector<cplx> f, double p, const EstimateOptions& o) {
    const std::size_t n = op.size();
    const double q = p / (p - 1.0);
    normalize(f, p);
    RunResult r;
    double current = quotient_of(op, f, p);
    r.history.push_back(current);
    std::vector<cplx> g(n), next(n);
    for (int it = 0; it < o.iterations; ++it) {
        op.apply(f.data(), g.data(), false);
        for (auto& z : g) z = signed_power(z, p);
        op.apply(g.data(), next.data(), true);
        for (auto& z : next) {
            if (o.real_test_functions) z = cplx(z.real(), 0.0);
            z = signed_power(z, q);
        }
        normalize(next, p);
        double value = quotient_of(op, next, p);
        if (value < current) {
            for (std::size_t k = 0; k < n; ++k) next[k] = 0.5 * (f[k] + next[k]);
            normalize(next, p);
            value = quotient_of(op, next, p);
        }
        if (!(value > current)) {
            r.converged = true;
            break;
        }
        const bool small = value - current <= 1e-13 * current;
        f.swap(next);
        current = value;
        r.history.push_back(current);
        ++r.iterations;
        if (small) {
            r.converged = true;
            break;
        }
    }
    r.f = std::move(f);
    r.quotient = current;
    return r;
}

std::vector<cplx> random_start(std::size_t n, std::uint64_t seed, bool real) {
    boost::random::mt19937_64 rng(seed);
    boost::random::normal_distribution<double> gauss;
    std::vector<cplx> f(n);
    for (auto& z : f) {
        double re = gauss(rng);
        double im = real ? 0.0 : gauss(rng);
        z = cplx(re, im);
    }
    return f;
}

DiscreteMultiplier make_grid(std::size_t N, double omega, std::string label) {
    DiscreteMultiplier m;
    m.N = N;
    m.omega = omega;
    m.samples.assign(N, 0.0);
    m.label = std::move(label);
    if (!is_power_of_two(N)) throw Error(ErrorCode::InvalidArgument, "grid size N must be a power of two >= 2");
    if (!(omega > 0) || !std::isfinite(omega)) throw Error(ErrorCode::InvalidArgument, "Omega must be positive");
    return m;
}

bool on_point(double xi, double at, double spacing) { return std::abs(xi - at) < 1e-9 * spacing; }

}  // namespace

double DiscreteMultiplier::frequency(std::size_t index) const {
    long k = index < N / 2 ? static_cast<long>(index) : static_cast<long>(index) - static_cast<long>(N);
    return static_cast<double>(k) * spacing();
}

double DiscreteMultiplier::sup_norm() const {
    double s = 0.0;
    for (const auto& z : samples) s = std::max(s, std::abs(z));
    return s;
}

bool DiscreteMultiplier::is_even_real(double tol) const {
    for (const auto& z : samples)
        if (std::abs(z.imag()) > tol) return false;
    for (std::size_t k = 1; k < N / 2; ++k)
        if (std::abs(samples[k] - samples[N - k]) > tol) return false;
    return true;
}

void DiscreteMultiplier::validate() const {
    if (!is_power_of_two(N)) throw Error(ErrorCode::InvalidArgument, "grid size N must be a power of two >= 2");
    if (samples.size() != N) throw Error(ErrorCode::InvalidArgument, "sample count differs from N");
    if (!(omega > 0) || !std::isfinite(omega)) throw Error(ErrorCode::InvalidArgument, "Omega must be positive");
    for (const auto& z : samples)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw Error(ErrorCode::InvalidArgument, "multiplier samples must be finite");
}

DiscreteMultiplier half_line_multiplier(std::size_t N, double omega, double shift) {
    auto m = make_grid(N, omega, shift == 0.0 ? "halfline" : "halfline-shifted");
    if (!(shift >= 0) || shift >= omega) throw Error(ErrorCode::GridOverflow, "shift must lie in [0, Omega)");
    const double h = m.spacing();
    for (std::size_t k = 0; k < N; ++k) {
        double xi = m.frequency(k);
        if (on_point(xi, -shift, h)) m.samples[k] = 0.5;
        else if (xi > -shift) m.samples[k] = 1.0;
    }
    m.ell = 1.0;
    return m;
}

DiscreteMultiplier segment_multiplier(std::size_t N, double omega, double a, double b) {
    auto m = make_grid(N, omega, "segment");
    if (!(a < b)) throw Error(ErrorCode::InvalidArgument, "segment needs a < b");
    if (a <= -omega || b >= omega) throw Error(ErrorCode::GridOverflow, "segment must lie inside (-Omega, Omega)");
    const double h = m.spacing();
    for (std::size_t k = 0; k < N; ++k) {
        double xi = m.frequency(k);
        if (on_point(xi, a, h) || on_point(xi, b, h)) m.samples[k] = 0.5;
        else if (xi > a && xi < b) m.samples[k] = 1.0;
    }
    m.support_radius = std::max(std::abs(a), std::abs(b));
    m.ell = (a <= 0 && b >= 0) ? 1.0 : 0.0;
    return m;
}

DiscreteMultiplier tent_discrete(std::size_t N, double omega, double lambda) {
    auto m = make_grid(N, omega, "tent");
    if (omega < 1.0) throw Error(ErrorCode::GridOverflow, "the tent needs Omega >= 1");
    for (std::size_t k = 0; k < N; ++k) {
        double xi = std::abs(m.frequency(k));
        if (xi < 1.0) m.samples[k] = lambda * (1.0 - xi);
    }
    m.support_radius = 1.0;
    m.ell = std::abs(lambda);
    return m;
}

DiscreteMultiplier sample_multiplier(const PiecewisePoly& f, std::size_t N, double omega) {
    auto m = make_grid(N, omega, "piecewise");
    if (auto s = f.support()) {
        if (s->first.get_d() < -omega || s->second.get_d() > omega)
            throw Error(ErrorCode::GridOverflow, "multiplier support exceeds [-Omega, Omega]");
    }
    const double h = m.spacing();
    for (std::size_t k = 0; k < N; ++k) {
        double xi = m.frequency(k);
        bool at_jump = false;
        for (const auto& b : f.breakpoints()) {
            if (on_point(xi, b.get_d(), h)) {
                GRat mid = (f.eval_left(b) + f.eval(b)) * Rat(1, 2);
                m.samples[k] = mid.to_complex();
                at_jump = true;
                break;
            }
        }
        if (!at_jump) m.samples[k] = f.eval(xi);
    }
    if (!f.is_zero()) m.support_radius = support_radius(f).get_d();
    m.ell = std::max(std::abs(f.eval_left(Rat(0)).to_complex()), std::abs(f.eval(Rat(0)).to_complex()));
    return m;
}

DiscreteMultiplier plus_part(const DiscreteMultiplier& m) {
    m.validate();
    DiscreteMultiplier out = m;
    out.label = m.label + "+";
    std::fill(out.samples.begin(), out.samples.end(), cplx(0.0));
    out.samples[0] = 0.5 * m.samples[0];
    for (std::size_t k = 1; k < m.N / 2; ++k) out.samples[k] = m.samples[k];
    return out;
}

SplitMultiplier split_multiplier(const DiscreteMultiplier& m, double t) {
    m.validate();
    if (!(t >= 0) || !std::isfinite(t)) throw Error(ErrorCode::NegativeShift, "split needs t >= 0");
    SplitMultiplier out;
    const long half = static_cast<long>(m.N / 2);
    const long s = std::lround(t / m.spacing());
    out.shift_steps = s;
    out.t = static_cast<double>(s) * m.spacing();
    out.multiplier = m;
    if (s == 0) return out;
    if (s >= half) throw Error(ErrorCode::GridOverflow, "shift exceeds the grid");
    auto& dst = out.multiplier.samples;
    std::fill(dst.begin(), dst.end(), cplx(0.0));
    auto slot = [&](long freq) { return static_cast<std::size_t>(freq >= 0 ? freq : freq + static_cast<long>(m.N)); };
    if (m.samples[half] != cplx(0.0)) throw Error(ErrorCode::GridOverflow, "Nyquist sample is nonzero");
    for (long k = 0; k < half; ++k) {
        if (m.samples[slot(k)] != cplx(0.0) && k + s >= half)
            throw Error(ErrorCode::GridOverflow, "shifted support exceeds Omega");
        if (k + s < half) dst[slot(k + s)] = m.samples[slot(k)];
    }
    for (long k = -half + 1; k <= 0; ++k) {
        if (m.samples[slot(k)] != cplx(0.0) && k - s <= -half)
            throw Error(ErrorCode::GridOverflow, "shifted support exceeds Omega");
        if (k - s > -half) dst[slot(k - s)] = m.samples[slot(k)];
    }
    if (m.support_radius) out.multiplier.support_radius = *m.support_radius + out.t;
    out.multiplier.label = "split(" + m.label + ")";
    return out;
}

double discrete_quotient(const DiscreteMultiplier& m, const std::vector<cplx>& f, double p) {
    m.validate();
    if (f.size() != m.N) throw Error(ErrorCode::InvalidArgument, "test function length differs from N");
    DiscreteOperator op(m);
    return quotient_of(op, f, p);
}

LowerEstimate estimate_lower(const DiscreteMultiplier& m, double p, const EstimateOptions& o) {
    m.validate();
    if (!(p > 1.0) || !std::isfinite(p)) throw Error(ErrorCode::POutOfRange, "estimation needs 1 < p < infinity");
    if (o.iterations < 0 || o.starts < 0) throw Error(ErrorCode::InvalidArgument, "negative iteration or start count");
    if (o.initial && o.initial->size() != m.N)
        throw Error(ErrorCode::InvalidArgument, "initial test function length differs from N");

    DiscreteOperator op(m);
    std::vector<std::vector<cplx>> starts;
    if (o.initial) {
        auto f = *o.initial;
        if (o.real_test_functions)
            for (auto& z : f) z = cplx(z.real(), 0.0);
        starts.push_back(std::move(f));
    }
    for (int s = 0; s < std::max(o.starts, o.initial ? 0 : 1); ++s)
        starts.push_back(random_start(m.N, o.seed + static_cast<std::uint64_t>(s), o.real_test_functions));

    LowerEstimate best;
    best.p = p;
    best.estimate = -1.0;
    for (auto& f0 : starts) {
        RunResult r = o.step_rule == StepRule::Lbfgs ? run_lbfgs(op, std::move(f0), p, o)
                                                     : run_power(op, std::move(f0), p, o);
        if (r.quotient > best.estimate) {
            best.estimate = r.quotient;
            best.test_function = std::move(r.f);
            best.history = std::move(r.history);
            best.iterations = r.iterations;
            best.converged = r.converged;
        }
    }
    return best;
}

}  // namespace splitnorm

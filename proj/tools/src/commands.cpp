#include "splitnorm_cli/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "splitnorm/estimator.hpp"
#include "splitnorm/multiplier.hpp"
#include "splitnorm/numeric_norm.hpp"
#include "splitnorm/profile.hpp"
#include "splitnorm/series.hpp"
#include "splitnorm/split.hpp"
#include "splitnorm_cli/function_spec.hpp"

namespace splitnorm::cli {

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::InapplicableHypothesis:
        case ErrorCode::UnverifiedPositivity:
            return kInapplicable;
        case ErrorCode::BudgetExceeded:
            return kBudgetExceeded;
        default:
            return kConfigError;
    }
}

Rat parse_exact(const std::string& text) {
    if (text.find('.') == std::string::npos) return parse_rat(text);
    std::size_t i = 0;
    bool neg = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) neg = text[i++] == '-';
    std::string digits;
    long scale = -1;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c == '.' && scale < 0) {
            scale = 0;
        } else if (c >= '0' && c <= '9') {
            digits += c;
            if (scale >= 0) ++scale;
        } else {
            throw Error(ErrorCode::ParseError, "not a decimal number: '" + text + "'");
        }
    }
    if (digits.empty()) throw Error(ErrorCode::ParseError, "not a decimal number: '" + text + "'");
    mpz_class num(digits, 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(scale));
    Rat r(num, den);
    r.canonicalize();
    return neg ? Rat(-r) : r;
}

namespace {

struct Result {
    json j;
    std::vector<std::string> csv_header;
    std::vector<std::vector<std::string>> csv_rows;
    int code = kOk;
};

struct Common {
    std::string emit = "json";
    std::string output;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--emit", c.emit, "Output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--output,-o", c.output, "Write the result to this file (atomically)");
}

std::string render(const Result& r, const std::string& emit) {
    if (emit == "csv") {
        std::ostringstream os;
        for (std::size_t k = 0; k < r.csv_header.size(); ++k) os << (k ? "," : "") << r.csv_header[k];
        os << '\n';
        for (const auto& row : r.csv_rows) {
            for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << row[k];
            os << '\n';
        }
        return os.str();
    }
    return dump(r.j) + "\n";
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

json witness_json(const std::optional<std::pair<Rat, Rat>>& w) {
    if (!w) return nullptr;
    return json::array({to_string(w->first), to_string(w->second)});
}

int even_p(double p) {
    if (!(p >= 2) || std::floor(p) != p || std::fmod(p, 2.0) != 0.0)
        throw Error(ErrorCode::OddP, "the exact engine needs an even integer p >= 2");
    return static_cast<int>(p);
}

// ---- profile ----

Result cmd_profile(const std::string& spec, double p_in, int refine, const std::string& window) {
    const int p = even_p(p_in);
    if (refine < 1) throw Error(ErrorCode::InvalidArgument, "--refine must be positive");
    PiecewisePoly f = parse_function_spec(spec);
    NormProfile pr = norm_profile(f, p);
    Rat A = f.is_zero() ? Rat(0) : support_radius(f);
    ConstancyVerdict cv = check_constancy(pr, A);
    MonotoneVerdict mv = check_monotone(pr);
    GRat newt = newt_constant(f, p);

    Result r;
    json& j = r.j;
    j["command"] = "profile";
    j["function"] = spec;
    j["p"] = p;
    j["A"] = to_string(A);
    j["t0"] = to_string(pr.t0);
    j["constant_from"] = to_string(cv.constant_from);
    j["theorem_holds"] = cv.theorem_holds;
    j["tail_value"] = to_string(pr.tail_value);
    j["newt_constant"] = to_string(newt);
    j["newt_matches_tail"] = newt == GRat(pr.tail_value);
    j["monotone"] = mv.holds;
    j["witness"] = witness_json(mv.witness);
    json all = json::array();
    for (const auto& w : increase_witnesses(pr.profile, pr.t_start)) all.push_back(witness_json(w));
    j["increase_witnesses"] = std::move(all);
    if (!window.empty()) {
        auto parts = split_commas(window);
        if (parts.size() != 2) throw Error(ErrorCode::ParseError, "--window expects lo,hi");
        Rat lo = parse_exact(parts[0]), hi = parse_exact(parts[1]);
        MonotoneVerdict wv = check_monotone_between(pr, lo, hi);
        json w;
        w["lo"] = to_string(lo);
        w["hi"] = to_string(hi);
        w["monotone"] = wv.holds;
        w["witness"] = witness_json(wv.witness);
        j["window"] = std::move(w);
    }
    json prof = to_json(pr.profile);
    prof["t_start"] = to_string(pr.t_start);
    prof["t_max"] = to_string(pr.t_max);
    j["profile"] = std::move(prof);

    // Breakpoints plus a uniform refinement of every piece.
    std::set<Rat> ts{pr.t_start, pr.t_max};
    const auto& bp = pr.profile.breakpoints();
    for (std::size_t k = 0; k + 1 < bp.size(); ++k)
        for (int s = 0; s < refine; ++s) ts.insert(Rat(bp[k] + (bp[k + 1] - bp[k]) * ratio(s, refine)));
    for (const auto& b : bp) ts.insert(b);
    json samples = json::array();
    r.csv_header = {"t", "value", "value_float"};
    for (const auto& t : ts) {
        if (t < pr.t_start || t > pr.t_max) continue;
        Rat v = pr.value(t);
        samples.push_back(json::array({to_string(t), to_string(v), v.get_d()}));
        r.csv_rows.push_back({to_string(t), to_string(v), format_double(v.get_d())});
    }
    j["samples"] = std::move(samples);
    return r;
}

// ---- norm ----

std::vector<Rat> collect_ts(const std::vector<std::string>& list, const std::string& range) {
    std::vector<Rat> ts;
    for (const auto& s : list) ts.push_back(parse_exact(s));
    if (!range.empty()) {
        auto parts = split_commas(range);
        if (parts.size() != 3) throw Error(ErrorCode::ParseError, "--t-range expects lo,hi,count");
        Rat lo = parse_exact(parts[0]), hi = parse_exact(parts[1]);
        long n = std::stol(parts[2]);
        if (n < 1) throw Error(ErrorCode::InvalidArgument, "--t-range count must be positive");
        for (long k = 0; k < n; ++k) ts.push_back(n == 1 ? lo : Rat(lo + (hi - lo) * ratio(k, n - 1)));
    }
    if (ts.empty()) throw Error(ErrorCode::MissingInput, "give at least one --t or a --t-range");
    for (const auto& t : ts)
        if (sgn(t) < 0) throw Error(ErrorCode::NegativeShift, "t must be nonnegative");
    return ts;
}

Result cmd_norm(const std::string& spec, double p, const std::vector<std::string>& tlist, const std::string& trange,
                double err_target, std::string engine, long node_cap) {
    PiecewisePoly f = parse_function_spec(spec);
    std::vector<Rat> ts = collect_ts(tlist, trange);
    const bool even = p >= 2 && std::floor(p) == p && std::fmod(p, 2.0) == 0.0;
    if (engine.empty()) engine = even ? "both" : "numeric";
    const bool want_exact = engine != "numeric", want_numeric = engine != "exact";
    std::optional<NormProfile> pr;
    if (want_exact) pr = norm_profile(f, even_p(p));

    NumericOptions opts;
    opts.node_cap = node_cap;
    Result r;
    r.j["command"] = "norm";
    r.j["function"] = spec;
    r.j["p"] = p;
    r.j["engine"] = engine;
    json results = json::array();
    r.csv_header = {"t", "value_pth_power", "abs_error", "exact"};
    for (const auto& t : ts) {
        json e;
        std::optional<NumericNorm> num;
        if (want_numeric) {
            try {
                num = norm_numeric(f, p, t.get_d(), err_target, opts);
            } catch (const BudgetExceededError& ex) {
                num = ex.achieved();
                r.code = kBudgetExceeded;
            }
            e = to_json(*num);
        } else {
            e["p"] = p;
            e["t"] = t.get_d();
        }
        e["t_exact"] = to_string(t);
        std::string exact_text;
        if (pr) {
            Rat v = pr->value(t);
            exact_text = to_string(v);
            e["exact"] = exact_text;
            e["exact_value"] = v.get_d();
            if (num) {
                double d = num->value - v.get_d();
                e["discrepancy"] = d;
                e["within_error"] = std::abs(d) <= num->abs_error;
            }
        }
        r.csv_rows.push_back({to_string(t), num ? format_double(num->value) : "",
                              num ? format_double(num->abs_error) : "", exact_text});
        results.push_back(std::move(e));
    }
    r.j["results"] = std::move(results);
    return r;
}

// ---- class-s ----

Result cmd_class_s(const std::string& spec, const std::string& radius) {
    PiecewisePoly f = parse_function_spec(spec);
    ClassSVerdict v = class_s_check(f);
    Result r;
    r.j["command"] = "class-s";
    r.j["function"] = spec;
    r.j["member"] = v.member;
    r.j["witness"] = witness_json(v.witness);
    r.csv_header = {"member", "witness_lo", "witness_hi", "sufficient"};
    std::string suff;
    if (!radius.empty()) {
        Rat rr = parse_exact(radius);
        bool holds = class_s_sufficient(f, rr);
        json s;
        s["radius"] = to_string(rr);
        s["holds"] = holds;
        r.j["sufficient"] = std::move(s);
        suff = holds ? "true" : "false";
    }
    r.csv_rows.push_back({v.member ? "true" : "false", v.witness ? to_string(v.witness->first) : "",
                          v.witness ? to_string(v.witness->second) : "", suff});
    return r;
}

// ---- mult ----

Result cmd_constants(double p) {
    MultConstants c = constants(p);
    Result r;
    r.j = to_json(c);
    r.csv_header = {"p", "n_p", "c_p", "c_p_real"};
    r.csv_rows.push_back({format_double(c.p), format_double(c.n_p), format_double(c.c_p), format_double(c.c_p_real)});
    return r;
}

struct BoundArgs {
    std::string quantity;
    double p = 0;
    std::string preset;
    std::map<std::string, double> given;
    bool real_preserving = false;
    bool real_norms = false;
};

Result cmd_bounds(const BoundArgs& a) {
    BoundInputs in;
    in.p = a.p;
    std::vector<std::string> defaults;
    if (a.preset == "tent") {
        PositiveKernelNorm k = exact_norm_positive_kernel(tent_multiplier(), a.p);
        in.A = 1.0;
        in.ell = k.ell;
        in.m_norm = k.m_norm;
        in.m_plus_norm = k.m_plus_norm;
        in.m_minus_norm = k.m_plus_norm;
        in.real_preserving = true;
    } else if (!a.preset.empty()) {
        throw Error(ErrorCode::ParseError, "unknown preset '" + a.preset + "' (known: tent)");
    }
    auto set = [&](const char* key, std::optional<double>& slot) {
        if (auto it = a.given.find(key); it != a.given.end()) slot = it->second;
    };
    set("A", in.A);
    set("t", in.t);
    set("ell", in.ell);
    set("m_norm", in.m_norm);
    set("m_plus_norm", in.m_plus_norm);
    set("m_minus_norm", in.m_minus_norm);
    in.real_preserving = in.real_preserving || a.real_preserving;
    in.real_norms = a.real_norms;

    Result r;
    r.csv_header = {"quantity", "applicable", "lower", "upper", "reason"};
    auto row = [&](const json& rep) {
        auto num = [](const json& v) { return v.is_null() ? std::string() : format_double(v.get<double>()); };
        r.csv_rows.push_back({rep["quantity"].get<std::string>(), rep["applicable"].get<bool>() ? "true" : "false",
                              num(rep.value("lower", json(nullptr))), num(rep.value("upper", json(nullptr))),
                              rep.value("reason", std::string())});
    };

    if (a.quantity == "all") {
        json reports = json::array();
        for (int q = 0; q <= static_cast<int>(BoundQuantity::Square); ++q) {
            auto bq = static_cast<BoundQuantity>(q);
            json rep;
            try {
                rep = to_json(bound_report(bq, in));
            } catch (const Error& e) {
                if (e.code() != ErrorCode::MissingInput) throw;
                rep["quantity"] = bound_quantity_name(bq);
                rep["lower"] = nullptr;
                rep["upper"] = nullptr;
                rep["applicable"] = false;
                rep["reason"] = e.what();
            }
            row(rep);
            reports.push_back(std::move(rep));
        }
        r.j["command"] = "mult bounds";
        r.j["reports"] = std::move(reports);
        return r;
    }

    auto q = parse_bound_quantity(a.quantity);
    if (!q) throw Error(ErrorCode::ParseError, "unknown bound quantity '" + a.quantity + "'");
    if (*q == BoundQuantity::Square) {
        // The square's numbers do not depend on A or t once t >= t0.
        if (!in.A) {
            in.A = 1.0;
            defaults.push_back("A");
        }
        if (!in.t && std::floor(a.p) == a.p && std::fmod(a.p, 2.0) == 0.0) {
            in.t = multiplier_t0(*in.A, static_cast<int>(a.p));
            defaults.push_back("t");
        }
    }
    BoundReport rep = bound_report(*q, in);
    r.j = to_json(rep);
    if (!defaults.empty()) r.j["defaulted"] = defaults;
    row(r.j);
    if (!rep.applicable) r.code = kInapplicable;
    return r;
}

struct EstimateArgs {
    std::string multiplier;
    double p = 0;
    std::size_t N = 4096;
    std::optional<double> omega;
    double shift = 0.5;
    double a = -1.0, b = 1.0;
    double lambda = 1.0;
    std::optional<double> split_t;
    bool plus = false;
    EstimateOptions opts;
    std::string rule = "power";
    std::string checkpoint;
    std::string init;
};

Result cmd_estimate(EstimateArgs a) {
    auto omega_or = [&](double d) { return a.omega.value_or(d); };
    DiscreteMultiplier m;
    if (a.multiplier == "halfline") m = half_line_multiplier(a.N, omega_or(1.0));
    else if (a.multiplier == "halfline-shifted") m = half_line_multiplier(a.N, omega_or(2.0), a.shift);
    else if (a.multiplier == "segment") m = segment_multiplier(a.N, omega_or(2.0), a.a, a.b);
    else if (a.multiplier == "tent") m = tent_discrete(a.N, omega_or(2.0), a.lambda);
    else if (a.multiplier == "tent-plus") m = plus_part(tent_discrete(a.N, omega_or(1.0), a.lambda));
    else if (a.multiplier.rfind("pp:", 0) == 0)
        m = sample_multiplier(parse_function_spec(a.multiplier.substr(3)), a.N, omega_or(2.0));
    else
        throw Error(ErrorCode::ParseError, "unknown multiplier '" + a.multiplier +
                                               "' (halfline, halfline-shifted, segment, tent, tent-plus, pp:<spec>)");
    std::optional<double> snapped;
    if (a.split_t) {
        SplitMultiplier s = split_multiplier(m, *a.split_t);
        m = std::move(s.multiplier);
        snapped = s.t;
    }
    if (a.plus) m = plus_part(m);
    a.opts.step_rule = a.rule == "lbfgs" ? StepRule::Lbfgs : StepRule::Power;
    if (!a.init.empty()) a.opts.initial = samples_from_json(json::parse(read_file(a.init)).at("test_function"));

    LowerEstimate e = estimate_lower(m, a.p, a.opts);
    Result r;
    json& j = r.j;
    j["command"] = "mult estimate";
    j["multiplier"] = m.label;
    j["N"] = m.N;
    j["omega"] = m.omega;
    if (snapped) j["t"] = *snapped;
    j["sup_norm"] = m.sup_norm();
    json body = to_json(e, false);
    for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
    j["step_rule"] = a.rule;
    j["seed"] = a.opts.seed;
    j["reference"] = to_json(constants(a.p));
    if (!a.checkpoint.empty()) {
        json cp;
        cp["multiplier"] = m.label;
        cp["p"] = a.p;
        cp["N"] = m.N;
        cp["omega"] = m.omega;
        cp["estimate"] = e.estimate;
        cp["test_function"] = to_json(e, true)["test_function"];
        write_atomic(a.checkpoint, dump(cp) + "\n");
        j["checkpoint"] = a.checkpoint;
    }
    r.csv_header = {"multiplier", "p", "N", "omega", "estimate", "iterations", "converged"};
    r.csv_rows.push_back({m.label, format_double(a.p), std::to_string(m.N), format_double(m.omega),
                          format_double(e.estimate), std::to_string(e.iterations), e.converged ? "true" : "false"});
    return r;
}

Result cmd_exact_positive(const std::string& spec, double p, bool asserted) {
    PositiveKernelNorm k = exact_norm_positive_kernel(parse_function_spec(spec), p, asserted);
    Result r;
    r.j["command"] = "mult exact-positive";
    r.j["function"] = spec;
    json body = to_json(k);
    for (auto it = body.begin(); it != body.end(); ++it) r.j[it.key()] = it.value();
    r.csv_header = {"p", "ell", "m_norm", "m_plus_norm", "m_plus_norm_real", "source"};
    r.csv_rows.push_back({format_double(p), format_double(k.ell), format_double(k.m_norm),
                          format_double(k.m_plus_norm), format_double(k.m_plus_norm_real), k.source});
    return r;
}

// ---- series ----

Result cmd_series(const std::string& file, double p_in, const std::string& range) {
    const int p = even_p(p_in);
    json cfg;
    try {
        cfg = json::parse(read_file(file));
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::ParseError, std::string("coefficient file: ") + e.what());
    }
    CoeffSeq c = coeff_seq_from_json(cfg);
    long threshold = series_threshold(c.A, p);
    long lo = 0, hi = threshold + 3;
    if (!range.empty()) {
        auto parts = split_commas(range);
        if (parts.size() != 2) throw Error(ErrorCode::ParseError, "--t-range expects lo,hi");
        lo = std::stol(parts[0]);
        hi = std::stol(parts[1]);
        if (lo < 0 || hi < lo) throw Error(ErrorCode::InvalidArgument, "--t-range needs 0 <= lo <= hi");
    }
    SeriesConstancy sc = series_constancy(c, p, std::max(hi, threshold + 1));
    Result r;
    r.j["command"] = "series";
    r.j["p"] = p;
    r.j["A"] = c.A;
    r.j["threshold"] = sc.threshold;
    r.j["constant"] = sc.constant;
    r.j["first_mismatch"] = sc.first_mismatch ? json(*sc.first_mismatch) : json(nullptr);
    r.j["onset"] = sc.onset;
    json values = json::array();
    r.csv_header = {"t", "value"};
    for (const auto& [t, v] : series_profile(c, p, lo, hi)) {
        json e;
        e["t"] = t;
        e["value"] = to_string(v);
        values.push_back(std::move(e));
        r.csv_rows.push_back({std::to_string(t), to_string(v)});
    }
    r.j["values"] = std::move(values);
    return r;
}

// ---- batch ----

unsigned batch_threads() {
    if (const char* env = std::getenv("SPLITNORM_THREADS")) {
        try {
            long n = std::stol(env);
            if (n >= 1) return static_cast<unsigned>(n);
        } catch (const std::exception&) {
        }
        throw Error(ErrorCode::InvalidArgument, "SPLITNORM_THREADS must be a positive integer");
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

Result cmd_batch(const std::string& path) {
    json cfg;
    try {
        cfg = json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::ParseError, std::string("batch config: ") + e.what());
    }
    const json& list = cfg.is_array() ? cfg : cfg.at("jobs");
    std::vector<ExperimentConfig> jobs;
    for (const auto& j : list) jobs.push_back(ExperimentConfig::from_json(j));

    struct Outcome {
        int code = 0;
        std::string out, err;
    };
    std::vector<Outcome> outcomes(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < jobs.size(); k = next++) {
            std::ostringstream o, e;
            outcomes[k].code = run(jobs[k].to_args(), o, e);
            outcomes[k].out = o.str();
            outcomes[k].err = e.str();
        }
    };
    unsigned n = std::min<unsigned>(batch_threads(), static_cast<unsigned>(std::max<std::size_t>(1, jobs.size())));
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < n; ++k) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    Result r;
    r.j["command"] = "batch";
    json summary = json::array();
    r.csv_header = {"index", "command", "exit_code", "output"};
    for (std::size_t k = 0; k < jobs.size(); ++k) {
        json s;
        s["index"] = k;
        s["command"] = jobs[k].command;
        s["exit_code"] = outcomes[k].code;
        if (jobs[k].output) {
            s["output"] = *jobs[k].output;
        } else if (!outcomes[k].out.empty()) {
            try {
                s["result"] = json::parse(outcomes[k].out);
            } catch (const nlohmann::json::parse_error&) {
                s["result"] = outcomes[k].out;
            }
        }
        if (!outcomes[k].err.empty()) s["error"] = outcomes[k].err;
        r.csv_rows.push_back({std::to_string(k), jobs[k].command, std::to_string(outcomes[k].code),
                              jobs[k].output.value_or("")});
        summary.push_back(std::move(s));
        r.code = std::max(r.code, outcomes[k].code);
    }
    r.j["jobs"] = std::move(summary);
    return r;
}

void report_error(std::ostream& err, const std::string& code, const std::string& message) {
    json e;
    e["error"] = code;
    e["message"] = message;
    err << dump(e, -1) << '\n';
}

}  // namespace

std::vector<std::string> ExperimentConfig::to_args() const {
    std::vector<std::string> args;
    std::istringstream words(command);
    for (std::string w; words >> w;) args.push_back(w);
    if (!spec.empty()) args.push_back(spec);
    if (p) args.insert(args.end(), {"--p", format_double(*p)});
    for (const auto& v : t) args.insert(args.end(), {"--t", v});
    if (t_range) args.insert(args.end(), {"--t-range", *t_range});
    if (engine) args.insert(args.end(), {"--engine", *engine});
    if (output) args.insert(args.end(), {"--output", *output});
    if (seed) args.insert(args.end(), {"--seed", std::to_string(*seed)});
    if (error_target) args.insert(args.end(), {"--err", format_double(*error_target)});
    args.insert(args.end(), extra.begin(), extra.end());
    return args;
}

json ExperimentConfig::to_json() const {
    json j;
    j["command"] = command;
    if (!spec.empty()) j["spec"] = spec;
    if (p) j["p"] = *p;
    if (!t.empty()) j["t"] = t;
    if (t_range) j["t_range"] = *t_range;
    if (engine) j["engine"] = *engine;
    if (output) j["output"] = *output;
    if (seed) j["seed"] = *seed;
    if (error_target) j["error_target"] = *error_target;
    if (!extra.empty()) j["extra"] = extra;
    return j;
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
    try {
        ExperimentConfig c;
        c.command = j.at("command").get<std::string>();
        c.spec = j.value("spec", std::string());
        if (j.contains("p")) c.p = j["p"].get<double>();
        if (j.contains("t")) {
            for (const auto& v : j["t"]) c.t.push_back(v.is_string() ? v.get<std::string>() : format_double(v.get<double>()));
        }
        if (j.contains("t_range")) c.t_range = j["t_range"].get<std::string>();
        if (j.contains("engine")) c.engine = j["engine"].get<std::string>();
        if (j.contains("output")) c.output = j["output"].get<std::string>();
        if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("error_target")) c.error_target = j["error_target"].get<double>();
        if (j.contains("extra")) c.extra = j["extra"].get<std::vector<std::string>>();
        if (c.engine && *c.engine == "exact" && c.p &&
            (std::floor(*c.p) != *c.p || std::fmod(*c.p, 2.0) != 0.0))
            throw Error(ErrorCode::OddP, "exact engine needs an even p");
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("experiment config: ") + e.what());
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"splitnorm: exact and numeric L^p norms of split functions and multiplier bounds"};
    app.require_subcommand(1);

    Common common;
    std::string spec, window, trange, engine, radius, file;
    double p = 0.0, err_target = 1e-6;
    int refine = 8;
    long node_cap = 1L << 20;
    std::vector<std::string> tlist;

    auto* profile = app.add_subcommand("profile", "Exact (N_t f)^p profile for even p");
    profile->add_option("spec", spec, "Function spec")->required();
    profile->add_option("--p", p, "Even exponent")->required();
    profile->add_option("--refine", refine, "Samples per profile piece");
    profile->add_option("--window", window, "Also decide monotonicity on [lo, hi]");
    add_common(profile, common);

    auto* norm = app.add_subcommand("norm", "Numeric (N_t f)^p with error budget");
    norm->add_option("spec", spec, "Function spec")->required();
    norm->add_option("--p", p, "Exponent > 1")->required();
    norm->add_option("--t", tlist, "Shift (repeatable; decimal or ratio)");
    norm->add_option("--t-range", trange, "lo,hi,count");
    norm->add_option("--err", err_target, "Absolute error target");
    norm->add_option("--engine", engine)->check(CLI::IsMember({"exact", "numeric", "both"}));
    norm->add_option("--node-cap", node_cap, "Integrand evaluation cap");
    add_common(norm, common);

    auto* classs = app.add_subcommand("class-s", "Membership in the class S");
    classs->add_option("spec", spec, "Function spec")->required();
    classs->add_option("--radius", radius, "Also test the bump criterion with this radius");
    add_common(classs, common);

    auto* series = app.add_subcommand("series", "Exact split-series profile");
    series->add_option("file", file, "Coefficient JSON file")->required();
    series->add_option("--p", p, "Even exponent")->required();
    series->add_option("--t-range", trange, "lo,hi (integers)");
    add_common(series, common);

    auto* batch = app.add_subcommand("batch", "Run a JSON batch of jobs");
    batch->add_option("config", file, "Batch config JSON")->required();
    add_common(batch, common);

    auto* mult = app.add_subcommand("mult", "Fourier multiplier constants, bounds and estimates");
    mult->require_subcommand(1);

    auto* mconst = mult->add_subcommand("constants", "n_p, c_p and c_p^R");
    mconst->add_option("--p", p, "Exponent > 1")->required();
    add_common(mconst, common);

    BoundArgs ba;
    std::map<std::string, CLI::Option*> bound_opts;
    std::map<std::string, double> bound_vals;
    auto* mbounds = mult->add_subcommand("bounds", "Inequality ledger reports");
    mbounds->add_option("quantity", ba.quantity, "Quantity name or 'all'")->required();
    mbounds->add_option("--p", ba.p, "Exponent")->required();
    mbounds->add_option("--preset", ba.preset, "Fill inputs from a known multiplier (tent)");
    for (const char* key : {"A", "t", "ell", "m_norm", "m_plus_norm", "m_minus_norm"}) {
        std::string flag = std::string("--") + key;
        std::replace(flag.begin() + 2, flag.end(), '_', '-');
        bound_vals[key] = 0.0;
        bound_opts[key] = mbounds->add_option(flag, bound_vals[key]);
    }
    mbounds->add_flag("--real-preserving", ba.real_preserving, "Declare that the operator preserves real functions");
    mbounds->add_flag("--real-norms", ba.real_norms, "Report real-test-function norms where available");
    add_common(mbounds, common);

    EstimateArgs ea;
    double omega = 0.0, split_t = 0.0;
    std::string rule = "power";
    auto* mest = mult->add_subcommand("estimate", "Lower bound for a discrete multiplier norm");
    mest->add_option("multiplier", ea.multiplier, "halfline | halfline-shifted | segment | tent | tent-plus | pp:<spec>")
        ->required();
    mest->add_option("--p", ea.p, "Exponent > 1")->required();
    mest->add_option("--N", ea.N, "Grid size (power of two)");
    auto* omega_opt = mest->add_option("--omega", omega, "Half-width of the frequency grid");
    mest->add_option("--shift", ea.shift, "Shift for halfline-shifted");
    mest->add_option("--a", ea.a, "Segment left end");
    mest->add_option("--b", ea.b, "Segment right end");
    mest->add_option("--lambda", ea.lambda, "Tent height");
    auto* split_opt = mest->add_option("--split-t", split_t, "Estimate S_t m instead of m");
    mest->add_flag("--plus", ea.plus, "Restrict to positive frequencies");
    mest->add_option("--iterations", ea.opts.iterations, "Iterations per start");
    mest->add_option("--starts", ea.opts.starts, "Random starts");
    mest->add_option("--seed", ea.opts.seed, "Seed");
    mest->add_flag("--real", ea.opts.real_test_functions, "Real-valued test functions");
    mest->add_option("--rule", rule, "Step rule")->check(CLI::IsMember({"power", "lbfgs"}));
    mest->add_option("--checkpoint", ea.checkpoint, "Write the best test function here");
    mest->add_option("--init", ea.init, "Start from a checkpoint's test function");
    add_common(mest, common);

    bool asserted = false;
    auto* mpos = mult->add_subcommand("exact-positive", "Exact norms for nonnegative-kernel multipliers");
    mpos->add_option("spec", spec, "Multiplier as a function spec")->required();
    mpos->add_option("--p", p, "Exponent > 1")->required();
    mpos->add_flag("--assert-positive", asserted, "Caller asserts the kernel is nonnegative and integrable");
    add_common(mpos, common);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        report_error(err, "ParseError", e.what());
        return kConfigError;
    }

    try {
        Result r;
        if (profile->parsed()) r = cmd_profile(spec, p, refine, window);
        else if (norm->parsed()) r = cmd_norm(spec, p, tlist, trange, err_target, engine, node_cap);
        else if (classs->parsed()) r = cmd_class_s(spec, radius);
        else if (series->parsed()) r = cmd_series(file, p, trange);
        else if (batch->parsed()) r = cmd_batch(file);
        else if (mconst->parsed()) r = cmd_constants(p);
        else if (mbounds->parsed()) {
            for (const auto& [key, opt] : bound_opts)
                if (opt->count() > 0) ba.given[key] = bound_vals[key];
            r = cmd_bounds(ba);
        } else if (mest->parsed()) {
            if (omega_opt->count() > 0) ea.omega = omega;
            if (split_opt->count() > 0) ea.split_t = split_t;
            ea.rule = rule;
            r = cmd_estimate(ea);
        } else if (mpos->parsed()) {
            r = cmd_exact_positive(spec, p, asserted);
        }
        std::string text = render(r, common.emit);
        if (common.output.empty()) out << text;
        else write_atomic(common.output, text);
        return r.code;
    } catch (const Error& e) {
        report_error(err, error_code_name(e.code()), e.what());
        return exit_code_for(e.code());
    } catch (const std::filesystem::filesystem_error& e) {
        report_error(err, "IOError", e.what());
        return kConfigError;
    } catch (const nlohmann::json::exception& e) {
        report_error(err, "ParseError", e.what());
        return kConfigError;
    } catch (const std::invalid_argument& e) {
        report_error(err, "ParseError", e.what());
        return kConfigError;
    } catch (const std::out_of_range& e) {
        report_error(err, "ParseError", e.what());
        return kConfigError;
    }
}

}  // namespace splitnorm::cli

#include "splitnorm_cli/json_io.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "splitnorm/error.hpp"

namespace splitnorm::cli {

std::string format_double(double x) {
    if (!std::isfinite(x)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    std::string s(buf);
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
}

namespace {

void dump_into(const json& j, int indent, int depth, std::string& out) {
    auto newline = [&](int d) {
        if (indent < 0) return;
        out += '\n';
        out.append(static_cast<std::size_t>(indent * d), ' ');
    };
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                newline(depth + 1);
                out += json(it.key()).dump();
                out += indent < 0 ? ":" : ": ";
                dump_into(it.value(), indent, depth + 1, out);
            }
            newline(depth);
            out += '}';
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            // Arrays of scalars stay on one line.
            bool flat = std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
            out += '[';
            bool first = true;
            for (const auto& e : j) {
                if (!first) out += flat && indent >= 0 ? ", " : ",";
                first = false;
                if (!flat) newline(depth + 1);
                dump_into(e, indent, depth + 1, out);
            }
            if (!flat) newline(depth);
            out += ']';
            return;
        }
        case json::value_t::number_float:
            out += format_double(j.get<double>());
            return;
        default:
            out += j.dump();
    }
}

}  // namespace

std::string dump(const json& j, int indent) {
    std::string out;
    dump_into(j, indent, 0, out);
    return out;
}

json to_json(const Rat& r) { return to_string(r); }
json to_json(const GRat& z) { return to_string(z); }

json to_json(const PiecewisePoly& f) {
    json j;
    json bp = json::array();
    for (const auto& b : f.breakpoints()) bp.push_back(to_string(b));
    json pieces = json::array();
    for (const auto& p : f.pieces()) {
        json c = json::array();
        for (const auto& z : p.coeffs()) c.push_back(to_string(z));
        pieces.push_back(std::move(c));
    }
    j["breakpoints"] = std::move(bp);
    j["pieces"] = std::move(pieces);
    return j;
}

PiecewisePoly piecewise_from_json(const json& j) {
    try {
        std::vector<Rat> bp;
        for (const auto& b : j.at("breakpoints")) bp.push_back(parse_rat(b.get<std::string>()));
        std::vector<Poly> pieces;
        for (const auto& p : j.at("pieces")) {
            std::vector<GRat> c;
            for (const auto& z : p) c.push_back(parse_grat(z.get<std::string>()));
            pieces.emplace_back(std::move(c));
        }
        return PiecewisePoly(std::move(bp), std::move(pieces));
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("piecewise JSON: ") + e.what());
    }
}

json to_json(const NumericNorm& n) {
    json j;
    j["p"] = n.p;
    j["t"] = n.t;
    j["value_pth_power"] = n.value;
    j["abs_error"] = n.abs_error;
    j["quadrature_error"] = n.quadrature_error;
    j["tail_error"] = n.tail_error;
    j["cutoff"] = n.cutoff;
    j["evaluations"] = n.evaluations;
    j["tail_method"] = n.tail_method == TailMethod::Bound ? "bound" : "expansion";
    j["met_target"] = n.met_target;
    return j;
}

json to_json(const MultConstants& c) {
    json j;
    j["p"] = c.p;
    j["n_p"] = c.n_p;
    j["c_p"] = c.c_p;
    j["c_p_real"] = c.c_p_real;
    return j;
}

json to_json(const BoundReport& r) {
    json j;
    j["quantity"] = bound_quantity_name(r.quantity);
    for (const auto& [k, v] : r.inputs) j[k] = v;
    j["lower"] = r.lower ? json(*r.lower) : json(nullptr);
    j["upper"] = r.upper ? json(*r.upper) : json(nullptr);
    j["applicable"] = r.applicable;
    if (!r.applicable) j["reason"] = r.reason;
    return j;
}

json to_json(const PositiveKernelNorm& k) {
    json j;
    j["p"] = k.p;
    j["ell"] = k.ell;
    j["m_norm"] = k.m_norm;
    j["m_plus_norm"] = k.m_plus_norm;
    j["m_plus_norm_real"] = k.m_plus_norm_real;
    j["source"] = k.source;
    return j;
}

json to_json(const LowerEstimate& e, bool include_test_function) {
    json j;
    j["p"] = e.p;
    j["estimate"] = e.estimate;
    j["iterations"] = e.iterations;
    j["converged"] = e.converged;
    j["approximate"] = e.approximate;
    json h = json::array();
    for (double v : e.history) h.push_back(v);
    j["history"] = std::move(h);
    if (include_test_function) {
        json f = json::array();
        for (const auto& z : e.test_function) f.push_back(json::array({z.real(), z.imag()}));
        j["test_function"] = std::move(f);
    }
    return j;
}

CoeffSeq coeff_seq_from_json(const json& j) {
    try {
        CoeffSeq c;
        c.A = j.at("A").get<long>();
        for (auto it = j.at("coeffs").begin(); it != j.at("coeffs").end(); ++it) {
            std::size_t used = 0;
            long k = std::stol(it.key(), &used);
            if (used != it.key().size()) throw Error(ErrorCode::ParseError, "bad coefficient index '" + it.key() + "'");
            GRat v = it.value().is_string() ? parse_grat(it.value().get<std::string>())
                                            : GRat(Rat(it.value().get<long>()));
            c.coeffs[k] = v;
        }
        c.validate();
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("coefficient JSON: ") + e.what());
    } catch (const std::invalid_argument&) {
        throw Error(ErrorCode::ParseError, "coefficient index is not an integer");
    }
}

json to_json(const CoeffSeq& c) {
    json j;
    j["A"] = c.A;
    json co = json::object();
    for (const auto& [k, v] : c.coeffs) co[std::to_string(k)] = to_string(v);
    j["coeffs"] = std::move(co);
    return j;
}

std::vector<std::complex<double>> samples_from_json(const json& j) {
    try {
        std::vector<std::complex<double>> out;
        for (const auto& e : j) out.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("sample array: ") + e.what());
    }
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
    static std::atomic<unsigned long> counter{0};
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ostringstream tag;
    tag << ".tmp." << std::this_thread::get_id() << '.' << counter++;
    std::filesystem::path tmp = path;
    tmp += tag.str();
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + tmp.string());
        out << content;
        if (!out) throw Error(ErrorCode::InvalidArgument, "write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace splitnorm::cli

#include "splitnorm/jump_form.hpp"

#include <algorithm>
#include <stdexcept>

namespace splitnorm {

namespace {

bool term_less(const JumpForm::Term& a, const JumpForm::Term& b) {
    int c = cmp(a.at, b.at);
    return c < 0 || (c == 0 && a.order < b.order);
}

// c (x - b)^n / n! expanded in powers of x, accumulated into `acc`.
void add_truncated_power(std::vector<GRat>& acc, const Rat& b, int n, const GRat& c) {
    if (acc.size() < static_cast<std::size_t>(n) + 1) acc.resize(static_cast<std::size_t>(n) + 1);
    Rat neg_b = -b;
    // coefficient of x^k: (-b)^{n-k} / (k! (n-k)!)
    Rat power = 1;  // (-b)^{n-k}, built from k = n downwards
    for (int k = n; k >= 0; --k) {
        Rat w = power / (factorial(k) * factorial(n - k));
        acc[static_cast<std::size_t>(k)] += c * w;
        power *= neg_b;
    }
}

}  // namespace

JumpForm JumpForm::from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), term_less);
    JumpForm out;
    for (auto& t : terms) {
        if (!out.terms_.empty() && out.terms_.back().order == t.order && out.terms_.back().at == t.at) {
            out.terms_.back().coeff += t.coeff;
            continue;
        }
        if (!out.terms_.empty() && out.terms_.back().coeff.is_zero()) out.terms_.pop_back();
        out.terms_.push_back(std::move(t));
    }
    if (!out.terms_.empty() && out.terms_.back().coeff.is_zero()) out.terms_.pop_back();
    return out;
}

JumpForm JumpForm::from_piecewise(const PiecewisePoly& f) {
    std::vector<Term> terms;
    const auto& bp = f.breakpoints();
    const auto& pieces = f.pieces();
    for (std::size_t k = 0; k < bp.size(); ++k) {
        Poly right = k < pieces.size() ? pieces[k] : Poly();
        Poly left = k > 0 ? pieces[k - 1] : Poly();
        Poly local = (right - left).taylor_shift(bp[k]);
        Rat fact = 1;
        for (int n = 0; n <= local.degree(); ++n) {
            if (n > 0) fact *= n;
            const GRat& c = local.coeff(n);
            if (!c.is_zero()) terms.push_back({bp[k], n, c * fact});
        }
    }
    return from_terms(std::move(terms));
}

GRat JumpForm::eval(const Rat& x) const {
    GRat total;
    for (const auto& t : terms_) {
        if (t.at > x) break;
        Rat d = x - t.at;
        total += t.coeff * (rat_pow(d, static_cast<unsigned long>(t.order)) / factorial(t.order));
    }
    return total;
}

void JumpForm::sweep(const Rat& start, const Poly& base, std::vector<Rat>& breakpoints,
                     std::vector<Poly>& polys) const {
    breakpoints.clear();
    polys.clear();
    std::vector<GRat> running = base.coeffs();
    std::size_t k = 0;
    while (k < terms_.size() && terms_[k].at <= start) {
        add_truncated_power(running, terms_[k].at, terms_[k].order, terms_[k].coeff);
        ++k;
    }
    breakpoints.push_back(start);
    while (k < terms_.size()) {
        polys.emplace_back(running);
        const Rat at = terms_[k].at;
        while (k < terms_.size() && terms_[k].at == at) {
            add_truncated_power(running, at, terms_[k].order, terms_[k].coeff);
            ++k;
        }
        breakpoints.push_back(at);
    }
    polys.emplace_back(std::move(running));
}

PiecewisePoly JumpForm::to_piecewise() const {
    if (terms_.empty()) return {};
    std::vector<Rat> bp;
    std::vector<Poly> polys;
    sweep(terms_.front().at, Poly(), bp, polys);
    if (!polys.back().is_zero()) throw std::logic_error("JumpForm::to_piecewise: representation is not compactly supported");
    polys.pop_back();
    return PiecewisePoly(std::move(bp), std::move(polys));
}

JumpForm JumpForm::conj_reflect() const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        GRat c = t.coeff.conj();
        if (t.order % 2 == 0) c = -c;
        out.push_back({-t.at, t.order, std::move(c)});
    }
    return from_terms(std::move(out));
}

JumpForm JumpForm::real_part() const {
    std::vector<Term> out;
    for (const auto& t : terms_)
        if (sgn(t.coeff.re) != 0) out.push_back({t.at, t.order, GRat(t.coeff.re)});
    return from_terms(std::move(out));
}

JumpForm convolve(const JumpForm& a, const JumpForm& b) {
    std::vector<JumpForm::Term> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& s : a.terms_)
        for (const auto& t : b.terms_) out.push_back({s.at + t.at, s.order + t.order + 1, s.coeff * t.coeff});
    return JumpForm::from_terms(std::move(out));
}

JumpForm conv_power(const JumpForm& f, int k) {
    if (k < 1) throw std::invalid_argument("conv_power needs k >= 1");
    JumpForm result;
    bool have = false;
    JumpForm base = f;
    while (k > 0) {
        if (k & 1) {
            result = have ? convolve(result, base) : base;
            have = true;
        }
        k >>= 1;
        if (k > 0) base = convolve(base, base);
    }
    return result;
}

}  // namespace splitnorm

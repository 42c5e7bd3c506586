#include "splitnorm/piecewise.hpp"

#include <algorithm>

#include "splitnorm/error.hpp"
#include "splitnorm/jump_form.hpp"

namespace splitnorm {

PiecewisePoly::PiecewisePoly(std::vector<Rat> breakpoints, std::vector<Poly> pieces)
    : bp_(std::move(breakpoints)), pieces_(std::move(pieces)) {
    if (bp_.size() <= 1 && pieces_.empty()) {
        bp_.clear();
        return;
    }
    if (pieces_.size() + 1 != bp_.size())
        throw Error(ErrorCode::InvalidArgument, "piece count must be breakpoint count minus one");
    for (std::size_t k = 1; k < bp_.size(); ++k)
        if (!(bp_[k - 1] < bp_[k]))
            throw Error(ErrorCode::InvalidArgument, "breakpoints must be strictly increasing");
    canonicalize();
}

PiecewisePoly PiecewisePoly::indicator(const Rat& a, const Rat& b) {
    return on_interval(a, b, Poly::constant(GRat(1)));
}

PiecewisePoly PiecewisePoly::on_interval(const Rat& a, const Rat& b, const Poly& p) {
    if (!(a < b)) return {};
    return PiecewisePoly({a, b}, {p});
}

void PiecewisePoly::canonicalize() {
    std::vector<Rat> bp;
    std::vector<Poly> pieces;
    bp.push_back(bp_.front());
    for (std::size_t k = 0; k < pieces_.size(); ++k) {
        if (!pieces.empty() && pieces.back() == pieces_[k]) {
            bp.back() = bp_[k + 1];
            continue;
        }
        pieces.push_back(std::move(pieces_[k]));
        bp.push_back(bp_[k + 1]);
    }
    std::size_t first = 0, last = pieces.size();
    while (first < last && pieces[first].is_zero()) ++first;
    while (last > first && pieces[last - 1].is_zero()) --last;
    if (first == last) {
        bp_.clear();
        pieces_.clear();
        return;
    }
    bp_.assign(std::make_move_iterator(bp.begin() + static_cast<long>(first)),
               std::make_move_iterator(bp.begin() + static_cast<long>(last) + 1));
    pieces_.assign(std::make_move_iterator(pieces.begin() + static_cast<long>(first)),
                   std::make_move_iterator(pieces.begin() + static_cast<long>(last)));
}

bool PiecewisePoly::is_real() const {
    return std::all_of(pieces_.begin(), pieces_.end(), [](const Poly& p) { return p.is_real(); });
}

int PiecewisePoly::max_degree() const {
    int d = -1;
    for (const auto& p : pieces_) d = std::max(d, p.degree());
    return d;
}

std::optional<std::pair<Rat, Rat>> PiecewisePoly::support() const {
    if (is_zero()) return std::nullopt;
    return std::make_pair(bp_.front(), bp_.back());
}

GRat PiecewisePoly::eval(const Rat& x) const {
    if (is_zero() || x < bp_.front() || x >= bp_.back()) return {};
    auto it = std::upper_bound(bp_.begin(), bp_.end(), x);
    return pieces_[static_cast<std::size_t>(it - bp_.begin() - 1)].eval(x);
}

std::complex<double> PiecewisePoly::eval(double x) const {
    if (is_zero() || x < bp_.front().get_d() || x >= bp_.back().get_d()) return 0.0;
    std::size_t k = 0;
    while (k + 1 < pieces_.size() && x >= bp_[k + 1].get_d()) ++k;
    return pieces_[k].eval(x);
}

GRat PiecewisePoly::eval_left(const Rat& x) const {
    if (is_zero() || x <= bp_.front() || x > bp_.back()) return {};
    auto it = std::lower_bound(bp_.begin(), bp_.end(), x);
    return pieces_[static_cast<std::size_t>(it - bp_.begin() - 1)].eval(x);
}

GRat PiecewisePoly::integral() const {
    GRat total;
    for (std::size_t k = 0; k < pieces_.size(); ++k) {
        Poly a = pieces_[k].antiderivative();
        total += a.eval(bp_[k + 1]) - a.eval(bp_[k]);
    }
    return total;
}

namespace {

// Polynomial of f on the gap starting at x (zero outside the support).
const Poly& piece_at(const PiecewisePoly& f, const Rat& x) {
    static const Poly zero;
    const auto& bp = f.breakpoints();
    if (f.is_zero() || x < bp.front() || x >= bp.back()) return zero;
    auto it = std::upper_bound(bp.begin(), bp.end(), x);
    return f.pieces()[static_cast<std::size_t>(it - bp.begin() - 1)];
}

std::vector<Rat> merged_breakpoints(const PiecewisePoly& f, const PiecewisePoly& g) {
    std::vector<Rat> all;
    all.reserve(f.breakpoints().size() + g.breakpoints().size());
    std::merge(f.breakpoints().begin(), f.breakpoints().end(), g.breakpoints().begin(),
               g.breakpoints().end(), std::back_inserter(all));
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

template <class Op>
PiecewisePoly combine(const PiecewisePoly& f, const PiecewisePoly& g, Op op) {
    std::vector<Rat> bp = merged_breakpoints(f, g);
    if (bp.size() < 2) return {};
    std::vector<Poly> pieces;
    pieces.reserve(bp.size() - 1);
    for (std::size_t k = 0; k + 1 < bp.size(); ++k) pieces.push_back(op(piece_at(f, bp[k]), piece_at(g, bp[k])));
    return PiecewisePoly(std::move(bp), std::move(pieces));
}

}  // namespace

PiecewisePoly& PiecewisePoly::operator+=(const PiecewisePoly& o) {
    *this = combine(*this, o, [](const Poly& a, const Poly& b) { return a + b; });
    return *this;
}

PiecewisePoly& PiecewisePoly::operator-=(const PiecewisePoly& o) {
    *this = combine(*this, o, [](const Poly& a, const Poly& b) { return a - b; });
    return *this;
}

PiecewisePoly& PiecewisePoly::operator*=(const GRat& s) {
    if (s.is_zero()) {
        *this = {};
        return *this;
    }
    for (auto& p : pieces_) p *= s;
    return *this;
}

PiecewisePoly PiecewisePoly::restrict_to(const std::optional<Rat>& lo, const std::optional<Rat>& hi) const {
    if (is_zero()) return {};
    std::vector<Rat> bp = bp_;
    for (const auto* cut : {&lo, &hi}) {
        if (!*cut) continue;
        auto it = std::lower_bound(bp.begin(), bp.end(), **cut);
        if (it == bp.end() || *it != **cut) bp.insert(it, **cut);
    }
    std::vector<Poly> pieces;
    for (std::size_t k = 0; k + 1 < bp.size(); ++k) {
        bool inside = (!lo || bp[k] >= *lo) && (!hi || bp[k + 1] <= *hi);
        pieces.push_back(inside ? piece_at(*this, bp[k]) : Poly());
    }
    return PiecewisePoly(std::move(bp), std::move(pieces));
}

PiecewisePoly PiecewisePoly::conj() const {
    PiecewisePoly out = *this;
    for (auto& p : out.pieces_) p = p.conj();
    return out;
}

PiecewisePoly PiecewisePoly::real_part() const {
    std::vector<Poly> pieces;
    for (const auto& p : pieces_) pieces.push_back(p.real_part());
    return PiecewisePoly(bp_, std::move(pieces));
}

PiecewisePoly convolve(const PiecewisePoly& f, const PiecewisePoly& g) {
    if (f.is_zero() || g.is_zero()) return {};
    return convolve(JumpForm::from_piecewise(f), JumpForm::from_piecewise(g)).to_piecewise();
}

PiecewisePoly correlate(const PiecewisePoly& f, const PiecewisePoly& g) {
    return convolve(g, conj_reflect(f));
}

GRat l2_inner(const PiecewisePoly& f, const PiecewisePoly& g) {
    GRat total;
    if (f.is_zero() || g.is_zero()) return total;
    std::vector<Rat> bp = merged_breakpoints(f, g);
    for (std::size_t k = 0; k + 1 < bp.size(); ++k) {
        const Poly& a = piece_at(f, bp[k]);
        const Poly& b = piece_at(g, bp[k]);
        if (a.is_zero() || b.is_zero()) continue;
        Poly anti = (a * b.conj()).antiderivative();
        total += anti.eval(bp[k + 1]) - anti.eval(bp[k]);
    }
    return total;
}

PiecewisePoly translate(const PiecewisePoly& f, const Rat& t) {
    if (f.is_zero() || sgn(t) == 0) return f;
    std::vector<Rat> bp;
    std::vector<Poly> pieces;
    for (const auto& b : f.breakpoints()) bp.push_back(b + t);
    Rat back = -t;
    for (const auto& p : f.pieces()) pieces.push_back(p.taylor_shift(back));
    return PiecewisePoly(std::move(bp), std::move(pieces));
}

PiecewisePoly reflect(const PiecewisePoly& f) {
    if (f.is_zero()) return f;
    std::vector<Rat> bp;
    std::vector<Poly> pieces;
    for (auto it = f.breakpoints().rbegin(); it != f.breakpoints().rend(); ++it) bp.push_back(-*it);
    for (auto it = f.pieces().rbegin(); it != f.pieces().rend(); ++it) pieces.push_back(it->scale_argument(Rat(-1)));
    return PiecewisePoly(std::move(bp), std::move(pieces));
}

PiecewisePoly conj_reflect(const PiecewisePoly& f) { return reflect(f).conj(); }

PiecewisePoly conv_power(const PiecewisePoly& f, int k) {
    if (k < 1) throw Error(ErrorCode::InvalidArgument, "conv_power needs k >= 1");
    return conv_power(JumpForm::from_piecewise(f), k).to_piecewise();
}

}  // namespace splitnorm

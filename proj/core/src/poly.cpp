#include "splitnorm/poly.hpp"

#include "splitnorm/error.hpp"

namespace splitnorm {

Poly::Poly(std::vector<GRat> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::constant(const GRat& c) { return Poly({c}); }

Poly Poly::monomial(const GRat& c, int degree) {
    std::vector<GRat> v(static_cast<std::size_t>(degree) + 1);
    v.back() = c;
    return Poly(std::move(v));
}

void Poly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

bool Poly::is_real() const {
    for (const auto& c : c_)
        if (!c.is_real()) return false;
    return true;
}

const GRat& Poly::coeff(int k) const {
    static const GRat zero;
    if (k < 0 || k >= static_cast<int>(c_.size())) return zero;
    return c_[static_cast<std::size_t>(k)];
}

GRat Poly::eval(const Rat& x) const {
    GRat acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc *= x;
        acc += *it;
    }
    return acc;
}

std::complex<double> Poly::eval(double x) const {
    std::complex<double> acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->to_complex();
    return acc;
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<GRat> out(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) out[k - 1] = c_[k] * Rat(static_cast<long>(k));
    return Poly(std::move(out));
}

Poly Poly::antiderivative() const {
    if (c_.empty()) return {};
    std::vector<GRat> out(c_.size() + 1);
    for (std::size_t k = 0; k < c_.size(); ++k) out[k + 1] = c_[k] / Rat(static_cast<long>(k + 1));
    return Poly(std::move(out));
}

Poly Poly::taylor_shift(const Rat& c) const {
    if (sgn(c) == 0 || c_.size() <= 1) return *this;
    std::vector<GRat> a = c_;
    const std::size_t n = a.size() - 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = n; j-- > i;) a[j] += a[j + 1] * c;
    return Poly(std::move(a));
}

Poly Poly::scale_argument(const Rat& k) const {
    std::vector<GRat> a = c_;
    Rat power = 1;
    for (auto& coeff : a) {
        coeff *= power;
        power *= k;
    }
    return Poly(std::move(a));
}

Poly Poly::conj() const {
    std::vector<GRat> a;
    a.reserve(c_.size());
    for (const auto& c : c_) a.push_back(c.conj());
    return Poly(std::move(a));
}

Poly Poly::real_part() const {
    std::vector<GRat> a;
    a.reserve(c_.size());
    for (const auto& c : c_) a.emplace_back(c.re);
    return Poly(std::move(a));
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
}

Poly& Poly::operator*=(const GRat& s) {
    if (s.is_zero()) {
        c_.clear();
        return *this;
    }
    for (auto& c : c_) c *= s;
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<GRat> out(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(out));
}

namespace {

void require_real(const Poly& p) {
    if (!p.is_real()) throw Error(ErrorCode::NonRealInput, "real polynomial required");
}

}  // namespace

Poly poly_divmod(const Poly& num, const Poly& den, Poly* remainder) {
    require_real(num);
    require_real(den);
    if (den.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "division by the zero polynomial");
    std::vector<GRat> r = num.coeffs();
    const int dd = den.degree();
    const Rat& lead = den.coeffs().back().re;
    std::vector<GRat> q(r.size() >= den.coeffs().size() ? r.size() - den.coeffs().size() + 1 : 0);
    for (int k = static_cast<int>(r.size()) - 1; k >= dd; --k) {
        Rat factor = r[static_cast<std::size_t>(k)].re / lead;
        if (sgn(factor) == 0) continue;
        q[static_cast<std::size_t>(k - dd)] = GRat(factor);
        for (int j = 0; j <= dd; ++j) r[static_cast<std::size_t>(k - dd + j)].re -= factor * den.coeffs()[static_cast<std::size_t>(j)].re;
    }
    if (remainder) *remainder = Poly(std::move(r));
    return Poly(std::move(q));
}

Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r;
        poly_divmod(a, b, &r);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    Rat lead = a.coeffs().back().re;
    std::vector<GRat> c = a.coeffs();
    for (auto& x : c) x /= lead;
    return Poly(std::move(c));
}

Poly square_free_part(const Poly& p) {
    if (p.degree() <= 1) return p;
    Poly g = poly_gcd(p, p.derivative());
    if (g.degree() <= 0) return p;
    return poly_divmod(p, g, nullptr);
}

int sign_of(const Poly& p, const Rat& x) { return sgn(p.eval(x).re); }

}  // namespace splitnorm

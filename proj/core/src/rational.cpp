#include "splitnorm/rational.hpp"

#include <cctype>

#include "splitnorm/error.hpp"

namespace splitnorm {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

std::string strip(std::string_view s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
    return out;
}

}  // namespace

Rat parse_rat(std::string_view text) {
    std::string s = strip(text);
    std::string_view body = s;
    bool negative = false;
    if (!body.empty() && (body.front() == '+' || body.front() == '-')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
        throw Error(ErrorCode::ParseError, "not an integer ratio: '" + std::string(text) + "'");
    mpz_class n(std::string(num), 10), d(std::string(den), 10);
    if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
    Rat r(n, d);
    r.canonicalize();
    return negative ? Rat(-r) : r;
}

std::string to_string(const Rat& r) { return r.get_str(); }

Rat ratio(long num, long den) {
    if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

Rat binomial(long n, long k) {
    if (k < 0 || k > n) return Rat(0);
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rat(out);
}

Rat factorial(long n) {
    mpz_class out;
    mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
    return Rat(out);
}

Rat rat_pow(const Rat& base, unsigned long exponent) {
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
    Rat r(num, den);
    r.canonicalize();
    return r;
}

Rat rat_abs(const Rat& r) { return sgn(r) < 0 ? Rat(-r) : r; }

Rat rat_ceil(const Rat& r) {
    mpz_class out;
    mpz_cdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return Rat(out);
}

GRat& GRat::operator*=(const GRat& o) {
    if (sgn(im) == 0 && sgn(o.im) == 0) {
        re *= o.re;
        return *this;
    }
    Rat r = re * o.re - im * o.im;
    Rat i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

GRat parse_grat(std::string_view text) {
    std::string s = strip(text);
    while (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
    if (s.empty()) throw Error(ErrorCode::ParseError, "empty number");
    if (s.back() != 'i') return GRat(parse_rat(s));
    s.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if (s[k] == '+' || s[k] == '-') {
            split = k;
            break;
        }
    }
    std::string real_text = split == std::string::npos ? "" : s.substr(0, split);
    std::string imag_text = split == std::string::npos ? s : s.substr(split);
    Rat im;
    if (imag_text.empty() || imag_text == "+") im = 1;
    else if (imag_text == "-") im = -1;
    else im = parse_rat(imag_text);
    Rat re = real_text.empty() ? Rat(0) : parse_rat(real_text);
    return GRat(re, im);
}

std::string to_string(const GRat& z) {
    if (z.is_real()) return to_string(z.re);
    std::string imag = to_string(z.im);
    if (sgn(z.re) == 0) return imag + "i";
    return to_string(z.re) + (sgn(z.im) > 0 ? "+" : "") + imag + "i";
}

}  // namespace splitnorm

#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <string_view>

namespace splitnorm {

// Arbitrary-precision rational; GMP keeps it canonical (reduced, positive denominator).
using Rat = mpq_class;

Rat parse_rat(std::string_view text);
std::string to_string(const Rat& r);
Rat binomial(long n, long k);
Rat factorial(long n);
Rat rat_pow(const Rat& base, unsigned long exponent);
Rat rat_abs(const Rat& r);
Rat rat_ceil(const Rat& r);
// num / den in canonical form (mpq_class(num, den) is not reduced).
Rat ratio(long num, long den);

struct GRat {
    Rat re;
    Rat im;

    GRat() = default;
    GRat(Rat r) : re(std::move(r)) {}
    GRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
    GRat(long r) : re(r) {}

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }
    GRat conj() const { return GRat(re, -im); }
    Rat norm_sq() const { return re * re + im * im; }
    std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

    GRat& operator+=(const GRat& o) {
        re += o.re;
        if (sgn(o.im) != 0) im += o.im;
        return *this;
    }
    GRat& operator-=(const GRat& o) {
        re -= o.re;
        if (sgn(o.im) != 0) im -= o.im;
        return *this;
    }
    GRat& operator*=(const GRat& o);
    GRat& operator*=(const Rat& s) {
        re *= s;
        if (sgn(im) != 0) im *= s;
        return *this;
    }
    GRat& operator/=(const Rat& s) {
        re /= s;
        if (sgn(im) != 0) im /= s;
        return *this;
    }
};

inline GRat operator+(GRat a, const GRat& b) { return a += b; }
inline GRat operator-(GRat a, const GRat& b) { return a -= b; }
inline GRat operator*(GRat a, const GRat& b) { return a *= b; }
inline GRat operator*(GRat a, const Rat& s) { return a *= s; }
inline GRat operator*(const Rat& s, GRat a) { return a *= s; }
inline GRat operator/(GRat a, const Rat& s) { return a /= s; }
inline GRat operator-(const GRat& a) { return GRat(-a.re, -a.im); }
inline bool operator==(const GRat& a, const GRat& b) { return a.re == b.re && a.im == b.im; }
inline bool operator!=(const GRat& a, const GRat& b) { return !(a == b); }

// Accepts "a", "a/b", "bi", "a+bi", "(a+bi)", "i", "-i", "a/b-c/di".
GRat parse_grat(std::string_view text);
std::string to_string(const GRat& z);

}  // namespace splitnorm

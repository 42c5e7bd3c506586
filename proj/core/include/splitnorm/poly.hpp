#pragma once

#include <vector>

#include "splitnorm/rational.hpp"

namespace splitnorm {

// Dense polynomial with Gaussian-rational coefficients in ascending degree.
// The zero polynomial has an empty coefficient list.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<GRat> coeffs);
    static Poly constant(const GRat& c);
    static Poly monomial(const GRat& c, int degree);

    const std::vector<GRat>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_real() const;
    const GRat& coeff(int k) const;

    GRat eval(const Rat& x) const;
    std::complex<double> eval(double x) const;

    Poly derivative() const;
    Poly antiderivative() const;
    // q(x) = p(x + c)
    Poly taylor_shift(const Rat& c) const;
    // q(x) = p(k x)
    Poly scale_argument(const Rat& k) const;
    Poly conj() const;
    Poly real_part() const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const GRat& s);

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const GRat& s) { return a *= s; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

private:
    void trim();
    std::vector<GRat> c_;
};

// Exact polynomial arithmetic over Q for real polynomials (imaginary parts must be zero).
Poly poly_divmod(const Poly& num, const Poly& den, Poly* remainder);
Poly poly_gcd(Poly a, Poly b);
Poly square_free_part(const Poly& p);
int sign_of(const Poly& p, const Rat& x);

}  // namespace splitnorm

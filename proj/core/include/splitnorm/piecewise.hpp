#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "splitnorm/poly.hpp"

namespace splitnorm {

// Compactly supported piecewise polynomial. Piece k lives on [b_k, b_{k+1});
// the function vanishes outside [b_0, b_K). Pieces are polynomials in the global variable x.
class PiecewisePoly {
public:
    PiecewisePoly() = default;
    PiecewisePoly(std::vector<Rat> breakpoints, std::vector<Poly> pieces);

    static PiecewisePoly zero() { return {}; }
    static PiecewisePoly indicator(const Rat& a, const Rat& b);
    static PiecewisePoly on_interval(const Rat& a, const Rat& b, const Poly& p);

    const std::vector<Rat>& breakpoints() const { return bp_; }
    const std::vector<Poly>& pieces() const { return pieces_; }
    std::size_t piece_count() const { return pieces_.size(); }
    bool is_zero() const { return pieces_.empty(); }
    bool is_real() const;
    int max_degree() const;

    // Support hull [b_0, b_K]; nullopt for the zero function.
    std::optional<std::pair<Rat, Rat>> support() const;

    GRat eval(const Rat& x) const;
    std::complex<double> eval(double x) const;
    // Left limit f(x-).
    GRat eval_left(const Rat& x) const;
    // Exact integral of f over R.
    GRat integral() const;

    PiecewisePoly& operator+=(const PiecewisePoly& o);
    PiecewisePoly& operator-=(const PiecewisePoly& o);
    PiecewisePoly& operator*=(const GRat& s);

    friend PiecewisePoly operator+(PiecewisePoly a, const PiecewisePoly& b) { return a += b; }
    friend PiecewisePoly operator-(PiecewisePoly a, const PiecewisePoly& b) { return a -= b; }
    friend PiecewisePoly operator*(PiecewisePoly a, const GRat& s) { return a *= s; }
    friend PiecewisePoly operator*(const GRat& s, PiecewisePoly a) { return a *= s; }
    friend bool operator==(const PiecewisePoly& a, const PiecewisePoly& b) {
        return a.bp_ == b.bp_ && a.pieces_ == b.pieces_;
    }
    friend bool operator!=(const PiecewisePoly& a, const PiecewisePoly& b) { return !(a == b); }

    // f restricted to [lo, hi) (either bound may be absent).
    PiecewisePoly restrict_to(const std::optional<Rat>& lo, const std::optional<Rat>& hi) const;
    PiecewisePoly conj() const;
    PiecewisePoly real_part() const;

private:
    void canonicalize();
    std::vector<Rat> bp_;
    std::vector<Poly> pieces_;
};

PiecewisePoly convolve(const PiecewisePoly& f, const PiecewisePoly& g);
// s -> int g(x) conj(f(x - s)) dx, i.e. g * conj(f(-.)); correlate(f, f)(0) = ||f||^2.
PiecewisePoly correlate(const PiecewisePoly& f, const PiecewisePoly& g);
// int f conj(g).
GRat l2_inner(const PiecewisePoly& f, const PiecewisePoly& g);
PiecewisePoly translate(const PiecewisePoly& f, const Rat& t);
PiecewisePoly reflect(const PiecewisePoly& f);
PiecewisePoly conj_reflect(const PiecewisePoly& f);
PiecewisePoly conv_power(const PiecewisePoly& f, int k);

}  // namespace splitnorm

#include "splitnorm/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace splitnorm {

namespace {

constexpr double kEuler = 0.57721566490153286061;
constexpr double kEps = 1e-16;

std::complex<double> expint_series(int n, std::complex<double> z) {
    // E_n(z) = (-z)^{n-1}/(n-1)! [psi(n) - log z] - sum_{m != n-1} (-z)^m / ((m - n + 1) m!)
    const int nm1 = n - 1;
    std::complex<double> result = nm1 != 0 ? std::complex<double>(1.0 / nm1) : -std::log(z) - kEuler;
    std::complex<double> fact = 1.0;
    for (int m = 1; m < 400; ++m) {
        fact *= -z / static_cast<double>(m);
        std::complex<double> del;
        if (m != nm1) {
            del = -fact / static_cast<double>(m - nm1);
        } else {
            double psi = -kEuler;
            for (int k = 1; k <= nm1; ++k) psi += 1.0 / k;
            del = fact * (-std::log(z) + psi);
        }
        result += del;
        if (std::abs(del) < std::abs(result) * kEps) break;
    }
    return result;
}

std::complex<double> expint_fraction(int n, std::complex<double> z) {
    // Modified Lentz evaluation of the continued fraction for E_n(z).
    const double tiny = 1e-300;
    std::complex<double> b = z + static_cast<double>(n);
    std::complex<double> c = 1.0 / tiny;
    std::complex<double> d = 1.0 / b;
    std::complex<double> h = d;
    for (int i = 1; i < 100000; ++i) {
        double an = -static_cast<double>(i) * (n - 1 + i);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        std::complex<double> del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < kEps) return h * std::exp(-z);
    }
    throw std::runtime_error("expint continued fraction did not converge");
}

}  // namespace

std::complex<double> expint_n(int n, std::complex<double> z) {
    if (n < 0) throw std::invalid_argument("expint_n needs n >= 0");
    if (z == 0.0) {
        if (n <= 1) throw std::domain_error("expint_n diverges at z = 0 for n <= 1");
        return 1.0 / (n - 1.0);
    }
    if (n == 0) return std::exp(-z) / z;
    if (std::abs(z) > 1.0) return expint_fraction(n, z);
    return expint_series(n, z);
}

std::complex<double> oscillatory_tail(int n, double a, double omega) {
    // Substituting u = omega s: omega^{1-n} E_n(i a omega).
    if (a == 0.0) {
        if (n <= 1) throw std::domain_error("non-oscillatory tail diverges for n <= 1");
        return std::pow(omega, 1.0 - n) / (n - 1.0);
    }
    return std::pow(omega, 1.0 - n) * expint_n(n, std::complex<double>(0.0, a * omega));
}

}  // namespace splitnorm

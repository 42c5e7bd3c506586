#pragma once

#include <complex>

namespace splitnorm {

// Generalized exponential integral E_n(z) = int_1^inf e^{-z s} s^{-n} ds for Re z >= 0, z != 0 when n <= 1.
std::complex<double> expint_n(int n, std::complex<double> z);

// int_Omega^inf e^{-i a u} u^{-n} du for Omega > 0, n >= 2 (n = 1 allowed when a != 0).
std::complex<double> oscillatory_tail(int n, double a, double omega);

}  // namespace splitnorm

#pragma once

#include <cmath>

#include "swanson/jet.hpp"

namespace swanson::specialfn {

/// Gamma function. Throws Errc::pole at non-positive integers.
double gamma_fn(double x);

/// 1/Gamma(x), which is entire: returns 0 at the poles of Gamma.
double reciprocal_gamma(double x);

/// Rising factorial (s)_n = s (s+1) ... (s+n-1), computed as a product.
double pochhammer(double s, int n);

double factorial(int n);

/// Terminating confluent hypergeometric series 1F1(-n; gamma; y) with the
/// running-term recurrence t_{k+1} = t_k (k-n) y / ((gamma+k)(k+1)).
template <class T>
T kummer(int n, double gamma, const T& y) {
    T term = y * 0.0 + 1.0;
    T sum = term;
    for (int k = 0; k < n; ++k) {
        term = term * y * ((k - n) / ((gamma + k) * (k + 1.0)));
        sum = sum + term;
    }
    return sum;
}

/// Associated Laguerre polynomial L_n^beta(t) by the three-term recurrence.
template <class T>
T laguerre(int n, double beta, const T& t) {
    T prev = t * 0.0 + 1.0;
    if (n == 0) return prev;
    T cur = (beta + 1.0) - t;
    for (int k = 2; k <= n; ++k) {
        T next = ((2.0 * k - 1.0 + beta - t) * cur - (k - 1.0 + beta) * prev) / double(k);
        prev = cur;
        cur = next;
    }
    return cur;
}

/// Gauss 2F1(a, b; c; 1) by the Chu-Vandermonde Gamma quotient
/// Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b)). Poles in the numerator
/// throw Errc::pole; poles in the denominator give 0.
double gauss2f1_unit(double a, double b, double c);

} // namespace swanson::specialfn

#include "swanson/specialfn.hpp"

#include <cmath>
#include <sstream>

#include "swanson/error.hpp"

namespace swanson::specialfn {
namespace {

bool is_nonpositive_integer(double x) {
    return x <= 0.0 && std::nearbyint(x) == x;
}

} // namespace

double gamma_fn(double x) {
    if (is_nonpositive_integer(x)) {
        std::ostringstream os;
        os << "gamma_fn: pole at non-positive integer " << x;
        fail(Errc::pole, os.str());
    }
    return std::tgamma(x);
}

double reciprocal_gamma(double x) {
    if (is_nonpositive_integer(x)) return 0.0;
    return 1.0 / std::tgamma(x);
}

double pochhammer(double s, int n) {
    double p = 1.0;
    for (int k = 0; k < n; ++k) p *= s + k;
    return p;
}

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

double gauss2f1_unit(double a, double b, double c) {
    if (is_nonpositive_integer(c) || is_nonpositive_integer(c - a - b)) {
        std::ostringstream os;
        os << "gauss2f1_unit: pole configuration (c=" << c << ", c-a-b=" << c - a - b << ")";
        fail(Errc::pole, os.str());
    }
    return std::tgamma(c) * std::tgamma(c - a - b) * reciprocal_gamma(c - a) *
           reciprocal_gamma(c - b);
}

} // namespace swanson::specialfn

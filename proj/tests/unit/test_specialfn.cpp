#include "doctest.h"

#include <cmath>

#include "fixtures.hpp"
#include "swanson/specialfn.hpp"

namespace sf = swanson::specialfn;
using swanson::Jet;

TEST_SUITE("specialfn") {

TEST_CASE("gamma at classical points") {
    CHECK(sf::gamma_fn(1.0) == 1.0);
    CHECK(sf::gamma_fn(0.5) == doctest::Approx(1.7724538509055160).epsilon(1e-14));
    CHECK(sf::gamma_fn(2.5) == doctest::Approx(1.5 * 0.5 * std::sqrt(M_PI)).epsilon(1e-14));
    CHECK(sf::gamma_fn(6.0) == doctest::Approx(120.0).epsilon(1e-14));
}

TEST_CASE("gamma poles") {
    CHECK_THROWS_AS(sf::gamma_fn(0.0), swanson::Error);
    CHECK_THROWS_AS(sf::gamma_fn(-3.0), swanson::Error);
    CHECK(sf::reciprocal_gamma(-2.0) == 0.0);
}

TEST_CASE("pochhammer") {
    CHECK(sf::pochhammer(3.7, 0) == 1.0);
    CHECK(sf::pochhammer(2.5, 2) == doctest::Approx(8.75));
    CHECK(sf::pochhammer(-3.0, 5) == 0.0);
    CHECK(sf::pochhammer(2.5, 3) ==
          doctest::Approx(sf::gamma_fn(5.5) / sf::gamma_fn(2.5)).epsilon(1e-13));
}

TEST_CASE("pochhammer of a negative integer truncates") {
    for (int k = 0; k <= 8; ++k)
        for (int n = 0; n <= 10; ++n) {
            const double expect =
                n <= k ? std::pow(-1.0, n) * sf::factorial(k) / sf::factorial(k - n) : 0.0;
            CHECK(sf::pochhammer(-k, n) == doctest::Approx(expect));
        }
}

TEST_CASE("kummer examples") {
    CHECK(sf::kummer(0, 2.5, 7.0) == 1.0);
    CHECK(sf::kummer(1, 2.5, 2.5) == doctest::Approx(0.0));
    CHECK(sf::kummer(2, 2.5, 1.0) == doctest::Approx(1.0 - 2.0 / 2.5 + 2.0 / (2.5 * 3.5 * 2.0)));
    CHECK(sf::kummer(4, 1.3, 0.0) == 1.0);
}

TEST_CASE("laguerre examples") {
    CHECK(sf::laguerre(0, 0.7, 3.0) == 1.0);
    CHECK(sf::laguerre(1, 0.7, 3.0) == doctest::Approx(1.7 - 3.0));
    CHECK(sf::laguerre(3, 1.5, 2.0) ==
          doctest::Approx(sf::pochhammer(2.5, 3) / 6.0 * sf::kummer(3, 2.5, 2.0)).epsilon(1e-13));
}

TEST_CASE("laguerre-kummer relation over random cases") {
    fixtures::Draw u(78);
    for (int i = 0; i < 300; ++i) {
        const int n = u.integer(0, 12);
        const double b = u(-0.9, 8.0), t = u(0.0, 20.0);
        const double lhs = sf::laguerre(n, b, t);
        const double pre = sf::pochhammer(b + 1.0, n) / sf::factorial(n);
        const double rhs = pre * sf::kummer(n, b + 1.0, t);
        // the alternating sum loses digits to cancellation; scale by its absolute terms
        const double scale = std::abs(pre) * sf::kummer(n, b + 1.0, -t);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, scale));
    }
}

TEST_CASE("laguerre derivative and index identities") {
    fixtures::Draw u(86);
    for (int i = 0; i < 300; ++i) {
        const int n = u.integer(1, 10);
        const double b = u(-0.9, 8.0), t = u(0.0, 20.0);
        const Jet lj = sf::laguerre(n, b, Jet::variable(t, 1));
        const double down = sf::laguerre(n - 1, b + 1.0, t);
        CHECK(std::abs(lj.derivative(1) + down) <= 1e-10 * std::max(1.0, std::abs(down)));
        const double sum = sf::laguerre(n - 1, b, t) + sf::laguerre(n, b - 1.0, t);
        CHECK(std::abs(lj.value() - sum) <= 1e-10 * std::max(1.0, std::abs(sum)));
    }
}

TEST_CASE("Chu-Vandermonde") {
    CHECK(sf::gauss2f1_unit(0.0, 1.7, 3.2) == doctest::Approx(1.0));
    CHECK(sf::gauss2f1_unit(-1.0, 1.0, 2.0) == doctest::Approx(0.5));
    // terminating series at a = -2
    const double g = 2.5;
    const double a = -2.0, b = g + 1.0, c = g;
    double series = 0.0, term = 1.0;
    for (int k = 0; k <= 2; ++k) {
        series += term;
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0));
    }
    CHECK(std::abs(sf::gauss2f1_unit(a, b, c) - series) <= 1e-12);
}

}

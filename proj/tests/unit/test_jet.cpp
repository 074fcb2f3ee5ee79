#include "doctest.h"

#include <cmath>

#include "fixtures.hpp"
#include "swanson/jet.hpp"

using swanson::Jet;

TEST_SUITE("jet") {

TEST_CASE("polynomial derivatives are exact") {
    const Jet x = Jet::variable(2.0, 4);
    const Jet p = x * x * x - 3.0 * x + 1.0;
    CHECK(p.value() == doctest::Approx(3.0));
    CHECK(p.derivative(1) == doctest::Approx(9.0));
    CHECK(p.derivative(2) == doctest::Approx(12.0));
    CHECK(p.derivative(3) == doctest::Approx(6.0));
    CHECK(p.derivative(4) == 0.0);
}

TEST_CASE("quotient, exp, log and pow agree with closed forms") {
    const double x0 = 0.7;
    const Jet x = Jet::variable(x0, 3);
    const Jet q = 1.0 / (x * x + 2.0);
    const double den = x0 * x0 + 2.0;
    CHECK(q.derivative(1) == doctest::Approx(-2.0 * x0 / (den * den)));
    CHECK(q.derivative(2) == doctest::Approx((6.0 * x0 * x0 - 4.0) / (den * den * den)));

    const Jet e = exp(-x * x);
    CHECK(e.derivative(2) == doctest::Approx((4.0 * x0 * x0 - 2.0) * std::exp(-x0 * x0)));

    const Jet l = log(x);
    CHECK(l.derivative(3) == doctest::Approx(2.0 / (x0 * x0 * x0)));

    const Jet p = pow(x, 2.5);
    CHECK(p.derivative(2) == doctest::Approx(2.5 * 1.5 * std::pow(x0, 0.5)));
    CHECK(sqrt(x).value() == doctest::Approx(std::sqrt(x0)));
}

TEST_CASE("mixed orders truncate to the smaller one") {
    const Jet a = Jet::variable(1.0, 4);
    const Jet b = Jet::variable(1.0, 2);
    CHECK((a * b).order() == 2);
    CHECK((a + b).order() == 2);
}

TEST_CASE("differentiation lowers order") {
    const Jet x = Jet::variable(1.5, 3);
    const Jet f = x * x * x;
    const Jet g = f.differentiated();
    CHECK(g.order() == 2);
    CHECK(g.value() == doctest::Approx(3.0 * 1.5 * 1.5));
    CHECK(g.derivative(1) == doctest::Approx(6.0 * 1.5));
}

TEST_CASE("jets match central finite differences") {
    fixtures::Draw u(11);
    for (int trial = 0; trial < 20; ++trial) {
        const double x0 = u(0.3, 3.0);
        auto f = [](auto x) { return exp(0.3 * x) / (x * x + 1.0); };
        const Jet j = f(Jet::variable(x0, 3));
        auto fd = [&](double h) {
            auto v = [&](double t) { return f(Jet(t)).value(); };
            return (v(x0 + h) - v(x0 - h)) / (2.0 * h);
        };
        // Richardson on the step
        const double d1 = (4.0 * fd(1e-5 / 2) - fd(1e-5)) / 3.0;
        CHECK(std::abs(d1 - j.derivative(1)) <= 1e-7 * std::max(1.0, std::abs(j.derivative(1))));
    }
}

TEST_CASE("orders outside the supported range throw") {
    CHECK_THROWS_AS(Jet::variable(1.0, swanson::kMaxJetOrder + 1), swanson::Error);
    CHECK_THROWS_AS(Jet(1.0, -1), swanson::Error);
}

}

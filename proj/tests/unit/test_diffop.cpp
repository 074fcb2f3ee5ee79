#include "doctest.h"

#include <cmath>

#include "fixtures.hpp"
#include "swanson/diffop.hpp"

using namespace swanson;
using namespace swanson::diffop;

namespace {

LinDiffOp x_times() {
    return LinDiffOp::from_coeffs({CoeffFn::from_generic([](const Jet& x) { return x; })});
}

const auto kPoints = generic_sample_points(20);

} // namespace

TEST_SUITE("diffop") {

TEST_CASE("Leibniz composition") {
    const auto dx = compose(LinDiffOp::derivative(), x_times());
    REQUIRE(dx.order() == 1);
    const auto v = dx.values(1.7);
    CHECK(v[0] == doctest::Approx(1.0));
    CHECK(v[1] == doctest::Approx(1.7));

    const auto xd = compose(x_times(), LinDiffOp::derivative());
    const auto sq = compose(xd, xd);
    const auto w = sq.values(-0.8);
    CHECK(w[0] == doctest::Approx(0.0));
    CHECK(w[1] == doctest::Approx(-0.8));
    CHECK(w[2] == doctest::Approx(0.64));
}

TEST_CASE("composition budget") {
    const auto d2 = compose(LinDiffOp::derivative(), LinDiffOp::derivative());
    const auto d4 = compose(d2, d2);
    CHECK(d4.order() == 4);
    CHECK_THROWS_AS(compose(d4, LinDiffOp::derivative()), Error);
}

TEST_CASE("adjoint of a first-order operator") {
    const auto a = CoeffFn::from_generic([](const Jet& x) { return x * x + 1.0; });
    const auto b = CoeffFn::from_generic([](const Jet& x) { return exp(0.2 * x); });
    const auto t = LinDiffOp::from_coeffs({b, a});
    const auto adj = formal_adjoint(t);
    for (double x : kPoints) {
        const auto v = adj.values(x);
        CHECK(v[1] == doctest::Approx(-(x * x + 1.0)));
        CHECK(v[0] == doctest::Approx(std::exp(0.2 * x) - 2.0 * x));
    }
    CHECK(residual(formal_adjoint(adj), t, kPoints) <= 1e-13);
}

TEST_CASE("kinetic term is formally self-adjoint") {
    const Model m = Model::forward(fixtures::pstar());
    const auto k = build(OpKind::kinetic, m);
    CHECK(residual(formal_adjoint(k), k, kPoints) <= 1e-13);
}

TEST_CASE("conjugation") {
    const auto lr = CoeffFn::from_generic([](const Jet& x) { return 0.3 * x * x; });
    const auto c = conjugate(LinDiffOp::derivative(), lr, +1);
    for (double x : kPoints) {
        const auto v = c.values(x);
        CHECK(v[0] == doctest::Approx(-0.3 * x * x));
        CHECK(v[1] == doctest::Approx(1.0));
    }
    const Model m = fixtures::forward_models(1, 3).front();
    const auto h = build(OpKind::h_plus, m);
    const auto back = conjugate(conjugate(h, dlog_rho_fn(m), +1), dlog_rho_fn(m), -1);
    CHECK(residual(back, h, kPoints) <= 1e-10);
}

TEST_CASE("reference operator coefficients") {
    const Model m = Model::forward(fixtures::pstar());
    const auto a = build(OpKind::A, m).values(-1.0);
    CHECK(a[0] == doctest::Approx(4.5));
    CHECK(a[1] == doctest::Approx(1.0));
    const auto h = build(OpKind::h_minus, m).values(-1.0);
    CHECK(h[0] == doctest::Approx(27.75));
    CHECK(h[1] == doctest::Approx(4.0));
    CHECK(h[2] == doctest::Approx(-1.0));
}

TEST_CASE("apply matches the Sturm-Liouville form") {
    const Model m = Model::forward(fixtures::pstar());
    const auto f = CoeffFn::from_generic([](const Jet& x) { return exp(-0.25 * (x * x)); });
    const auto h = compose(build(OpKind::A_dag, m), build(OpKind::A, m));
    const double x = -1.0;
    const Jet fj = f(x, 2);
    // -wb (a^2 f')' + V f with a = x^2
    const double direct = -(4.0 * x * x * x * fj.derivative(1) + x * x * x * x * fj.derivative(2)) +
                          27.75 * fj.value();
    CHECK(apply(h, f, x, 0).value() == doctest::Approx(direct));
}

TEST_CASE("factorization and intertwining over random forward sets") {
    for (const auto& m : fixtures::forward_models(8, 99)) {
        const auto A = build(OpKind::A, m), Ad = build(OpKind::A_dag, m);
        const auto hm = build(OpKind::h_minus, m), hp = build(OpKind::h_plus, m);
        CHECK(residual(hm, compose(Ad, A), kPoints) <= 1e-10);
        CHECK(residual(hp, compose(A, Ad), kPoints) <= 1e-10);
        CHECK(residual(compose(hm, Ad), compose(Ad, hp), kPoints) <= 1e-9);
        CHECK(residual(compose(hp, A), compose(A, hm), kPoints) <= 1e-9);
        const auto eta = build(OpKind::eta1_constructed, m);
        CHECK(residual(eta, conjugate(A, dlog_rho_fn(m), -1), kPoints) <= 1e-10);
        const auto Hm = build(OpKind::H_minus_factorized, m), Hp = build(OpKind::H_plus, m);
        CHECK(residual(compose(eta, Hm), compose(Hp, eta), kPoints) <= 1e-9);
        CHECK(residual(Hp, conjugate(hp, dlog_rho_fn(m), -1), kPoints) <= 1e-9);
        CHECK(residual(Hm, conjugate(hm, dlog_rho_fn(m), -1), kPoints) <= 1e-9);
        const auto eta2 = build(OpKind::eta2_constructed, m);
        CHECK(residual(compose(eta2, Hp), compose(Hm, eta2), kPoints) <= 1e-9);
        CHECK(residual(formal_adjoint(A), Ad, kPoints) <= 1e-12);
    }
}

TEST_CASE("quadratic Hamiltonian expansion") {
    for (const auto& m : fixtures::forward_models(5, 12)) {
        CHECK(residual(build(OpKind::swanson_product, m), build(OpKind::H_minus, m), kPoints) <= 1e-10);
        const auto conj = conjugate(build(OpKind::H_minus, m), dlog_rho_fn(m), +1);
        CHECK(coeff_residual(conj, build(OpKind::kinetic, m), 1, kPoints) <= 1e-10);
        CHECK(coeff_residual(conj, build(OpKind::kinetic, m), 2, kPoints) <= 1e-12);
    }
}

TEST_CASE("z-gauge factorization") {
    for (const auto& m : fixtures::forward_models(5, 13)) {
        std::vector<double> zs;
        for (double x : kPoints) zs.push_back(std::abs(x));
        const auto At = build(OpKind::Atilde, m), Atd = build(OpKind::Atilde_dag, m);
        CHECK(residual(build(OpKind::h_tilde_minus, m), compose(Atd, At), zs) <= 1e-10);
        CHECK(residual(build(OpKind::h_tilde_plus, m), compose(At, Atd), zs) <= 1e-10);
        // the printed lowering operator lacks a 1/z term
        const auto printed = build(OpKind::Atilde_dag_printed, m);
        for (double z : zs) CHECK(Atd.values(z)[0] - printed.values(z)[0] == doctest::Approx(1.0 / z));
    }
}

TEST_CASE("hermitian limit") {
    const Model m = Model::with_gauge(fixtures::pstar(), 0.3, 0.3, -2.0);
    CHECK(residual(build(OpKind::eta1_constructed, m), build(OpKind::A, m), kPoints) == 0.0);
}

TEST_CASE("printed intertwiner") {
    for (const auto& m : fixtures::forward_models(5, 14)) {
        const double r = residual(build(OpKind::eta1_explicit, m), build(OpKind::eta1_constructed, m), kPoints);
        CHECK(r <= 1e-10);
    }
}

TEST_CASE("delta inference") {
    for (const auto& m : fixtures::forward_models(5, 15)) {
        const auto fit0 = infer_delta(m, kPoints);
        CHECK(std::abs(fit0.delta) <= 1e-10);
        CHECK(fit0.fit_residual <= 1e-10);
        CHECK_FALSE(fit0.degenerate);

        const double delta0 = 0.37;
        Model injected = m;
        injected.swanson->delta_gauge = delta0;
        const auto conj = conjugate(build(OpKind::H_minus, injected), dlog_rho_fn(injected), +1);
        const auto fit = infer_delta(m, kPoints, conj.coeff(0));
        CHECK(std::abs(fit.delta - delta0) <= 1e-8);
        CHECK(fit.fit_residual <= 1e-10);
    }
}

TEST_CASE("inverse-mode identities") {
    for (const auto& m : fixtures::inverse_models()) {
        const auto A = build(OpKind::A, m), Ad = build(OpKind::A_dag, m);
        const auto eta = build(OpKind::eta1_constructed, m);
        CHECK(residual(build(OpKind::h_minus, m), compose(Ad, A), kPoints) <= 1e-10);
        CHECK(residual(compose(eta, build(OpKind::H_minus_factorized, m)),
                       compose(build(OpKind::H_plus, m), eta), kPoints) <= 1e-9);
    }
}

TEST_CASE("sample points avoid the origin") {
    const auto pts = generic_sample_points(200, 3);
    for (double x : pts) {
        CHECK(std::abs(x) >= 0.3);
        CHECK(std::abs(x) <= 5.0);
    }
    CHECK(generic_sample_points(10, 3) == generic_sample_points(10, 3));
    for (double x : generic_sample_points(10, 3, true)) CHECK(x < 0.0);
}

}

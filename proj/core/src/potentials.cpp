#include "swanson/potentials.hpp"

#include <cmath>
#include <sstream>

#include "swanson/error.hpp"
#include "swanson/numeric.hpp"

namespace swanson {

Model Model::with_gauge(FactorizationParams fp, double alpha, double beta, double c,
                        double delta_gauge) {
    fp.c = c;
    ModelParams mp{fp.omega_bar + alpha + beta, alpha, beta, delta_gauge};
    return Model{fp, mp};
}

Model Model::inverse(const FactorizationParams& fp, const ModelParams& mp) {
    if (!fp.c) fail(Errc::mode_error, "inverse model requires c");
    return Model{fp, mp};
}

const ModelParams& Model::gauge() const {
    if (!has_gauge())
        fail(Errc::mode_error,
             "operation needs omega, alpha, beta and c (inverse mode or an attached gauge)");
    const double wb = swanson->omega_bar();
    if (std::abs(wb - fp.omega_bar) > 1e-12 * std::max(1.0, fp.omega_bar))
        fail(Errc::mode_error, "gauge omega - alpha - beta differs from omega_bar");
    return *swanson;
}

namespace potentials {
namespace {

void require_nonzero(double x, const char* what) {
    if (x == 0.0) {
        std::ostringstream os;
        os << what << ": undefined at 0";
        fail(Errc::domain_error, os.str());
    }
}

struct Derivs {
    Jet f, f1, f2;
};

// Jets of g, g', g'' at order `order` from a single evaluation at order+2.
template <class G>
Derivs derivs(G g, double x, int order) {
    const Jet full = g(Jet::variable(x, order + 2));
    return {full.truncated(order), full.differentiated().truncated(order),
            full.differentiated(2).truncated(order)};
}

Jet operator_product(Side side, double x, int order, const FactorizationParams& fp) {
    const double s = fp.sqrt_omega_bar();
    const double wb = fp.omega_bar;
    const auto bt = derivs([&](const Jet& X) { return btilde(X, fp); }, x, order);
    const auto a = derivs([](const Jet& X) { return X * X; }, x, order);
    if (side == Side::minus) {
        // b~^2 - sqrt(wb) (a b~)'
        return bt.f * bt.f - s * (a.f1 * bt.f + a.f * bt.f1);
    }
    // b~^2 + sqrt(wb)(a b~' - a' b~) - wb a a''
    return bt.f * bt.f + s * (a.f * bt.f1 - a.f1 * bt.f) - wb * a.f * a.f2;
}

Jet printed_x(PotentialFormId id, const Jet& X, const Model& m) {
    const auto& fp = m.fp;
    const double s = fp.sqrt_omega_bar();
    const double wb = fp.omega_bar;
    const double mu = fp.mu, lam = fp.lambda, rho = fp.rho_q, d = fp.d;
    const Jet X2 = X * X;
    const Jet pole = X2 + d;
    const Jet pole2 = pole * pole;

    switch (id.form) {
    case Form::expanded_general:
        if (id.side == Side::minus) {
            const auto& mp = m.gauge();
            const DerivedConstants dc = derive_constants(mp);
            const double c = *fp.c;
            const Jet b = b_ansatz(X, c, d);
            const Jet bp = -1.0 / X2 + c * (d - X2) / pole2;
            return dc.a1 * b * (b - 2.0 * X) - dc.a2 * X2 * bp + dc.a3 * 2.0 * X2 +
                   dc.a4 * 4.0 * X2 + dc.a5;
        } else {
            const Jet full = btilde(Jet::variable(X.value(), X.order() + 2), fp);
            const Jet bt = full.truncated(X.order());
            const Jet btpp = full.differentiated(2).truncated(X.order());
            return bt * bt + s * (-s * X2 * 2.0 + X2 * btpp - bt * 2.0);
        }
    case Form::ansatz_expanded: {
        if (id.side == Side::plus)
            fail(Errc::mode_error, "no printed plus-side form in the a,b ansatz");
        const auto& mp = m.gauge();
        const DerivedConstants dc = derive_constants(mp);
        const double c = *fp.c;
        const double a1 = dc.a1, a2 = dc.a2;
        return a1 / X2 + 2.0 * (dc.a3 + 2.0 * dc.a4) * X2 + (-2.0 * a1 + a2) * (c + 1.0) + dc.a5 +
               c * ((2.0 * a1 + a1 * c + 2.0 * a1 * d - 3.0 * a2 * d) * X2 + 2.0 * a1 * (1.0 + d) -
                    a2 * d) /
                   pole2;
    }
    case Form::matched:
        if (id.side == Side::minus)
            return mu * mu / X2 + rho * (rho + 3.0 * s) * X2 - mu * (2.0 * rho + s) +
                   lam *
                       (-(2.0 * rho + s) * X2 * X2 +
                        (-3.0 * d * s + lam + 2.0 * mu - 2.0 * d * rho) * X2 + 2.0 * d * mu) /
                       pole2;
        return mu * mu / X2 + (rho * rho + rho * s - 2.0 * wb) * X2 - mu * (2.0 * rho + 3.0 * s) +
               lam *
                   (-(2.0 * rho + 3.0 * s) * X2 * X2 +
                    (lam + 2.0 * mu - 2.0 * d * rho - d * s + 2.0 * d * mu) * X2 + 2.0 * d * mu) /
                   pole2;
    case Form::simplified:
        if (id.side == Side::minus)
            return mu * mu / X2 + rho * (rho + 3.0 * s) * X2 - (mu + lam) * (s + 2.0 * rho) +
                   lam *
                       ((2.0 * rho * d + 2.0 * mu + lam - d * s) * X2 +
                        d * (2.0 * mu + d * s + 2.0 * rho * d)) /
                       pole2;
        return mu * mu / X2 + rho * (rho + s - 2.0 * wb) * X2 - (mu + lam) * (3.0 * s + 2.0 * rho) +
               lam *
                   ((2.0 * rho * d + 2.0 * mu + lam + 5.0 * d * s) * X2 +
                    d * (2.0 * mu + 3.0 * d * s + 2.0 * rho * d)) /
                   pole2;
    case Form::reduced:
        if (id.side == Side::minus)
            return mu * mu / X2 + rho * (rho + 3.0 * s) * X2 +
                   2.0 * d * (rho + 3.5 * s) * (rho + 0.5 * s) +
                   4.0 * wb * d * d * (3.0 * X2 + d) / pole2;
        return mu * mu / X2 + (rho * rho + rho * s - 2.0 * wb) * X2 +
               2.0 * d * (rho + 3.5 * s) * (rho + 1.5 * s);
    case Form::operator_product:
    case Form::transformed_printed:
    case Form::z_canonical:
        break;
    }
    fail(Errc::mode_error, std::string("form ") + to_string(id.form) + " is not an x-variable form");
}

} // namespace

const char* to_string(Side side) { return side == Side::plus ? "plus" : "minus"; }

const char* to_string(Form form) {
    switch (form) {
    case Form::operator_product: return "operator_product";
    case Form::expanded_general: return "expanded_general";
    case Form::ansatz_expanded: return "ansatz_expanded";
    case Form::matched: return "matched";
    case Form::simplified: return "simplified";
    case Form::reduced: return "reduced";
    case Form::transformed_printed: return "transformed_printed";
    case Form::z_canonical: return "z_canonical";
    }
    return "unknown";
}

double coord_z(double x, double omega_bar) {
    require_nonzero(x, "coord_z");
    return -1.0 / (std::sqrt(omega_bar) * x);
}

double coord_x(double z, double omega_bar) {
    require_nonzero(z, "coord_x");
    return -1.0 / (std::sqrt(omega_bar) * z);
}

Jet b1_jet(double x, int order, const Model& m) {
    const auto& mp = m.gauge();
    const Jet X = Jet::variable(x, order);
    const Jet b = b_ansatz(X, *m.fp.c, m.fp.d);
    return (mp.alpha - mp.beta) * X * X * (2.0 * b - 2.0 * X);
}

Jet dlog_rho_jet(double x, int order, const Model& m) {
    require_nonzero(x, "dlog_rho");
    const Jet X = Jet::variable(x, order);
    const Jet a = X * X;
    return -b1_jet(x, order, m) / (2.0 * m.fp.omega_bar * a * a);
}

Jet c1_jet(double x, int order, const Model& m) {
    require_nonzero(x, "c1");
    const auto& mp = m.gauge();
    const double c = *m.fp.c;
    const double d = m.fp.d;
    const Jet X = Jet::variable(x, order);
    const Jet X2 = X * X;
    const Jet b = b_ansatz(X, c, d);
    const Jet bp = -1.0 / X2 + c * (d - X2) / ((X2 + d) * (X2 + d));
    const double w = mp.omega, al = mp.alpha, be = mp.beta;
    // a = x^2: a' = 2x, a'' = 2, so a a'' + a'^2 = 6x^2.
    return (w + al + be) * b * b - (w + 2.0 * be) * 2.0 * X * b - (w - al + be) * X2 * bp +
           be * 6.0 * X2 - mp.delta_gauge * 2.0 * X + w / 2.0;
}

double log_rho(double x, const Model& m, double x0) {
    require_nonzero(x, "log_rho");
    if ((x < 0.0) != (x0 < 0.0) || x0 == 0.0)
        fail(Errc::domain_error, "log_rho: reference point must lie on the same branch as x");
    const auto integrand = [&](double y) { return dlog_rho_jet(y, 0, m).value(); };
    return numeric::quad_interval(integrand, x0, x, 1e-13);
}

PointFunctions point_functions(double x, const Model& m) {
    require_nonzero(x, "point_functions");
    PointFunctions pf;
    pf.a = x * x;
    pf.a_prime = 2.0 * x;
    pf.b_tilde = btilde(x, m.fp);
    pf.w = superpotential_w(x, m.fp);
    if (m.has_gauge()) {
        pf.b = b_ansatz(x, *m.fp.c, m.fp.d);
        pf.b1 = b1_jet(x, 0, m).value();
        pf.c1 = c1_jet(x, 0, m).value();
        pf.log_rho = log_rho(x, m, x < 0.0 ? -1.0 : 1.0);
    }
    return pf;
}

double unit_commutator_b(double x, const CoeffFn& a, double x0) {
    const double a_prime = a(x, 1).derivative(1);
    const auto integrand = [&](double y) {
        const double v = a.value(y);
        if (v == 0.0) fail(Errc::singular_integrand, "unit_commutator_b: a(y) vanishes on the path");
        return 1.0 / v;
    };
    // A sign change of a(y) along the path means the integrand blows up.
    const double a0 = a.value(x0);
    const int probes = 64;
    for (int i = 0; i <= probes; ++i) {
        const double y = x0 + (x - x0) * i / probes;
        const double v = a.value(y);
        if (v == 0.0 || (v < 0.0) != (a0 < 0.0))
            fail(Errc::singular_integrand, "unit_commutator_b: a(y) vanishes on the path");
    }
    double integral = 0.0;
    try {
        integral = numeric::quad_interval(integrand, x0, x, 1e-13);
    } catch (const Error& e) {
        if (e.code() == Errc::non_convergent)
            fail(Errc::singular_integrand, std::string("unit_commutator_b: ") + e.what());
        throw;
    }
    return a_prime / 2.0 + integral / 2.0;
}

Jet potential_jet(PotentialFormId id, double x, int order, const Model& m) {
    require_nonzero(x, "potential");
    if (id.form == Form::operator_product) return operator_product(id.side, x, order, m.fp);
    return printed_x(id, Jet::variable(x, order), m);
}

double eval_potential(PotentialFormId id, double x, const Model& m) {
    return potential_jet(id, x, 0, m).value();
}

Jet w_of_z_jet(double z, int order, const FactorizationParams& fp) {
    const Jet Z = Jet::variable(z, order);
    return superpotential_w(x_of_z(Z, fp.omega_bar), fp);
}

Jet potential_z_jet(Side side, Form form, double z, int order, const Model& m) {
    require_nonzero(z, "z potential");
    const auto& fp = m.fp;
    if (form == Form::z_canonical) {
        const Jet w = w_of_z_jet(z, order + 1, fp);
        const Jet wz = w.differentiated();
        const Jet w0 = w.truncated(order);
        return side == Side::plus ? w0 * w0 + wz : w0 * w0 - wz;
    }
    if (form != Form::transformed_printed)
        fail(Errc::mode_error, std::string("form ") + to_string(form) + " is not a z-variable form");
    const double s = fp.sqrt_omega_bar();
    const double wb = fp.omega_bar;
    const double mu = fp.mu, rho = fp.rho_q, d = fp.d;
    const Jet Z = Jet::variable(z, order);
    const Jet Z2 = Z * Z;
    if (side == Side::plus)
        return mu * mu * wb * Z2 + ((rho * rho + s * rho) / wb) / Z2 +
               2.0 * d * (rho + 3.5 * s) * (rho + 1.5 * s);
    const Jet den = d * wb * Z2 + 1.0;
    return mu * mu * wb * Z2 + ((rho * rho + 3.0 * s * rho + 2.0 * wb) / wb) / Z2 +
           2.0 * d * (rho + 3.5 * s) * (rho + 0.5 * s) + 4.0 * wb * d +
           4.0 * wb * d * (2.0 * d * wb * Z2 - 1.0) / (den * den);
}

double eval_potential_z(Side side, Form form, double z, const Model& m) {
    return potential_z_jet(side, form, z, 0, m).value();
}

} // namespace potentials
} // namespace swanson

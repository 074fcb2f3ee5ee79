#include "swanson/diffop.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <utility>

#include "swanson/error.hpp"

namespace swanson {

LinDiffOp::LinDiffOp(int order, Evaluator eval) : order_(order), eval_(std::move(eval)) {
    if (order < 0) fail(Errc::invalid_parameter, "operator order must be >= 0");
}

LinDiffOp LinDiffOp::from_coeffs(std::vector<CoeffFn> coeffs) {
    if (coeffs.empty()) coeffs.emplace_back();
    const int k = static_cast<int>(coeffs.size()) - 1;
    return LinDiffOp(k, [coeffs = std::move(coeffs)](double x, int order) {
        std::vector<Jet> out;
        out.reserve(coeffs.size());
        for (const auto& c : coeffs) out.push_back(c(x, order));
        return out;
    });
}

LinDiffOp LinDiffOp::identity() { return from_coeffs({CoeffFn::constant(1.0)}); }

LinDiffOp LinDiffOp::derivative() {
    return from_coeffs({CoeffFn(), CoeffFn::constant(1.0)});
}

LinDiffOp LinDiffOp::multiplication(CoeffFn f) { return from_coeffs({std::move(f)}); }

std::vector<Jet> LinDiffOp::coeffs(double x, int jet_order) const {
    auto out = eval_(x, jet_order);
    out.resize(order_ + 1, Jet(0.0, jet_order));
    return out;
}

std::vector<double> LinDiffOp::values(double x) const {
    std::vector<double> v;
    for (const auto& j : coeffs(x, 0)) v.push_back(j.value());
    return v;
}

CoeffFn LinDiffOp::coeff(int i) const {
    if (i < 0 || i > order_) return CoeffFn();
    return CoeffFn([op = *this, i](double x, int order) { return op.coeffs(x, order)[i]; });
}

namespace diffop {
namespace {

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// One evaluation of every coefficient jet built from the seed X.
using XCoeffs = std::function<std::vector<Jet>(const Jet& x, int order)>;

LinDiffOp x_op(int k, XCoeffs f) {
    return LinDiffOp(k, [f = std::move(f)](double x, int order) {
        return f(Jet::variable(x, order), order);
    });
}

Jet potential_of(potentials::Side side, double x, int order, const Model& m) {
    return potentials::potential_jet({side, potentials::Form::operator_product}, x, order, m);
}

LinDiffOp hermitian(potentials::Side side, const Model& m) {
    const double wb = m.fp.omega_bar;
    return x_op(2, [m, wb, side](const Jet& X, int order) {
        const Jet X3 = X * X * X;
        return std::vector<Jet>{potential_of(side, X.value(), order, m), -4.0 * wb * X3, -wb * X3 * X};
    });
}

// rho^-1 h rho written out: b1 D + b1'/2 - b1^2/(4 wb a^2) on top of h.
LinDiffOp non_hermitian(potentials::Side side, const Model& m) {
    m.gauge();
    const double wb = m.fp.omega_bar;
    return x_op(2, [m, wb, side](const Jet& X, int order) {
        const double x = X.value();
        const Jet b1_full = potentials::b1_jet(x, order + 1, m);
        const Jet b1 = b1_full.truncated(order);
        const Jet b1p = b1_full.differentiated().truncated(order);
        const Jet X2 = X * X;
        const Jet X3 = X2 * X;
        const Jet c0 =
            potential_of(side, x, order, m) + 0.5 * b1p - b1 * b1 / (4.0 * wb * X2 * X2);
        return std::vector<Jet>{c0, -4.0 * wb * X3 + b1, -wb * X3 * X};
    });
}

LinDiffOp xi_op(const Model& m, bool dagger) {
    if (!m.fp.c) fail(Errc::mode_error, "xi needs the ansatz constant c");
    const double c = *m.fp.c, d = m.fp.d;
    return x_op(1, [c, d, dagger](const Jet& X, int) {
        const Jet b = potentials::b_ansatz(X, c, d);
        if (dagger) return std::vector<Jet>{b - 2.0 * X, -1.0 * (X * X)};
        return std::vector<Jet>{b, X * X};
    });
}

LinDiffOp z_op(int k, std::function<std::vector<Jet>(double z, int order)> f) {
    return LinDiffOp(k, [f = std::move(f)](double z, int order) {
        if (z == 0.0) fail(Errc::domain_error, "z-operator: undefined at z = 0");
        return f(z, order);
    });
}

} // namespace

LinDiffOp compose(const LinDiffOp& t, const LinDiffOp& s) {
    const int kt = t.order(), ks = s.order();
    if (kt + ks > kCompositionBudget)
        fail(Errc::jet_order_exceeded, "composition order " + std::to_string(kt + ks) +
                                           " exceeds budget " + std::to_string(kCompositionBudget));
    return LinDiffOp(kt + ks, [t, s, kt, ks](double x, int order) {
        const auto tc = t.coeffs(x, order);
        const auto sc = s.coeffs(x, order + kt);
        std::vector<Jet> r(kt + ks + 1, Jet(0.0, order));
        // t_i D^i (s_j D^j) = sum_l C(i,l) t_i s_j^(l) D^(i-l+j)
        for (int i = 0; i <= kt; ++i)
            for (int j = 0; j <= ks; ++j)
                for (int l = 0; l <= i; ++l)
                    r[i - l + j] += binomial(i, l) * tc[i] * sc[j].differentiated(l).truncated(order);
        return r;
    });
}

LinDiffOp add(const LinDiffOp& t, const LinDiffOp& s) {
    const int k = std::max(t.order(), s.order());
    return LinDiffOp(k, [t, s, k](double x, int order) {
        auto a = t.coeffs(x, order);
        const auto b = s.coeffs(x, order);
        a.resize(k + 1, Jet(0.0, order));
        for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
        return a;
    });
}

LinDiffOp scale(double k, const LinDiffOp& t) {
    return LinDiffOp(t.order(), [t, k](double x, int order) {
        auto a = t.coeffs(x, order);
        for (auto& j : a) j *= k;
        return a;
    });
}

LinDiffOp formal_adjoint(const LinDiffOp& t) {
    const int kt = t.order();
    return LinDiffOp(kt, [t, kt](double x, int order) {
        const auto c = t.coeffs(x, order + kt);
        std::vector<Jet> r(kt + 1, Jet(0.0, order));
        for (int m = 0; m <= kt; ++m)
            for (int k = m; k <= kt; ++k) {
                const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
                r[m] += sgn * binomial(k, m) * c[k].differentiated(k - m).truncated(order);
            }
        return r;
    });
}

LinDiffOp conjugate(const LinDiffOp& t, const CoeffFn& dlog_rho, int sign) {
    if (sign != 1 && sign != -1) fail(Errc::invalid_parameter, "conjugate: sign must be +1 or -1");
    // rho^s D rho^-s = D - s (log rho)'
    const double s = sign;
    const LinDiffOp shifted = LinDiffOp::from_coeffs(
        {CoeffFn([dlog_rho, s](double x, int order) { return -s * dlog_rho(x, order); }),
         CoeffFn::constant(1.0)});
    LinDiffOp power = LinDiffOp::identity();
    LinDiffOp result = compose(LinDiffOp::multiplication(t.coeff(0)), power);
    for (int i = 1; i <= t.order(); ++i) {
        power = compose(shifted, power);
        result = add(result, compose(LinDiffOp::multiplication(t.coeff(i)), power));
    }
    return result;
}

double coeff_residual(const LinDiffOp& t, const LinDiffOp& s, int i,
                      const std::vector<double>& points) {
    double worst = 0.0;
    for (double x : points) {
        const auto a = t.values(x);
        const auto b = s.values(x);
        const double ta = i < static_cast<int>(a.size()) ? a[i] : 0.0;
        const double sb = i < static_cast<int>(b.size()) ? b[i] : 0.0;
        worst = std::max(worst, std::abs(ta - sb) / std::max(1.0, std::abs(ta)));
    }
    return worst;
}

double residual(const LinDiffOp& t, const LinDiffOp& s, const std::vector<double>& points) {
    const int k = std::max(t.order(), s.order());
    double worst = 0.0;
    for (double x : points) {
        auto a = t.values(x);
        auto b = s.values(x);
        a.resize(k + 1, 0.0);
        b.resize(k + 1, 0.0);
        for (int i = 0; i <= k; ++i)
            worst = std::max(worst, std::abs(a[i] - b[i]) / std::max(1.0, std::abs(a[i])));
    }
    return worst;
}

Jet apply(const LinDiffOp& t, const CoeffFn& f, double x, int jet_order) {
    const auto c = t.coeffs(x, jet_order);
    const Jet fj = f(x, jet_order + t.order());
    Jet out(0.0, jet_order);
    for (int i = 0; i <= t.order(); ++i) out += c[i] * fj.differentiated(i).truncated(jet_order);
    return out;
}

std::vector<double> generic_sample_points(int count, std::uint64_t seed, bool negative_only) {
    std::mt19937_64 gen(seed);
    std::vector<double> pts;
    pts.reserve(count);
    for (int i = 0; i < count; ++i) {
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        const double mag = 0.3 + 4.7 * u;
        pts.push_back((negative_only || i % 2 == 0) ? -mag : mag);
    }
    return pts;
}

const char* to_string(OpKind kind) {
    switch (kind) {
    case OpKind::xi: return "xi";
    case OpKind::xi_dag: return "xi_dag";
    case OpKind::A: return "A";
    case OpKind::A_dag: return "A_dag";
    case OpKind::Atilde: return "Atilde";
    case OpKind::Atilde_dag: return "Atilde_dag";
    case OpKind::Atilde_dag_printed: return "Atilde_dag_printed";
    case OpKind::kinetic: return "kinetic";
    case OpKind::h_minus: return "h_minus";
    case OpKind::h_plus: return "h_plus";
    case OpKind::H_minus: return "H_minus";
    case OpKind::H_minus_factorized: return "H_minus_factorized";
    case OpKind::H_plus: return "H_plus";
    case OpKind::swanson_product: return "swanson_product";
    case OpKind::eta1_explicit: return "eta1_explicit";
    case OpKind::eta1_constructed: return "eta1_constructed";
    case OpKind::eta2_constructed: return "eta2_constructed";
    case OpKind::h_tilde_minus: return "h_tilde_minus";
    case OpKind::h_tilde_plus: return "h_tilde_plus";
    }
    return "unknown";
}

CoeffFn dlog_rho_fn(const Model& m) {
    m.gauge();
    return CoeffFn([m](double x, int order) { return potentials::dlog_rho_jet(x, order, m); });
}

LinDiffOp build(OpKind kind, const Model& m) {
    const auto& fp = m.fp;
    const double s = fp.sqrt_omega_bar();
    const double wb = fp.omega_bar;
    using potentials::Side;

    switch (kind) {
    case OpKind::xi: return xi_op(m, false);
    case OpKind::xi_dag: return xi_op(m, true);
    case OpKind::A:
        return x_op(1, [fp, s](const Jet& X, int) {
            return std::vector<Jet>{potentials::btilde(X, fp), s * X * X};
        });
    case OpKind::A_dag:
        return x_op(1, [fp, s](const Jet& X, int) {
            return std::vector<Jet>{potentials::btilde(X, fp) - 2.0 * s * X, -s * X * X};
        });
    case OpKind::Atilde:
    case OpKind::Atilde_dag: {
        const double lead = kind == OpKind::Atilde ? 1.0 : -1.0;
        return z_op(1, [fp, lead](double z, int order) {
            return std::vector<Jet>{potentials::w_of_z_jet(z, order, fp), Jet(lead, order)};
        });
    }
    case OpKind::Atilde_dag_printed:
        return z_op(1, [fp, s, wb](double z, int order) {
            const Jet Z = Jet::variable(z, order);
            const double k = fp.d * wb;
            return std::vector<Jet>{
                fp.omega_hat * Z + (fp.rho_q / s) / Z + 2.0 * k * Z / (k * Z * Z + 1.0),
                Jet(-1.0, order)};
        });
    case OpKind::kinetic:
        return x_op(2, [wb](const Jet& X, int order) {
            const Jet X3 = X * X * X;
            return std::vector<Jet>{Jet(0.0, order), -4.0 * wb * X3, -wb * X3 * X};
        });
    case OpKind::h_minus: return hermitian(Side::minus, m);
    case OpKind::h_plus: return hermitian(Side::plus, m);
    case OpKind::H_minus_factorized: return non_hermitian(Side::minus, m);
    case OpKind::H_plus: return non_hermitian(Side::plus, m);
    case OpKind::H_minus:
        m.gauge();
        return x_op(2, [m, wb](const Jet& X, int order) {
            const double x = X.value();
            const Jet X3 = X * X * X;
            return std::vector<Jet>{potentials::c1_jet(x, order, m),
                                    -4.0 * wb * X3 + potentials::b1_jet(x, order, m), -wb * X3 * X};
        });
    case OpKind::swanson_product: {
        const auto& mp = m.gauge();
        const LinDiffOp xi = xi_op(m, false);
        const LinDiffOp xd = xi_op(m, true);
        LinDiffOp h = scale(mp.omega, add(compose(xd, xi), scale(0.5, LinDiffOp::identity())));
        h = add(h, scale(mp.alpha, compose(xi, xi)));
        return add(h, scale(mp.beta, compose(xd, xd)));
    }
    case OpKind::eta1_constructed: {
        const CoeffFn lr = dlog_rho_fn(m);
        return x_op(1, [fp, s, lr](const Jet& X, int order) {
            const Jet a = X * X;
            return std::vector<Jet>{potentials::btilde(X, fp) + s * a * lr(X.value(), order), s * a};
        });
    }
    case OpKind::eta2_constructed: {
        const CoeffFn lr = dlog_rho_fn(m);
        return x_op(1, [fp, s, lr](const Jet& X, int order) {
            const Jet a = X * X;
            return std::vector<Jet>{
                potentials::btilde(X, fp) - 2.0 * s * X - s * a * lr(X.value(), order), -s * a};
        });
    }
    case OpKind::eta1_explicit: {
        const auto& mp = m.gauge();
        const double ab = mp.alpha - mp.beta;
        const double c = *fp.c, d = fp.d, rho = fp.rho_q, mu = fp.mu;
        return x_op(1, [=](const Jet& X, int) {
            const Jet X2 = X * X;
            const Jet poly = (ab - rho * s) * X2 * X2 +
                             (ab * (d - c - 1.0) - (3.5 * d * wb + 2.0 * rho * d * s)) * X2 +
                             d * (mu * s - ab);
            return std::vector<Jet>{poly / (s * X * (X2 + d)), s * X2};
        });
    }
    case OpKind::h_tilde_minus:
    case OpKind::h_tilde_plus: {
        const Side side = kind == OpKind::h_tilde_plus ? Side::plus : Side::minus;
        return z_op(2, [m, side](double z, int order) {
            return std::vector<Jet>{
                potentials::potential_z_jet(side, potentials::Form::z_canonical, z, order, m),
                Jet(0.0, order), Jet(-1.0, order)};
        });
    }
    }
    fail(Errc::invalid_parameter, "unknown operator kind");
}

DeltaFit infer_delta(const Model& m, const std::vector<double>& points) {
    const Model model = m;
    const CoeffFn target([model](double x, int order) {
        return potentials::potential_jet({potentials::Side::minus, potentials::Form::expanded_general},
                                         x, order, model);
    });
    return infer_delta(m, points, target);
}

DeltaFit infer_delta(const Model& m, const std::vector<double>& points, const CoeffFn& target) {
    Model base = m;
    base.gauge();
    base.swanson->delta_gauge = 0.0;
    const LinDiffOp conj = conjugate(build(OpKind::H_minus, base), dlog_rho_fn(base), +1);

    // zeroth(delta) = zeroth(0) - delta a'(x), a' = 2x
    std::vector<double> gap, reg, tv;
    double num = 0.0, den = 0.0;
    for (double x : points) {
        const double z0 = conj.values(x)[0];
        const double t = target.value(x);
        const double ap = 2.0 * x;
        gap.push_back(z0 - t);
        reg.push_back(ap);
        tv.push_back(t);
        num += (z0 - t) * ap;
        den += ap * ap;
    }
    DeltaFit fit;
    if (!(den > 1e-300)) {
        fit.degenerate = true;
        return fit;
    }
    fit.delta = num / den;
    for (std::size_t i = 0; i < gap.size(); ++i)
        fit.fit_residual = std::max(fit.fit_residual, std::abs(gap[i] - fit.delta * reg[i]) /
                                                          std::max(1.0, std::abs(tv[i])));
    return fit;
}

} // namespace diffop
} // namespace swanson

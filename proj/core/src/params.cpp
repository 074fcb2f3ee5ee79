#include "swanson/params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "swanson/error.hpp"

namespace swanson {

void ModelParams::validate() const {
    if (!std::isfinite(omega) || !std::isfinite(alpha) || !std::isfinite(beta) ||
        !std::isfinite(delta_gauge))
        fail(Errc::invalid_parameter, "model parameters must be finite");
    if (!(omega_bar() > 0.0)) {
        std::ostringstream os;
        os << "omega_bar = omega - alpha - beta must be > 0 (got " << omega_bar() << ")";
        fail(Errc::invalid_parameter, os.str());
    }
    if (alpha == beta) fail(Errc::invalid_parameter, "alpha != beta is required (got alpha == beta)");
}

DerivedConstants derive_constants(const ModelParams& p) {
    p.validate();
    const double wb = p.omega_bar();
    const double diff2 = (p.alpha - p.beta) * (p.alpha - p.beta);
    const double sum = p.alpha + p.beta;
    DerivedConstants dc;
    dc.omega_bar = wb;
    dc.a1 = diff2 / wb + wb + 2.0 * sum;
    dc.a2 = wb + sum;
    dc.a3 = sum / 2.0;
    dc.a4 = 0.25 * (diff2 / wb + 2.0 * sum);
    dc.a5 = (wb + sum) / 2.0;
    return dc;
}

double FactorizationParams::sqrt_omega_bar() const noexcept { return std::sqrt(omega_bar); }

FactorizationParams solve_forward(double omega_bar, double rho_q, double d) {
    if (!(omega_bar > 0.0) || !(rho_q > 0.0) || !(d > 0.0) || !std::isfinite(omega_bar) ||
        !std::isfinite(rho_q) || !std::isfinite(d)) {
        std::ostringstream os;
        os << "solve_forward requires omega_bar, rho_q, d > 0 (got " << omega_bar << ", " << rho_q
           << ", " << d << ")";
        fail(Errc::invalid_parameter, os.str());
    }
    const double s = std::sqrt(omega_bar);
    FactorizationParams fp;
    fp.omega_bar = omega_bar;
    fp.rho_q = rho_q;
    fp.d = d;
    fp.lambda = -2.0 * d * s;
    fp.mu = -(d / 2.0) * (2.0 * rho_q + 3.0 * s);
    fp.omega_hat = (d * s / 2.0) * (2.0 * rho_q + 3.0 * s);
    fp.gamma = rho_q / s + 1.5;
    return fp;
}

ConstraintReport check_constraints(const FactorizationParams& fp, const DerivedConstants& dc,
                                   double c, double d) {
    const double wb = dc.omega_bar;
    const double s = std::sqrt(wb);
    const double rho = fp.rho_q;
    ConstraintReport r;
    r.inverse_square = std::abs(dc.a1 - fp.mu * fp.mu);
    r.quadratic = std::abs(2.0 * (dc.a3 + 2.0 * dc.a4) - rho * (rho + 3.0 * s));
    r.constant = std::abs((dc.a2 - 2.0 * dc.a1) * (c + 1.0) + dc.a5 -
                          2.0 * d * (rho + 3.5 * s) * (rho + 0.5 * s));
    r.pole_quadratic =
        std::abs(c * (-3.0 * dc.a2 * d + 2.0 * dc.a1 + dc.a1 * c + 2.0 * dc.a1 * d) -
                 12.0 * wb * d * d);
    r.pole_constant = std::abs(2.0 * dc.a1 * (1.0 + d) - dc.a2 * d - 4.0 * wb * d * d * d);
    r.x_value = 4.0 * dc.a1 / (d * d) - 8.0 * (dc.a3 + 2.0 * dc.a4) +
                ((dc.a2 - 2.0 * dc.a1) * (c + 1.0) + dc.a5) / (2.0 * d);
    r.feasible_4x = 4.0 * r.x_value > 43.0 * wb;
    return r;
}

std::vector<double> cubic_real_roots(double c3, double c2, double c1, double c0) {
    if (c3 == 0.0) fail(Errc::invalid_parameter, "cubic_real_roots: leading coefficient is zero");
    auto p = [&](double x) { return ((c3 * x + c2) * x + c1) * x + c0; };
    auto dp = [&](double x) { return (3.0 * c3 * x + 2.0 * c2) * x + c1; };

    const double bound =
        1.0 + std::max({std::abs(c2), std::abs(c1), std::abs(c0)}) / std::abs(c3);
    std::vector<double> breaks{-bound};
    const double disc = 4.0 * c2 * c2 - 12.0 * c3 * c1;
    if (disc > 0.0) {
        const double sq = std::sqrt(disc);
        double r1 = (-2.0 * c2 - sq) / (6.0 * c3);
        double r2 = (-2.0 * c2 + sq) / (6.0 * c3);
        if (r1 > r2) std::swap(r1, r2);
        breaks.push_back(r1);
        breaks.push_back(r2);
    }
    breaks.push_back(bound);

    std::vector<double> roots;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        double lo = breaks[i];
        double hi = breaks[i + 1];
        double flo = p(lo);
        const double fhi = p(hi);
        if (flo == 0.0) {
            roots.push_back(lo);
            continue;
        }
        if ((flo < 0.0) == (fhi < 0.0)) continue;
        for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = p(mid);
            if (fm == 0.0) {
                lo = hi = mid;
                break;
            }
            if ((fm < 0.0) == (flo < 0.0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        double x = 0.5 * (lo + hi);
        for (int it = 0; it < 3; ++it) {
            const double slope = dp(x);
            if (slope == 0.0) break;
            const double nx = x - p(x) / slope;
            if (!(std::abs(p(nx)) < std::abs(p(x)))) break;
            x = nx;
        }
        roots.push_back(x);
    }
    if (p(breaks.back()) == 0.0) roots.push_back(breaks.back());
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](double a, double b) {
                                return std::abs(a - b) <= 1e-14 * std::max(1.0, std::abs(a));
                            }),
                roots.end());
    return roots;
}

InverseStage solve_inverse_stage(const ModelParams& p) {
    InverseStage st;
    st.constants = derive_constants(p);
    const auto& dc = st.constants;
    const double wb = dc.omega_bar;

    // 2 a1 (1 + d) - a2 d = 4 wb d^3, rearranged as a cubic in d.
    std::vector<double> positive;
    for (double r : cubic_real_roots(4.0 * wb, 0.0, -(2.0 * dc.a1 - dc.a2), -2.0 * dc.a1))
        if (r > 0.0) positive.push_back(r);
    st.d_root_count = static_cast<int>(positive.size());
    if (positive.empty()) fail(Errc::no_positive_root, "cubic in d has no positive real root");
    st.d = positive.front();

    const double d = st.d;
    const double lin = 4.0 * wb * d * d * d - 2.0 * dc.a2 * d;
    const double disc = lin * lin + 48.0 * dc.a1 * wb * d * d;
    if (disc < 0.0 || dc.a1 == 0.0)
        fail(Errc::branch_violation, "no real solution for c on the negative branch");
    st.c = (2.0 * dc.a2 * d - 4.0 * wb * d * d * d - std::sqrt(disc)) / (2.0 * dc.a1);
    if (!(st.c < -1.0)) {
        std::ostringstream os;
        os << "negative branch gives c = " << st.c << ", but c < 0 and |c| > 1 are required";
        fail(Errc::branch_violation, os.str());
    }
    st.x_value = 4.0 * dc.a1 / (d * d) - 8.0 * (dc.a3 + 2.0 * dc.a4) +
                 ((dc.a2 - 2.0 * dc.a1) * (st.c + 1.0) + dc.a5) / (2.0 * d);
    st.feasible_4x = 4.0 * st.x_value > 43.0 * wb;
    return st;
}

InverseSolution solve_inverse(const ModelParams& p) {
    const InverseStage st = solve_inverse_stage(p);
    const double wb = st.constants.omega_bar;
    if (!st.feasible_4x) {
        std::ostringstream os;
        os << "4X = " << 4.0 * st.x_value << " does not exceed 43 omega_bar = " << 43.0 * wb
           << "; rho would not be positive";
        fail(Errc::infeasible_4x, os.str());
    }
    const double s = std::sqrt(wb);
    const double rho = 0.5 * (std::sqrt(4.0 * st.x_value - 27.0 * wb) - 4.0 * s);

    InverseSolution sol;
    sol.params = solve_forward(wb, rho, st.d);
    sol.params.c = st.c;
    sol.report = check_constraints(sol.params, st.constants, st.c, st.d);
    sol.report.d_root_count = st.d_root_count;
    return sol;
}

} // namespace swanson

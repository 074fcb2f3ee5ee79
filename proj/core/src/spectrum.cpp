#include "swanson/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "swanson/error.hpp"
#include "swanson/numeric.hpp"
#include "swanson/potentials.hpp"
#include "swanson/specialfn.hpp"

namespace swanson::spectrum {
namespace {

void require_positive_z(double z) {
    if (!(z > 0.0)) {
        std::ostringstream os;
        os << "wavefunction: z must be > 0, got " << z;
        fail(Errc::domain_error, os.str());
    }
}

double sign_of_n(int n) { return n % 2 == 0 ? 1.0 : -1.0; }

// C z^p e^{-s z^2 / 2} as a jet.
Jet envelope(double c, double p, double s, const Jet& Z) {
    return c * pow(Z, p) * exp(-0.5 * s * (Z * Z));
}

} // namespace

double GKPotential::gamma() const { return 1.0 + 0.5 * std::sqrt(1.0 + 4.0 * A); }
double GKPotential::delta() const { return std::sqrt(B); }

std::vector<SpectralLine> gk_eigenvalues(const GKPotential& gk, int n_max) {
    if (gk.A < 0.0 || !(gk.B > 0.0)) fail(Errc::invalid_parameter, "GK potential needs A >= 0, B > 0");
    std::vector<SpectralLine> out;
    for (int n = 0; n <= n_max; ++n) out.push_back({n, 2.0 * gk.delta() * (2.0 * n + gk.gamma())});
    return out;
}

Jet gk_wavefunction_jet(const GKPotential& gk, int n, double z, int order) {
    require_positive_z(z);
    const double g = gk.gamma(), dl = gk.delta();
    const double norm = sign_of_n(n) * std::sqrt(2.0 * std::pow(dl, g) * specialfn::pochhammer(g, n) /
                                                 (specialfn::factorial(n) * specialfn::gamma_fn(g)));
    const Jet Z = Jet::variable(z, order);
    return envelope(norm, g - 0.5, dl, Z) * specialfn::kummer(n, g, dl * (Z * Z));
}

WavefunctionEval gk_wavefunction(const GKPotential& gk, int n, double z) {
    const Jet j = gk_wavefunction_jet(gk, n, z, 1);
    return {n, z, j.value(), j.derivative(1)};
}

GKPotential plus_gk(const FactorizationParams& fp) {
    const double s = fp.sqrt_omega_bar();
    return {(fp.rho_q * fp.rho_q + s * fp.rho_q) / fp.omega_bar, fp.mu * fp.mu * fp.omega_bar};
}

double plus_shift(const FactorizationParams& fp) {
    const double s = fp.sqrt_omega_bar();
    return 2.0 * fp.d * (fp.rho_q + 3.5 * s) * (fp.rho_q + 1.5 * s);
}

double energy_plus(const FactorizationParams& fp, int n) {
    return 2.0 * fp.omega_hat * (2.0 * n + 2.0 * fp.rho_q / fp.sqrt_omega_bar() + 5.0);
}

std::vector<SpectralLine> energies_plus(const FactorizationParams& fp, int n_max) {
    std::vector<SpectralLine> out;
    for (int n = 0; n <= n_max; ++n) out.push_back({n, energy_plus(fp, n)});
    return out;
}

double norm_constant(const FactorizationParams& fp, int n) {
    const double g = fp.gamma;
    return sign_of_n(n) * std::sqrt(2.0 * std::pow(fp.omega_hat, g) * specialfn::pochhammer(g, n) /
                                    (specialfn::factorial(n) * specialfn::gamma_fn(g)));
}

Jet phi_plus_jet(const FactorizationParams& fp, int n, double z, int order) {
    require_positive_z(z);
    const Jet Z = Jet::variable(z, order);
    const double wh = fp.omega_hat;
    return envelope(norm_constant(fp, n), fp.gamma - 0.5, wh, Z) *
           specialfn::kummer(n, fp.gamma, wh * (Z * Z));
}

WavefunctionEval phi_plus(const FactorizationParams& fp, int n, double z) {
    const Jet j = phi_plus_jet(fp, n, z, 1);
    return {n, z, j.value(), j.derivative(1)};
}

const char* to_string(PhiMinusMethod method) {
    switch (method) {
    case PhiMinusMethod::closed_laguerre: return "closed_laguerre";
    case PhiMinusMethod::lowered: return "lowered";
    case PhiMinusMethod::normalized: return "normalized";
    }
    return "unknown";
}

Jet phi_minus_closed_jet(const FactorizationParams& fp, int n, double z, int order,
                         double c_prime) {
    require_positive_z(z);
    const double g = fp.gamma, wh = fp.omega_hat;
    const double k = fp.d * fp.omega_bar;
    const Jet Z = Jet::variable(z, order);
    const Jet t = wh * (Z * Z);
    using specialfn::laguerre;
    const Jet bracket = (g + n + 1.0) * laguerre(n, g - 1.0, t) -
                        (n + 1.0) * laguerre(n + 1, g - 1.0, t) + g * laguerre(n, g, t);
    return 2.0 * envelope(c_prime, g + 0.5, wh, Z) / (Z * Z + 1.0 / k) * bracket;
}

Jet lowered_laguerre_jet(const FactorizationParams& fp, int n, double z, int order,
                         double c_prime) {
    require_positive_z(z);
    const double g = fp.gamma, wh = fp.omega_hat;
    const Jet Z = Jet::variable(z, order + 1);
    const Jet f = envelope(c_prime, g - 0.5, wh, Z) * specialfn::laguerre(n, g - 1.0, wh * (Z * Z));
    const Jet w = potentials::w_of_z_jet(z, order, fp);
    return -1.0 * f.differentiated().truncated(order) + w * f.truncated(order);
}

Jet phi_minus_jet(const FactorizationParams& fp, int n, double z, int order, PhiMinusMethod method) {
    require_positive_z(z);
    if (method == PhiMinusMethod::closed_laguerre)
        return phi_minus_closed_jet(fp, n, z, order, norm_constant(fp, n));
    const Jet f = phi_plus_jet(fp, n, z, order + 1);
    const Jet w = potentials::w_of_z_jet(z, order, fp);
    Jet out = -1.0 * f.differentiated().truncated(order) + w * f.truncated(order);
    if (method == PhiMinusMethod::normalized) out /= std::sqrt(energy_plus(fp, n));
    return out;
}

WavefunctionEval phi_minus(const FactorizationParams& fp, int n, double z, PhiMinusMethod method) {
    const Jet j = phi_minus_jet(fp, n, z, 1, method);
    return {n, z, j.value(), j.derivative(1)};
}

double psi_norm_constant(const FactorizationParams& fp, int n) {
    const double g = fp.gamma;
    return sign_of_n(n) *
           std::sqrt(2.0 * std::pow(fp.omega_hat, g + 1.0) * specialfn::pochhammer(g, n) /
                     (fp.omega_bar * (n + g) * specialfn::factorial(n + 1) * specialfn::gamma_fn(g)));
}

Jet psi_plus_jet(const FactorizationParams& fp, int n, double z, int order) {
    require_positive_z(z);
    const Jet Z = Jet::variable(z, order);
    const double wh = fp.omega_hat;
    return envelope(psi_norm_constant(fp, n), fp.gamma + 0.5, wh, Z) *
           specialfn::kummer(n, fp.gamma, wh * (Z * Z));
}

WavefunctionEval psi_plus(const FactorizationParams& fp, int n, double z) {
    const Jet j = psi_plus_jet(fp, n, z, 1);
    return {n, z, j.value(), j.derivative(1)};
}

const char* to_string(JMethod method) {
    switch (method) {
    case JMethod::closed_printed: return "closed_printed";
    case JMethod::quadrature: return "quadrature";
    case JMethod::closed_diagonal: return "closed_diagonal";
    }
    return "unknown";
}

double j_integral(const FactorizationParams& fp, int m, int n, JMethod method) {
    const double g = fp.gamma, wh = fp.omega_hat;
    if (!(g > 0.0) || !(wh > 0.0)) fail(Errc::invalid_parameter, "J integral needs gamma, omega_hat > 0");
    if (m < 0 || n < 0) fail(Errc::invalid_parameter, "J integral needs m, n >= 0");
    const double base = specialfn::gamma_fn(g) / (2.0 * std::pow(wh, g + 1.0) * specialfn::pochhammer(g, n));
    switch (method) {
    case JMethod::closed_printed:
        if (m != n) fail(Errc::invalid_parameter, "printed closed form covers m == n only");
        return (n + g) * specialfn::factorial(n + 1) * base;
    case JMethod::closed_diagonal:
        if (m != n) fail(Errc::invalid_parameter, "diagonal closed form covers m == n only");
        return (2.0 * n + g) * specialfn::factorial(n) * base;
    case JMethod::quadrature:
        return numeric::quad_halfline(
            [&](double z) {
                const double y = wh * z * z;
                return std::pow(z, 2.0 * g + 1.0) * std::exp(-y) * specialfn::kummer(m, g, y) *
                       specialfn::kummer(n, g, y);
            },
            wh);
    }
    fail(Errc::invalid_parameter, "unknown J method");
}

double eigen_residual(const std::function<Jet(double z, int order)>& f,
                      const std::function<double(double z)>& potential, double energy,
                      const std::vector<double>& zs) {
    double worst = 0.0;
    for (double z : zs) {
        const Jet j = f(z, 2);
        const double f0 = j.value(), f2 = j.derivative(2);
        const double v = potential(z);
        const double r = -f2 + v * f0 - energy * f0;
        const double scale = std::abs(f2) + std::abs(v * f0) + std::abs(energy * f0);
        if (scale > 0.0) worst = std::max(worst, std::abs(r) / scale);
    }
    return worst;
}

std::vector<double> interior_points(int count, double lo, double hi) {
    std::vector<double> pts;
    for (int i = 0; i < count; ++i) pts.push_back(lo + (hi - lo) * (i + 1) / (count + 1));
    return pts;
}

} // namespace swanson::spectrum

#pragma once

#include <cmath>
#include <optional>

#include "swanson/coeff_fn.hpp"
#include "swanson/jet.hpp"
#include "swanson/params.hpp"

namespace swanson {

/// Factorization parameters plus, optionally, the quadratic-Hamiltonian
/// parameters that fix the similarity gauge rho (which also needs fp.c).
struct Model {
    FactorizationParams fp;
    std::optional<ModelParams> swanson;

    static Model forward(const FactorizationParams& fp) { return Model{fp, std::nullopt}; }

    /// Attaches (alpha, beta, c) as a gauge to forward parameters, with
    /// omega = omega_bar + alpha + beta so both descriptions share omega_bar.
    static Model with_gauge(FactorizationParams fp, double alpha, double beta, double c,
                            double delta_gauge = 0.0);

    /// Model from an inverse solve (fp.c already set).
    static Model inverse(const FactorizationParams& fp, const ModelParams& mp);

    bool has_gauge() const noexcept { return swanson.has_value() && fp.c.has_value(); }

    /// Throws Errc::mode_error when the gauge is absent or inconsistent.
    const ModelParams& gauge() const;
};

namespace potentials {

enum class Side { plus, minus };

/// Which expression of a potential to evaluate. operator_product and
/// z_canonical are the ground truth; the rest are printed expansions.
enum class Form {
    operator_product,     ///< zeroth-order coefficient of the factorized product
    expanded_general,     ///< general-a,b expansion (minus) / partner expansion (plus)
    ansatz_expanded,      ///< minus side in the a = x^2, b = 1/x + cx/(x^2+d) ansatz
    matched,              ///< first expansion in the superpotential ansatz
    simplified,           ///< regrouped expansion in the superpotential ansatz
    reduced,              ///< after fixing mu and lambda
    transformed_printed,  ///< printed z-variable form
    z_canonical,          ///< w^2 +/- dw/dz
};

struct PotentialFormId {
    Side side;
    Form form;
};

const char* to_string(Side side);
const char* to_string(Form form);

struct PointFunctions {
    double a = 0.0;
    double a_prime = 0.0;
    std::optional<double> b;
    double b_tilde = 0.0;
    std::optional<double> b1;
    std::optional<double> c1;
    double w = 0.0;
    std::optional<double> log_rho;
};

template <class T>
T btilde(const T& x, const FactorizationParams& fp) {
    return fp.mu / x - fp.rho_q * x + fp.lambda * x / (x * x + fp.d);
}

/// Superpotential after the sqrt(a) similarity: w = btilde - (sqrt(wb)/2) a'.
template <class T>
T superpotential_w(const T& x, const FactorizationParams& fp) {
    return btilde(x, fp) - fp.sqrt_omega_bar() * x;
}

template <class T>
T b_ansatz(const T& x, double c, double d) {
    return 1.0 / x + c * x / (x * x + d);
}

template <class T>
T x_of_z(const T& z, double omega_bar) {
    return -1.0 / (std::sqrt(omega_bar) * z);
}

double coord_z(double x, double omega_bar);
double coord_x(double z, double omega_bar);

/// b1 = (alpha - beta) a (2b - a').
Jet b1_jet(double x, int order, const Model& m);

/// (log rho)' = -b1 / (2 wb a^2); closed form, no quadrature.
Jet dlog_rho_jet(double x, int order, const Model& m);

/// Zeroth-order coefficient of the expanded quadratic Hamiltonian, using
/// the model's delta_gauge.
Jet c1_jet(double x, int order, const Model& m);

/// log rho by quadrature from x0 (same sign as x).
double log_rho(double x, const Model& m, double x0);

PointFunctions point_functions(double x, const Model& m);

/// b = a'/2 + (1/2) int_{x0}^{x} dy / a(y), the unit-commutator relation.
double unit_commutator_b(double x, const CoeffFn& a, double x0);

Jet potential_jet(PotentialFormId id, double x, int order, const Model& m);
double eval_potential(PotentialFormId id, double x, const Model& m);

/// z-variable potentials; form must be transformed_printed or z_canonical.
Jet potential_z_jet(Side side, Form form, double z, int order, const Model& m);
double eval_potential_z(Side side, Form form, double z, const Model& m);

/// w(x(z)) as a jet in z.
Jet w_of_z_jet(double z, int order, const FactorizationParams& fp);

} // namespace potentials
} // namespace swanson

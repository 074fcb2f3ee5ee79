#pragma once

#include <functional>
#include <vector>

#include "swanson/jet.hpp"
#include "swanson/params.hpp"

namespace swanson::spectrum {

/// -d^2/dz^2 + A/z^2 + B z^2 on the half-line.
struct GKPotential {
    double A = 0.0;
    double B = 1.0;

    double gamma() const;
    double delta() const;
};

struct SpectralLine {
    int n = 0;
    double energy = 0.0;
};

struct WavefunctionEval {
    int n = 0;
    double z = 0.0;
    double value = 0.0;
    double derivative = 0.0;
};

std::vector<SpectralLine> gk_eigenvalues(const GKPotential& gk, int n_max);
Jet gk_wavefunction_jet(const GKPotential& gk, int n, double z, int order);
WavefunctionEval gk_wavefunction(const GKPotential& gk, int n, double z);

/// The isotonic part of the plus-side z potential, and its constant offset.
GKPotential plus_gk(const FactorizationParams& fp);
double plus_shift(const FactorizationParams& fp);

/// E_n = 2 omega_hat (2n + 2 rho/sqrt(wb) + 5), n = 0..n_max.
std::vector<SpectralLine> energies_plus(const FactorizationParams& fp, int n_max);
double energy_plus(const FactorizationParams& fp, int n);

/// C_n = (-1)^n sqrt(2 omega_hat^gamma (gamma)_n / (n! Gamma(gamma))).
double norm_constant(const FactorizationParams& fp, int n);

Jet phi_plus_jet(const FactorizationParams& fp, int n, double z, int order);
WavefunctionEval phi_plus(const FactorizationParams& fp, int n, double z);

enum class PhiMinusMethod {
    closed_laguerre,    ///< Laguerre closed form with C'_n = C_n
    lowered,  ///< (-d/dz + w) phi_plus
    normalized,   ///< lowered / sqrt(E_n)
};

const char* to_string(PhiMinusMethod method);

Jet phi_minus_jet(const FactorizationParams& fp, int n, double z, int order, PhiMinusMethod method);
WavefunctionEval phi_minus(const FactorizationParams& fp, int n, double z, PhiMinusMethod method);

/// The Laguerre closed form with an explicit leading constant.
Jet phi_minus_closed_jet(const FactorizationParams& fp, int n, double z, int order,
                         double c_prime);

/// (-d/dz + w)(c_prime z^(gamma-1/2) e^(-omega_hat z^2/2) L_n^(gamma-1)(omega_hat z^2)).
Jet lowered_laguerre_jet(const FactorizationParams& fp, int n, double z, int order,
                         double c_prime);

/// The printed normalization constant of psi_plus.
double psi_norm_constant(const FactorizationParams& fp, int n);
Jet psi_plus_jet(const FactorizationParams& fp, int n, double z, int order);
WavefunctionEval psi_plus(const FactorizationParams& fp, int n, double z);

enum class JMethod {
    closed_printed,        ///< printed diagonal closed form, m == n only
    quadrature,    ///< direct quadrature of the weighted product
    closed_diagonal,  ///< (2n + gamma) n! Gamma(gamma) / (2 omega_hat^(gamma+1) (gamma)_n)
};

const char* to_string(JMethod method);

/// int_0^inf z^(2 gamma + 1) e^(-omega_hat z^2) 1F1(-m) 1F1(-n) dz.
double j_integral(const FactorizationParams& fp, int m, int n, JMethod method);

/// max over zs of |-f'' + V f - E f| / (|f''| + |V f| + |E f|).
double eigen_residual(const std::function<Jet(double z, int order)>& f,
                      const std::function<double(double z)>& potential, double energy,
                      const std::vector<double>& zs);

/// Evenly spaced interior points on [lo, hi].
std::vector<double> interior_points(int count, double lo, double hi);

} // namespace swanson::spectrum

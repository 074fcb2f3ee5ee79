#pragma once

#include <optional>
#include <vector>

namespace swanson {

/// Quadratic non-Hermitian Hamiltonian parameters (omega, alpha, beta).
/// delta_gauge is the free constant multiplying -a'(x) in the zeroth-order
/// coefficient of the expanded Hamiltonian.
struct ModelParams {
    double omega = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double delta_gauge = 0.0;

    double omega_bar() const noexcept { return omega - alpha - beta; }

    /// True when omega^2 - 4 alpha beta <= 0. That reality condition belongs
    /// to the harmonic case, so it is only a warning here.
    bool reality_warning() const noexcept { return omega * omega - 4.0 * alpha * beta <= 0.0; }

    /// Throws Errc::invalid_parameter for omega_bar <= 0 or alpha == beta.
    void validate() const;
};

struct DerivedConstants {
    double a1 = 0.0;
    double a2 = 0.0;
    double a3 = 0.0;
    double a4 = 0.0;
    double a5 = 0.0;
    double omega_bar = 0.0;
};

DerivedConstants derive_constants(const ModelParams& p);

/// Superpotential parameters. mu and lambda are tied to (omega_bar, rho_q, d)
/// so that the partner potential is a pure isotonic oscillator; c is only
/// set by the inverse solver (or attached as a similarity gauge).
struct FactorizationParams {
    double omega_bar = 0.0;
    double rho_q = 0.0;
    double d = 0.0;
    std::optional<double> c;
    double mu = 0.0;
    double lambda = 0.0;
    double omega_hat = 0.0;
    double gamma = 0.0;

    double sqrt_omega_bar() const noexcept;
};

FactorizationParams solve_forward(double omega_bar, double rho_q, double d);

/// Absolute residuals of the five coefficient-matching conditions between the
/// ansatz potential and the reduced factorized potential.
struct ConstraintReport {
    double inverse_square = 0.0;   ///< |a1 - mu^2|
    double quadratic = 0.0;        ///< |2(a3 + 2 a4) - rho(rho + 3 sqrt(wb))|
    double constant = 0.0;         ///< |(a2 - 2a1)(c+1) + a5 - 2d(rho + 7s/2)(rho + s/2)|
    double pole_quadratic = 0.0;   ///< |c(-3 a2 d + 2 a1 + a1 c + 2 a1 d) - 12 wb d^2|
    double pole_constant = 0.0;    ///< |2 a1 (1 + d) - a2 d - 4 wb d^3|
    double x_value = 0.0;
    bool feasible_4x = false;      ///< 4X > 43 omega_bar
    int d_root_count = 0;          ///< positive real roots of the cubic in d
};

ConstraintReport check_constraints(const FactorizationParams& fp, const DerivedConstants& dc,
                                   double c, double d);

/// Stages of the inverse solve that do not depend on rho: the cubic root d,
/// the negative-branch c and the auxiliary X.
struct InverseStage {
    DerivedConstants constants;
    double d = 0.0;
    int d_root_count = 0;
    double c = 0.0;
    double x_value = 0.0;
    bool feasible_4x = false;
};

/// Throws NoPositiveRoot or BranchViolation.
InverseStage solve_inverse_stage(const ModelParams& p);

struct InverseSolution {
    FactorizationParams params;
    ConstraintReport report;
};

/// Full inverse solve; additionally throws Infeasible4X.
InverseSolution solve_inverse(const ModelParams& p);

/// Real roots of c3 x^3 + c2 x^2 + c1 x + c0 (c3 != 0), ascending, found by
/// bracketing between critical points, bisection and a Newton polish.
std::vector<double> cubic_real_roots(double c3, double c2, double c1, double c0);

} // namespace swanson

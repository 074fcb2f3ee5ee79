#pragma once

#include <functional>
#include <vector>

namespace swanson::numeric {

using RealFn = std::function<double(double)>;

/// -d^2/dz^2 + V(z) on (z_min, z_max) by second-order central differences
/// with Dirichlet ends; nodes z_i = z_min + i h, i = 1..n_points.
struct TridiagSystem {
    std::vector<double> diagonal;
    std::vector<double> off_diagonal;
    double z_min = 0.0;
    double z_max = 0.0;
    int n_points = 0;

    double step() const noexcept { return (z_max - z_min) / (n_points + 1); }
};

TridiagSystem fd_discretize(const RealFn& potential, double z_min, double z_max, int n_points);

/// Number of eigenvalues strictly below lambda (Sturm sequence count).
int sturm_count(const TridiagSystem& sys, double lambda);

/// The k smallest eigenvalues by Sturm bisection, ascending.
std::vector<double> tridiag_eigs(const TridiagSystem& sys, int k);

struct Extrapolation {
    std::vector<int> grids;                       ///< grid sizes actually solved
    std::vector<std::vector<double>> per_grid;    ///< raw eigenvalues per grid
    std::vector<double> values;                   ///< Richardson extrapolants
    std::vector<double> observed_order;           ///< per level
};

/// Solves on each grid (n_points doubling) and Richardson-extrapolates the two
/// finest assuming O(h^2). With exactly two grids an auxiliary half-size grid
/// is added so the convergence order can be observed. Throws NonConvergent
/// if any observed order is below 1.5.
Extrapolation refine_extrapolate(const RealFn& potential, int k, const std::vector<int>& grids,
                                 double z_min, double z_max);

/// Integral over (0, inf) of f, assuming Gaussian-type decay exp(-scale z^2)
/// times at most polynomial growth. Composite 20-point Gauss-Legendre with
/// panel doubling.
double quad_halfline(const RealFn& f, double scale_hint);

/// Integral over [lo, hi] by composite Gauss-Legendre with panel doubling.
double quad_interval(const RealFn& f, double lo, double hi, double rel_tol = 1e-12);

struct SpectrumPair {
    double analytic = 0.0;
    double numeric = 0.0;
    double abs_error = 0.0;
    double rel_error = 0.0;
};

struct SpectrumComparison {
    std::vector<SpectrumPair> pairs;
    std::vector<double> unmatched_numeric_levels;
    std::vector<double> unexpected_low_levels;  ///< numeric levels below the analytic ground state

    double max_rel_error() const noexcept;
};

SpectrumComparison compare_spectra(const std::vector<double>& analytic,
                                   const std::vector<double>& numeric, double tol);

} // namespace swanson::numeric

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "swanson/coeff_fn.hpp"
#include "swanson/jet.hpp"
#include "swanson/potentials.hpp"

namespace swanson {

/// sum_i c_i(x) d^i/dx^i, with all coefficients produced together as jets.
class LinDiffOp {
public:
    using Evaluator = std::function<std::vector<Jet>(double x, int jet_order)>;

    LinDiffOp(int order, Evaluator eval);

    static LinDiffOp from_coeffs(std::vector<CoeffFn> coeffs);
    static LinDiffOp identity();
    static LinDiffOp derivative();
    static LinDiffOp multiplication(CoeffFn f);

    int order() const noexcept { return order_; }

    /// Jets of c_0..c_order at x.
    std::vector<Jet> coeffs(double x, int jet_order) const;
    std::vector<double> values(double x) const;
    CoeffFn coeff(int i) const;

private:
    int order_;
    Evaluator eval_;
};

inline constexpr int kCompositionBudget = 4;

namespace diffop {

/// T o S. Throws jet_order_exceeded past kCompositionBudget.
LinDiffOp compose(const LinDiffOp& t, const LinDiffOp& s);
LinDiffOp add(const LinDiffOp& t, const LinDiffOp& s);
LinDiffOp scale(double k, const LinDiffOp& t);

/// Adjoint with respect to dx: (c D^k)^+ = (-1)^k D^k o c.
LinDiffOp formal_adjoint(const LinDiffOp& t);

/// rho^sign T rho^-sign given (log rho)'.
LinDiffOp conjugate(const LinDiffOp& t, const CoeffFn& dlog_rho, int sign);

/// max over points and coefficients of |T_i - S_i| / max(1, |T_i|).
double residual(const LinDiffOp& t, const LinDiffOp& s, const std::vector<double>& points);

/// Same measure restricted to coefficient index i.
double coeff_residual(const LinDiffOp& t, const LinDiffOp& s, int i,
                      const std::vector<double>& points);

/// (T f) at x as a jet of the given order.
Jet apply(const LinDiffOp& t, const CoeffFn& f, double x, int jet_order);

/// Deterministic points with |x| in [0.3, 5], alternating sign unless
/// negative_only.
std::vector<double> generic_sample_points(int count, std::uint64_t seed = 7,
                                          bool negative_only = false);

enum class OpKind {
    xi,
    xi_dag,
    A,
    A_dag,
    Atilde,              ///< d/dz + w(z)
    Atilde_dag,          ///< -d/dz + w(z)
    Atilde_dag_printed,  ///< the printed z-form of the lowering map
    kinetic,             ///< -wb d/dx a^2 d/dx
    h_minus,
    h_plus,
    H_minus,             ///< expanded quadratic Hamiltonian, b1 D + c1 form
    H_minus_factorized,  ///< rho^-1 h_minus rho written out
    H_plus,
    swanson_product,     ///< omega(xi^+ xi + 1/2) + alpha xi^2 + beta xi^+2
    eta1_explicit,
    eta1_constructed,
    eta2_constructed,
    h_tilde_minus,
    h_tilde_plus,
};

const char* to_string(OpKind kind);

/// Operators in z (Atilde*, h_tilde*) act on the z variable; all others on x.
LinDiffOp build(OpKind kind, const Model& m);

CoeffFn dlog_rho_fn(const Model& m);

struct DeltaFit {
    double delta = 0.0;
    double fit_residual = 0.0;
    bool degenerate = false;
};

/// Least-squares delta such that the zeroth coefficient of rho H_minus rho^-1
/// matches the target (the general-form V_minus by default).
DeltaFit infer_delta(const Model& m, const std::vector<double>& points);
DeltaFit infer_delta(const Model& m, const std::vector<double>& points, const CoeffFn& target);

} // namespace diffop
} // namespace swanson

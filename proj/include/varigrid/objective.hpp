#pragma once

#include <utility>

#include "varigrid/diffops.hpp"
#include "varigrid/field.hpp"
#include "varigrid/poisson.hpp"

namespace varigrid {

/// Prescribed monitor functions: f0 the target Jacobian determinant
/// (positive at interior nodes), g0 the target curl.
struct MonitorPair {
    ScalarField f0;
    ScalarField g0;

    MonitorPair() = default;
    MonitorPair(ScalarField jac_target, ScalarField curl_target);
};

/// The optimization variable: right-hand side of the Poisson control
/// equation, one component per displacement component. Boundary entries are
/// zero (they are inert anyway; the constructor enforces the convention).
struct ControlField {
    VectorField f;

    ControlField() = default;
    explicit ControlField(const GridSpec& spec) : f(spec) {}
    explicit ControlField(VectorField values);

    const GridSpec& spec() const { return f.spec(); }
};

/// ssd split into its Jacobian and (unweighted) curl terms:
/// ssd = ssd_J + alpha * ssd_curl.
struct ObjectiveReport {
    double ssd = 0.0;
    double ssd_J = 0.0;
    double ssd_curl = 0.0;
    double alpha = 1.0;
};

struct AdjointPair {
    VectorField a1;
    VectorField a2;
};

/// Displacement and transformation induced by a control field:
/// u_i = solve_dirichlet_zero(f_i), T = base + u nodewise.
std::pair<VectorField, Transformation> assemble_transformation(
    const PoissonSolver& solver, const Transformation& base,
    const ControlField& control);

/// ssd = 1/2 sum_int [(J(T)-f0)^2 + alpha*(curl(T)-g0)^2] hx hy.
/// Throws std::invalid_argument for alpha <= 0 or mismatched grids.
ObjectiveReport evaluate_ssd(const Transformation& T,
                             const MonitorPair& monitors, double alpha);

/// P = J(T)-f0, Q = alpha*(curl(T)-g0) at interior nodes, zero boundary.
ResidualPair residual_fields(const Transformation& T,
                             const MonitorPair& monitors, double alpha);

/// Adjoint vector fields driving the gradient Poisson solves:
///   a1 = -[P*(T2y, -T2x) + Q*(0,-1)],  a2 = -[P*(-T1y, T1x) + Q*(1,0)],
/// stored with the sign that makes -g the descent direction. Uses the same
/// interior central differences of T as jacobian_det; boundary entries zero.
AdjointPair adjoint_vector_fields(const Transformation& T,
                                  const ResidualPair& residuals);

/// g_i = solve_dirichlet_zero(adjoint_divergence(a_i)). This is the gradient
/// of ssd with respect to (f1,f2) under the interior quadrature inner
/// product: d ssd = sum_int (g . df) hx hy, exactly in the discrete setting.
VectorField control_gradient(const PoissonSolver& solver,
                             const AdjointPair& adjoints);

}  // namespace varigrid

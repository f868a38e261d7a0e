#include "varigrid/objective.hpp"

#include <cmath>
#include <stdexcept>

namespace varigrid {

MonitorPair::MonitorPair(ScalarField jac_target, ScalarField curl_target)
    : f0(std::move(jac_target)), g0(std::move(curl_target)) {
    if (!f0.same_spec(g0))
        throw std::invalid_argument("MonitorPair: monitors on different grids");
    const GridSpec& s = f0.spec();
    for (int j = 0; j < s.ny; ++j)
        for (int i = 0; i < s.nx; ++i) {
            if (!std::isfinite(f0(i, j)) || !std::isfinite(g0(i, j)))
                throw std::invalid_argument("MonitorPair: non-finite monitor value");
            if (s.is_interior(i, j) && !(f0(i, j) > 0.0))
                throw std::invalid_argument(
                    "MonitorPair: f0 must be positive at interior nodes");
        }
}

ControlField::ControlField(VectorField values) : f(std::move(values)) {
    f.x.zero_boundary();
    f.y.zero_boundary();
}

std::pair<VectorField, Transformation> assemble_transformation(
    const PoissonSolver& solver, const Transformation& base,
    const ControlField& control) {
    if (!(base.spec() == control.spec()))
        throw std::invalid_argument("assemble_transformation: spec mismatch");
    VectorField u(solver.solve_dirichlet_zero(control.f.x),
                  solver.solve_dirichlet_zero(control.f.y));
    Transformation T = base;
    axpy(1.0, u, T.pos);
    return {std::move(u), std::move(T)};
}

ObjectiveReport evaluate_ssd(const Transformation& T,
                             const MonitorPair& monitors, double alpha) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("evaluate_ssd: alpha must be positive");
    if (!(T.spec() == monitors.f0.spec()))
        throw std::invalid_argument("evaluate_ssd: spec mismatch");
    const GridSpec& s = T.spec();
    const ScalarField J = jacobian_det(T);
    const ScalarField c = curl2d(T);
    double sj = 0.0, sc = 0.0;
    for (int j = 1; j < s.ny - 1; ++j)
        for (int i = 1; i < s.nx - 1; ++i) {
            const double p = J(i, j) - monitors.f0(i, j);
            const double q = c(i, j) - monitors.g0(i, j);
            sj += p * p;
            sc += q * q;
        }
    ObjectiveReport r;
    r.alpha = alpha;
    r.ssd_J = 0.5 * sj * s.cell_weight();
    r.ssd_curl = 0.5 * sc * s.cell_weight();
    r.ssd = r.ssd_J + alpha * r.ssd_curl;
    return r;
}

ResidualPair residual_fields(const Transformation& T,
                             const MonitorPair& monitors, double alpha) {
    if (!(T.spec() == monitors.f0.spec()))
        throw std::invalid_argument("residual_fields: spec mismatch");
    const GridSpec& s = T.spec();
    const ScalarField J = jacobian_det(T);
    const ScalarField c = curl2d(T);
    ResidualPair r{ScalarField(s), ScalarField(s)};
    for (int j = 1; j < s.ny - 1; ++j)
        for (int i = 1; i < s.nx - 1; ++i) {
            r.P(i, j) = J(i, j) - monitors.f0(i, j);
            r.Q(i, j) = alpha * (c(i, j) - monitors.g0(i, j));
        }
    return r;
}

AdjointPair adjoint_vector_fields(const Transformation& T,
                                  const ResidualPair& residuals) {
    if (!(T.spec() == residuals.P.spec()))
        throw std::invalid_argument("adjoint_vector_fields: spec mismatch");
    const GridSpec& s = T.spec();
    const PartialPair d1 = partials(T.pos.x);
    const PartialPair d2 = partials(T.pos.y);
    AdjointPair a{VectorField(s), VectorField(s)};
    for (int j = 1; j < s.ny - 1; ++j)
        for (int i = 1; i < s.nx - 1; ++i) {
            const double p = residuals.P(i, j);
            const double q = residuals.Q(i, j);
            a.a1.x(i, j) = -p * d2.fy(i, j);
            a.a1.y(i, j) = p * d2.fx(i, j) + q;
            a.a2.x(i, j) = p * d1.fy(i, j) - q;
            a.a2.y(i, j) = -p * d1.fx(i, j);
        }
    return a;
}

VectorField control_gradient(const PoissonSolver& solver,
                             const AdjointPair& adjoints) {
    return VectorField(
        solver.solve_dirichlet_zero(adjoint_divergence(adjoints.a1)),
        solver.solve_dirichlet_zero(adjoint_divergence(adjoints.a2)));
}

}  // namespace varigrid

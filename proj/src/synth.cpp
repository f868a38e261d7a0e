#include "varigrid/synth.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace varigrid {

namespace {

// sin(pi*k/n) with exact zeros where the factor vanishes, so fixed nodes
// stay fixed bitwise.
double sin_pi_frac(int k, int n) {
    if (k == 0 || k == n) return 0.0;
    return std::sin(std::numbers::pi * k / n);
}

double sin_2pi_frac(int k, int n) {
    if (k == 0 || k == n || 2 * k == n) return 0.0;
    return std::sin(2.0 * std::numbers::pi * k / n);
}

double min_interior_jacobian(const Transformation& T) {
    const ScalarField J = jacobian_det(T);
    const GridSpec& s = T.spec();
    double m = std::numeric_limits<double>::infinity();
    for (int j = 1; j < s.ny - 1; ++j)
        for (int i = 1; i < s.nx - 1; ++i) m = std::min(m, J(i, j));
    return m;
}

void require_orientation_preserving(const Transformation& T, double amplitude,
                                    const char* who) {
    const double mj = min_interior_jacobian(T);
    if (!(mj > 0.0))
        throw std::domain_error(std::string(who) + ": amplitude " +
                                std::to_string(amplitude) +
                                " gives min interior Jacobian " +
                                std::to_string(mj));
}

}  // namespace

Transformation default_fixed_boundary_map(const GridSpec& spec, double amplitude) {
    if (amplitude < 0.0)
        throw std::invalid_argument("default_fixed_boundary_map: negative amplitude");
    Transformation t(spec);
    for (int j = 0; j < spec.ny; ++j)
        for (int i = 0; i < spec.nx; ++i) {
            if (spec.is_interior(i, j)) {
                const double sx = sin_2pi_frac(i, spec.nx - 1) * sin_pi_frac(j, spec.ny - 1);
                const double sy = sin_pi_frac(i, spec.nx - 1) * sin_2pi_frac(j, spec.ny - 1);
                t.pos.x(i, j) = spec.x(i) + amplitude * spec.hx * sx;
                t.pos.y(i, j) = spec.y(j) + amplitude * spec.hy * sy;
            } else {
                t.pos.x(i, j) = spec.x(i);
                t.pos.y(i, j) = spec.y(j);
            }
        }
    require_orientation_preserving(t, amplitude, "default_fixed_boundary_map");
    return t;
}

Transformation default_moving_boundary_map(const GridSpec& spec, double amplitude) {
    Transformation t = default_fixed_boundary_map(spec, amplitude);
    const int nx = spec.nx, ny = spec.ny;
    // Tangential slide, transfinite-blended inward. Opposite edges slide in
    // opposite directions; the blend weights vanish at the opposite edge, so
    // the restriction to each edge is purely tangential and corners stay put.
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const double s = static_cast<double>(i) / (nx - 1);
            const double tt = static_cast<double>(j) / (ny - 1);
            const double wx = amplitude * spec.hx * sin_2pi_frac(i, nx - 1) * (1.0 - 2.0 * tt);
            const double wy = amplitude * spec.hy * sin_2pi_frac(j, ny - 1) * (2.0 * s - 1.0);
            t.pos.x(i, j) += wx;
            t.pos.y(i, j) += wy;
        }
    // Simple boundary check: node order along each edge must be preserved.
    for (int i = 0; i + 1 < nx; ++i) {
        if (!(t.pos.x(i + 1, 0) > t.pos.x(i, 0)) ||
            !(t.pos.x(i + 1, ny - 1) > t.pos.x(i, ny - 1)))
            throw std::domain_error(
                "default_moving_boundary_map: amplitude folds a horizontal edge");
    }
    for (int j = 0; j + 1 < ny; ++j) {
        if (!(t.pos.y(0, j + 1) > t.pos.y(0, j)) ||
            !(t.pos.y(nx - 1, j + 1) > t.pos.y(nx - 1, j)))
            throw std::domain_error(
                "default_moving_boundary_map: amplitude folds a vertical edge");
    }
    require_orientation_preserving(t, amplitude, "default_moving_boundary_map");
    return t;
}

MonitorPair monitors_from_map(const Transformation& T0) {
    return MonitorPair(jacobian_det(T0), curl2d(T0));
}

Transformation harmonic_boundary_match(const GridSpec& spec,
                                       const Transformation& target_boundary) {
    if (!(spec == target_boundary.spec()))
        throw std::invalid_argument("harmonic_boundary_match: spec mismatch");
    const PoissonSolver solver(spec);
    const ScalarField zero_rhs(spec);
    const Transformation id = identity_map(spec);

    ScalarField bx(spec), by(spec);
    for (int i = 0; i < spec.nx; ++i)
        for (int j : {0, spec.ny - 1}) {
            bx(i, j) = target_boundary.pos.x(i, j) - id.pos.x(i, j);
            by(i, j) = target_boundary.pos.y(i, j) - id.pos.y(i, j);
        }
    for (int j = 0; j < spec.ny; ++j)
        for (int i : {0, spec.nx - 1}) {
            bx(i, j) = target_boundary.pos.x(i, j) - id.pos.x(i, j);
            by(i, j) = target_boundary.pos.y(i, j) - id.pos.y(i, j);
        }

    const ScalarField wx = solver.solve_dirichlet(zero_rhs, bx);
    const ScalarField wy = solver.solve_dirichlet(zero_rhs, by);

    Transformation t = id;
    axpy(1.0, VectorField(wx, wy), t.pos);
    // Boundary positions are imposed exactly, not recovered via arithmetic.
    for (int i = 0; i < spec.nx; ++i)
        for (int j : {0, spec.ny - 1}) {
            t.pos.x(i, j) = target_boundary.pos.x(i, j);
            t.pos.y(i, j) = target_boundary.pos.y(i, j);
        }
    for (int j = 0; j < spec.ny; ++j)
        for (int i : {0, spec.nx - 1}) {
            t.pos.x(i, j) = target_boundary.pos.x(i, j);
            t.pos.y(i, j) = target_boundary.pos.y(i, j);
        }
    return t;
}

ScalarField normalize_monitor(const ScalarField& f0) {
    const GridSpec& s = f0.spec();
    double sum = 0.0;
    for (int j = 1; j < s.ny - 1; ++j)
        for (int i = 1; i < s.nx - 1; ++i) {
            if (!(f0(i, j) > 0.0))
                throw std::domain_error("normalize_monitor: f0 must be positive");
            sum += f0(i, j);
        }
    const double target = static_cast<double>(s.interior_count());
    const double scale = target / sum;  // cell weights cancel
    ScalarField out = f0;
    for (double& v : out.values()) v *= scale;
    return out;
}

}  // namespace varigrid

#include "varigrid/poisson.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace varigrid {

namespace {

// FFTW plan creation/destruction is not thread-safe; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

ScalarField laplacian5(const ScalarField& u) {
    const GridSpec& s = u.spec();
    const double ix = 1.0 / (s.hx * s.hx), iy = 1.0 / (s.hy * s.hy);
    ScalarField out(s);
    for (int j = 1; j < s.ny - 1; ++j)
        for (int i = 1; i < s.nx - 1; ++i)
            out(i, j) = (u(i - 1, j) + u(i + 1, j) - 2.0 * u(i, j)) * ix +
                        (u(i, j - 1) + u(i, j + 1) - 2.0 * u(i, j)) * iy;
    return out;
}

PoissonSolver::PoissonSolver(const GridSpec& spec) : spec_(spec) {
    if (spec.nx < 3 || spec.ny < 3)
        throw std::invalid_argument("PoissonSolver: degenerate grid");
    mx_ = spec.nx - 2;
    my_ = spec.ny - 2;
    lambda_x_.resize(mx_);
    for (int k = 1; k <= mx_; ++k) {
        const double s = std::sin(0.5 * std::numbers::pi * k / (mx_ + 1));
        lambda_x_[k - 1] = -4.0 * s * s / (spec.hx * spec.hx);
    }
    plan_buffer_.assign(static_cast<std::size_t>(mx_) * my_, 0.0);
    const int n[1] = {mx_};
    const fftw_r2r_kind kind[1] = {FFTW_RODFT00};
    std::scoped_lock lock(planner_mutex());
    // UNALIGNED so the plan can execute on any caller-owned scratch buffer.
    plan_ = fftw_plan_many_r2r(1, n, my_, plan_buffer_.data(), nullptr, 1, mx_,
                               plan_buffer_.data(), nullptr, 1, mx_, kind,
                               FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!plan_) throw std::runtime_error("PoissonSolver: FFTW planning failed");
}

PoissonSolver::~PoissonSolver() {
    if (plan_) {
        std::scoped_lock lock(planner_mutex());
        fftw_destroy_plan(plan_);
    }
}

ScalarField PoissonSolver::solve_dirichlet_zero(const ScalarField& rhs) const {
    if (!(rhs.spec() == spec_))
        throw std::invalid_argument("PoissonSolver: rhs on a different grid");
    std::vector<double> work(static_cast<std::size_t>(mx_) * my_);
    for (int j = 0; j < my_; ++j)
        for (int i = 0; i < mx_; ++i)
            work[static_cast<std::size_t>(j) * mx_ + i] = rhs(i + 1, j + 1);

    fftw_execute_r2r(plan_, work.data(), work.data());

    // One tridiagonal solve in y per x-mode: (lambda_k - 2/hy^2) on the
    // diagonal, 1/hy^2 off it. Strictly diagonally dominant, so plain
    // Thomas elimination is stable.
    const double ey = 1.0 / (spec_.hy * spec_.hy);
    std::vector<double> cp(my_), v(my_);
    for (int k = 0; k < mx_; ++k) {
        const double dk = lambda_x_[k] - 2.0 * ey;
        double m = dk;
        cp[0] = ey / m;
        v[0] = work[k] / m;
        for (int j = 1; j < my_; ++j) {
            m = dk - ey * cp[j - 1];
            cp[j] = ey / m;
            v[j] = (work[static_cast<std::size_t>(j) * mx_ + k] - ey * v[j - 1]) / m;
        }
        for (int j = my_ - 2; j >= 0; --j) v[j] -= cp[j] * v[j + 1];
        for (int j = 0; j < my_; ++j)
            work[static_cast<std::size_t>(j) * mx_ + k] = v[j];
    }

    fftw_execute_r2r(plan_, work.data(), work.data());

    // RODFT00 applied twice scales by 2*(mx+1).
    const double scale = 1.0 / (2.0 * (mx_ + 1));
    ScalarField u(spec_);
    for (int j = 0; j < my_; ++j)
        for (int i = 0; i < mx_; ++i)
            u(i + 1, j + 1) = work[static_cast<std::size_t>(j) * mx_ + i] * scale;
    return u;
}

ScalarField PoissonSolver::solve_dirichlet(const ScalarField& rhs,
                                           const ScalarField& boundary) const {
    if (!(rhs.spec() == spec_) || !(boundary.spec() == spec_))
        throw std::invalid_argument("PoissonSolver: field on a different grid");
    const int nx = spec_.nx, ny = spec_.ny;
    const double ix = 1.0 / (spec_.hx * spec_.hx), iy = 1.0 / (spec_.hy * spec_.hy);
    ScalarField rhs_eff = rhs;
    for (int j = 1; j < ny - 1; ++j) {
        rhs_eff(1, j) -= boundary(0, j) * ix;
        rhs_eff(nx - 2, j) -= boundary(nx - 1, j) * ix;
    }
    for (int i = 1; i < nx - 1; ++i) {
        rhs_eff(i, 1) -= boundary(i, 0) * iy;
        rhs_eff(i, ny - 2) -= boundary(i, ny - 1) * iy;
    }
    ScalarField u = solve_dirichlet_zero(rhs_eff);
    for (int i = 0; i < nx; ++i) {
        u(i, 0) = boundary(i, 0);
        u(i, ny - 1) = boundary(i, ny - 1);
    }
    for (int j = 0; j < ny; ++j) {
        u(0, j) = boundary(0, j);
        u(nx - 1, j) = boundary(nx - 1, j);
    }
    return u;
}

}  // namespace varigrid

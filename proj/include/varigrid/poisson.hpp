#pragma once

#include <vector>

#include "varigrid/field.hpp"

struct fftw_plan_s;

namespace varigrid {

/// 5-point discrete Laplacian with Dirichlet data taken from the field itself:
/// (u[i-1,j]+u[i+1,j]-2u[i,j])/hx^2 + (u[i,j-1]+u[i,j+1]-2u[i,j])/hy^2 at
/// interior nodes, zero at boundary entries.
ScalarField laplacian5(const ScalarField& u);

/// Direct solver for the 5-point Poisson equation with Dirichlet boundary
/// conditions: discrete sine transform along x, tridiagonal solves along y.
/// Exact for the discrete operator up to roundoff (relative residual below
/// 1e-12), which the descent loop's gradient consistency depends on.
///
/// A solver instance holds the DST plan for one GridSpec. The plan is
/// immutable after construction; solve calls are const, allocate their own
/// scratch, and are safe to run concurrently.
class PoissonSolver {
public:
    explicit PoissonSolver(const GridSpec& spec);
    ~PoissonSolver();
    PoissonSolver(const PoissonSolver&) = delete;
    PoissonSolver& operator=(const PoissonSolver&) = delete;

    const GridSpec& spec() const { return spec_; }

    /// Solves laplacian5(u) = rhs at interior nodes with u = 0 on the
    /// boundary. Only interior entries of rhs are read.
    ScalarField solve_dirichlet_zero(const ScalarField& rhs) const;

    /// Solves laplacian5(u) = rhs at interior nodes with u equal to
    /// `boundary` on the boundary (only boundary entries of that field are
    /// read; they are copied into the result bit-for-bit). Implemented by
    /// lifting the boundary data into the right-hand side at the first
    /// interior layer.
    ScalarField solve_dirichlet(const ScalarField& rhs,
                                const ScalarField& boundary) const;

private:
    GridSpec spec_;
    int mx_ = 0, my_ = 0;  // interior node counts
    std::vector<double> lambda_x_;
    std::vector<double> plan_buffer_;
    fftw_plan_s* plan_ = nullptr;
};

}  // namespace varigrid

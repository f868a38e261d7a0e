#pragma once

#include "varigrid/field.hpp"

namespace varigrid {

/// Residual fields of the objective: P is the Jacobian mismatch J(T)-f0,
/// Q the curl mismatch scaled by the weight, alpha*(curl(T)-g0). Both live
/// on interior nodes; boundary entries are zero by convention.
struct ResidualPair {
    ScalarField P;
    ScalarField Q;
};

struct PartialPair {
    ScalarField fx;
    ScalarField fy;
};

/// First partial derivatives of a nodal field.
///
/// Interior nodes use central differences (f[i+1]-f[i-1])/(2h). Boundary
/// entries are filled with second-order one-sided stencils; they exist for
/// diagnostic output only and are never used in the adjoint chain.
PartialPair partials(const ScalarField& f);

/// Jacobian determinant T1x*T2y - T1y*T2x of a transformation, from the
/// stencils of partials(). Interior values are the ones the objective sees.
ScalarField jacobian_det(const Transformation& T);

/// Scalar 2D curl T2x - T1y, same stencils as jacobian_det.
ScalarField curl2d(const Transformation& T);

/// Discrete divergence defined as the negative transpose of the interior
/// central-difference gradient under the interior quadrature:
///
///   sum_int (a . grad v) hx hy  ==  -sum_int adjoint_divergence(a) v hx hy
///
/// for every v vanishing on the boundary. Entries of a at boundary nodes are
/// treated as zero; near the boundary this differs from the plain central
/// stencil, and the transpose form is the one that keeps the computed
/// gradient the exact derivative of the discrete objective.
ScalarField adjoint_divergence(const VectorField& a);

}  // namespace varigrid

#pragma once

#include "varigrid/objective.hpp"

namespace varigrid {

/// Smooth test map with fixed boundary, in normalized coordinates
/// s,t in [0,1]:
///
///   T0 = id + amplitude * (hx*sin(2 pi s)*sin(pi t), hy*sin(pi s)*sin(2 pi t))
///
/// The displacement vanishes on the boundary exactly (boundary nodes are
/// assigned their grid coordinates, no arithmetic), and the map has nonzero
/// curl. Throws std::domain_error if the amplitude drives the minimum
/// interior Jacobian determinant to zero or below (checked numerically).
Transformation default_fixed_boundary_map(const GridSpec& spec, double amplitude);

/// default_fixed_boundary_map plus a tangential boundary perturbation:
/// boundary nodes slide along their edge by amplitude*sin(2 pi sigma) node
/// units (sigma the arclength fraction along the edge; corners stay fixed),
/// blended smoothly into the interior. Rejects amplitudes that fold an edge
/// (boundary nodes out of order) or make the interior Jacobian nonpositive.
Transformation default_moving_boundary_map(const GridSpec& spec, double amplitude);

/// f0 = jacobian_det(T0), g0 = curl2d(T0), with the same interior stencils
/// the objective uses, so exact recovery reaches ssd = 0.
MonitorPair monitors_from_map(const Transformation& T0);

/// Boundary-match base map: T* = id + w where each component of w is
/// discrete-harmonic (laplacian5(w) = 0) with Dirichlet data equal to
/// (target boundary - grid boundary). Boundary positions of the result are
/// copied from `target_boundary` bit-for-bit; only its boundary entries are
/// read.
Transformation harmonic_boundary_match(const GridSpec& spec,
                                       const Transformation& target_boundary);

/// Scales a positive Jacobian target so its interior quadrature sum equals
/// the area of the domain as measured by the same quadrature (a necessary
/// compatibility condition for a fixed-boundary map with prescribed
/// Jacobian). Throws std::domain_error if f0 is not positive at every
/// interior node.
ScalarField normalize_monitor(const ScalarField& f0);

}  // namespace varigrid

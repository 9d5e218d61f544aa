/// @file restrict.hpp
/// @brief Restriction of three-dimensional fields and problems to a hyperplane.
///
/// A restricted field carries three velocity components over the two in-plane
/// variables (x1, x2); x3 is eliminated through x3 = b - a1 x1 - a2 x2 and the
/// derivative rule D3 -> -a1^-1 D1 - a2^-1 D2.
#pragma once

#include "nslab/assembly.hpp"
#include "nslab/field.hpp"
#include "nslab/hyperplane.hpp"

namespace nslab {

/// Trigonometric interpolation of every component of `u3d` at (x1, x2, b - a1 x1 - a2 x2)
/// for each point of `grid2d`, wrapping periodically.
PhysicalField restrict_field(const PhysicalField& u3d, const Hyperplane& plane, const Grid& grid2d);

/// D1(u1 - a1^-1 u3) + D2(u2 - a2^-1 u3).
ScalarField restricted_divergence(const PhysicalField& u, const Hyperplane& plane);

/// u1 = D2 psi + a1^-1 u3, u2 = -D1 psi + a2^-1 u3, u3 as given; divergence-free by construction.
PhysicalField solenoidal_from_stream(const ScalarField& psi, const ScalarField& u3, const Hyperplane& plane);

struct ConstraintProjection {
    PhysicalField field;
    /// max |restricted divergence| before projection
    double constraint_residual = 0.0;
    /// L2 norm of the removed part
    double removed_norm = 0.0;
};

/// Enforces the restricted divergence constraint by mode-wise removal of the violating part.
ConstraintProjection enforce_constraint(const PhysicalField& u, const Hyperplane& plane);

struct RestrictedProblem {
    Hyperplane plane;
    EllipticParams elliptic;
    AdvectionMap advection;
    PhysicalField initial;
    PhysicalField forcing;
    double constraint_residual = 0.0;
    double removed_norm = 0.0;
};

/// Restricts initial data and a steady forcing; the initial data is projected onto the
/// constraint and the size of the correction is reported.
RestrictedProblem restrict_problem(const PhysicalField& u0_3d, const PhysicalField& f_3d,
                                   const Hyperplane& plane, const Grid& grid2d);

} // namespace nslab

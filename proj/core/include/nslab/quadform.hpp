/// @file quadform.hpp
/// @brief Symmetrized-gradient quadratic form, its minor-quotient coefficients and the
/// amplitude criterion for uniqueness.
#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "nslab/basis.hpp"
#include "nslab/field.hpp"
#include "nslab/integrate.hpp"

namespace nslab {

/// Pointwise symmetric part of a 3x3 velocity gradient.
struct SymmetrizedGradient {
    Grid grid;
    std::vector<Eigen::Matrix3d> matrices;
};

/// Throws DimensionError unless the gradient is 3D with three components.
SymmetrizedGradient symmetrize(const GradientTensor& grad);
Eigen::Matrix3d symmetrize(const Eigen::Matrix3d& grad) noexcept;

/// Completed-squares form F(w) = sum_j a_j wbar_j^2 with wbar = transform * w.
///
/// a1 = D1, a2 = D2 / D1, a3 = D3 / D2 in terms of the leading principal minors. When a
/// pivot is degenerate (|D1| <= 1e-12 ||S||, |D2| <= 1e-12 ||S||^2) the coefficients are
/// undefined: `fallback` is set and callers must use classify() instead.
struct LDLFactors {
    double a1 = 0.0;
    double a2 = 0.0;
    double a3 = 0.0;
    Eigen::Matrix3d transform = Eigen::Matrix3d::Identity();
    bool fallback = false;

    /// sum_j a_j (transform * w)_j^2; meaningless when `fallback` is set.
    double evaluate(const Eigen::Vector3d& w) const;
};

LDLFactors ldl_coefficients(const Eigen::Matrix3d& sym);
std::vector<LDLFactors> ldl_coefficients(const SymmetrizedGradient& sym);

enum class Definiteness { PositiveSemidefinite, Indefinite, NegativeSemidefinite, Zero };

const char* to_string(Definiteness d) noexcept;

/// Eigenvalue classification with tolerance 1e-12 * ||S||_F.
Definiteness classify(const Eigen::Matrix3d& sym);

/// Counts indexed by Definiteness. Points whose norm is below 1e-12 of the field maximum count as Zero.
using ClassHistogram = std::array<std::size_t, 4>;
ClassHistogram classify(const SymmetrizedGradient& sym);

/// Quadrature of w^T S w; throws GridMismatch for differing grids and InvalidField unless w has 3 components.
double integral_form(const SymmetrizedGradient& sym, const PhysicalField& w);

/// sum_ij ||D_i v_j||_2
double gradient_norm_sum(const GradientTensor& grad);

struct QuadFormCertificate {
    double time = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double c_used = 0.0;
    double nu = 0.0;
    double lambda1 = 0.0;
    bool holds = false;
    /// Only populated for 3D fields.
    ClassHistogram histogram{};
    bool has_histogram = false;
};

/// lhs = c^2 sum_ij ||D_i v_j||_2, rhs = nu lambda1^(1/4); holds iff rhs >= lhs.
QuadFormCertificate criterion_certificate(const PhysicalField& v, double c, double nu, double lambda1,
                                          double time = 0.0);

/// One certificate per stored snapshot, synthesized on `grid`.
std::vector<QuadFormCertificate> criterion_theorem31(const TrajectoryRecord& trajectory, const BasisSet& basis,
                                                     const Grid& grid, double c, double nu, double lambda1);

} // namespace nslab

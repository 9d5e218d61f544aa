/// @file basis.hpp
/// @brief Real divergence-free trigonometric Galerkin bases and the Leray projection.
///
/// A mode is w(x) = e * sqrt(2/V) * cos(kappa . x) or e * sqrt(2/V) * sin(kappa . x),
/// with kappa = (2 pi / period) k, k drawn from the half space whose first nonzero
/// entry is positive, and e a unit polarization orthogonal to the constraint normal
/// of k. For the standard Navier-Stokes basis that normal is kappa itself; for a
/// hyperplane-restricted basis (three components over two variables) it is the
/// effective wavevector (kappa1, kappa2, -(kappa1/a1 + kappa2/a2)).
///
/// Relation to complex exponentials: a cos mode with coefficient c contributes
/// c e sqrt(2/V) / 2 at +k and its conjugate at -k; a sin mode contributes
/// -i c e sqrt(2/V) / 2 at +k and its conjugate at -k.
#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nslab/field.hpp"
#include "nslab/hyperplane.hpp"
#include "nslab/spectral.hpp"

namespace nslab {

enum class Parity { Cos = 0, Sin = 1 };

struct Mode {
    std::array<int, 3> k{0, 0, 0};
    int polarization = 0;
    Parity parity = Parity::Cos;
    /// Unit polarization; entries past the component count are zero.
    std::array<double, 3> direction{0.0, 0.0, 0.0};
    /// Symbol of the basis' elliptic operator at kappa (|kappa|^2 for the standard basis).
    double eigenvalue = 0.0;
    /// |kappa|^2 over the spatial variables, so that ||grad w||_2^2 = gradient_weight.
    double gradient_weight = 0.0;
};

/// Ordered, L2-orthonormal set of divergence-free modes.
///
/// Modes are sorted by (eigenvalue, lexicographic k, polarization, parity) so that
/// coefficient vectors are portable between runs and tools.
class BasisSet {
public:
    BasisSet(int dimension, int components, int k_max, double period,
             std::optional<Hyperplane> plane, std::vector<Mode> modes);

    int dimension() const noexcept { return dimension_; }
    int components() const noexcept { return components_; }
    int k_max() const noexcept { return k_max_; }
    double period() const noexcept { return period_; }
    const std::optional<Hyperplane>& plane() const noexcept { return plane_; }

    std::size_t size() const noexcept { return modes_.size(); }
    const Mode& operator[](std::size_t i) const { return modes_.at(i); }
    const std::vector<Mode>& modes() const noexcept { return modes_; }

    /// Smallest eigenvalue (first mode).
    double lambda1() const noexcept { return modes_.front().eigenvalue; }
    /// Constraint normal for integer wavevector k (see file comment).
    std::array<double, 3> constraint_normal(const std::array<int, 3>& k) const noexcept;

    /// Smallest even grid size that represents every mode without touching Nyquist.
    int min_grid_points() const noexcept;
    /// Smallest even grid size on which trapezoid quadrature of triple products is exact.
    int min_quadrature_points() const noexcept;
    Grid quadrature_grid() const;

    bool same_discretization(const BasisSet& other) const noexcept;

private:
    int dimension_;
    int components_;
    int k_max_;
    double period_;
    std::optional<Hyperplane> plane_;
    std::vector<Mode> modes_;
};

/// Standard solenoidal basis (one polarization per wavevector in 2D, two in 3D).
/// Throws EmptyBasis if k_max < 1.
BasisSet build_basis(int dimension, int k_max, double period = two_pi);

/// Basis of three-component fields over (x1, x2) satisfying the restricted divergence
/// constraint of `plane`, two polarizations per wavevector.
BasisSet build_restricted_basis(const Hyperplane& plane, int k_max, double period = two_pi);

/// |2 pi k / period|^2.
double stokes_eigenvalue(const Mode& mode, double period) noexcept;

/// Mode-wise removal of the component parallel to kappa; Nyquist content is dropped.
PhysicalField leray_project(const PhysicalField& field);
/// Same for restricted fields, removing the component along the effective wavevector.
PhysicalField leray_project(const PhysicalField& field, const Hyperplane& plane);

/// Basis rendered on a concrete grid: scatter/gather between coefficients and
/// Fourier arrays.
class ModeTable {
public:
    /// Throws InvalidField if the grid is incompatible with the basis.
    ModeTable(const BasisSet& basis, const Grid& grid);

    const Grid& grid() const noexcept { return grid_; }
    std::size_t size() const noexcept { return entries_.size(); }

    /// One Fourier array per component.
    std::vector<spectral::ComplexArray> to_spectral(const Eigen::VectorXd& coefficients) const;
    Eigen::VectorXd from_spectral(const std::vector<spectral::ComplexArray>& spectra) const;

private:
    struct Entry {
        std::size_t plus = 0;
        std::size_t minus = 0;
        std::array<spectral::Complex, 3> phase{};
    };

    Grid grid_;
    int components_;
    double volume_;
    std::vector<Entry> entries_;
};

/// Orthogonal projection onto the basis span; throws InvalidField on incompatible fields.
Eigen::VectorXd analyze(const PhysicalField& field, const BasisSet& basis);
/// Throws InvalidCoefficients if coefficients.size() != basis.size().
PhysicalField synthesize(const Eigen::VectorXd& coefficients, const BasisSet& basis,
                         const Grid& grid);

/// Gram matrix <w_i, w_j> by trapezoid quadrature on `grid`.
Eigen::MatrixXd gram_matrix(const BasisSet& basis, const Grid& grid);

/// Text manifest, one line per mode: `index k polarization parity eigenvalue`.
std::string basis_manifest(const BasisSet& basis);

} // namespace nslab

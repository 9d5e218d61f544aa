/// @file assembly.hpp
/// @brief Discrete Galerkin system: mass, stiffness, trilinear form and projected forcing.
#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "nslab/basis.hpp"
#include "nslab/field.hpp"
#include "nslab/hyperplane.hpp"

namespace nslab {

/// Coefficients of the elliptic operator -(c11 D1^2 + c22 D2^2 + c12 D1 D2 + c33 D3^2).
/// c33 only enters for three-variable bases.
struct EllipticParams {
    double c11 = 1.0;
    double c22 = 1.0;
    double c12 = 0.0;
    double c33 = 1.0;

    static EllipticParams laplacian() noexcept { return {}; }
    /// (1 + a1^-2, 1 + a2^-2, 2 a1^-1 a2^-1), the Laplacian after eliminating D3.
    static EllipticParams from_plane(const Hyperplane& plane) noexcept;

    /// Fourier symbol at physical wavevector kappa for a basis over `variables` axes.
    double symbol(const std::array<double, 3>& kappa, int variables) const noexcept;
};

/// Selects the advecting velocity of the trilinear form.
class AdvectionMap {
public:
    static AdvectionMap standard() noexcept { return AdvectionMap(std::nullopt); }
    /// Effective velocity (u1 - u3/a1, u2 - u3/a2) over (x1, x2).
    static AdvectionMap restricted(const Hyperplane& plane) noexcept { return AdvectionMap(plane); }

    bool is_restricted() const noexcept { return plane_.has_value(); }
    const std::optional<Hyperplane>& plane() const noexcept { return plane_; }

    /// Effective velocity samples, one array per spatial axis.
    std::vector<std::vector<double>> effective_velocity(
        const std::vector<std::vector<double>>& velocity) const;

private:
    explicit AdvectionMap(std::optional<Hyperplane> plane) : plane_(plane) {}
    std::optional<Hyperplane> plane_;
};

/// Pseudospectral evaluation of the projected trilinear form on a dealiased grid.
///
/// apply(u, v)_i = <(adv(u) . grad) v, w_i>, exact for band-limited inputs because the
/// quadrature grid has at least 3 k_max + 1 points per axis. Stateless between calls;
/// safe to share across threads.
class TrilinearEvaluator {
public:
    /// `quadrature_points` = 0 selects basis.min_quadrature_points().
    /// Throws AliasingError if a smaller grid is requested.
    TrilinearEvaluator(const BasisSet& basis, AdvectionMap advection, int quadrature_points = 0);

    const Grid& grid() const noexcept { return table_.grid(); }
    const AdvectionMap& advection() const noexcept { return advection_; }

    Eigen::VectorXd apply(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;
    Eigen::VectorXd apply(const Eigen::VectorXd& u) const { return apply(u, u); }
    /// b(u, v, w) = <(adv(u) . grad) v, w>.
    double form(const Eigen::VectorXd& u, const Eigen::VectorXd& v, const Eigen::VectorXd& w) const;

private:
    int variables_;
    int components_;
    AdvectionMap advection_;
    ModeTable table_;
    std::vector<std::vector<double>> kappa_;  // per axis, per flat index, Nyquist zeroed
};

/// Dense h_ijk = b(w_j, w_k, w_i).
class TrilinearTensor {
public:
    explicit TrilinearTensor(std::size_t n) : n_(n), data_(n * n * n, 0.0) {}

    std::size_t size() const noexcept { return n_; }
    double& operator()(std::size_t i, std::size_t j, std::size_t k) { return data_[(i * n_ + j) * n_ + k]; }
    double operator()(std::size_t i, std::size_t j, std::size_t k) const
    {
        return data_[(i * n_ + j) * n_ + k];
    }
    /// sum_jk h_ijk a_j b_k
    Eigen::VectorXd contract(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const;

private:
    std::size_t n_;
    std::vector<double> data_;
};

/// Bases above this size are never assembled densely.
inline constexpr std::size_t kDenseTrilinearLimit = 200;

/// Throws NotElliptic if the symbol is not positive at every mode.
Eigen::SparseMatrix<double> assemble_stiffness(const BasisSet& basis, const EllipticParams& elliptic);

/// Throws AliasingError for quadrature grids below 3 k_max + 1 points and
/// InvalidArgument above kDenseTrilinearLimit modes.
TrilinearTensor assemble_trilinear(const BasisSet& basis, const AdvectionMap& advection,
                                   int quadrature_points = 0);

/// Writes `i j k value` for every |h_ijk| > threshold.
void write_trilinear_dump(std::ostream& out, const TrilinearTensor& tensor, double threshold = 1e-14);

using FieldSeries = std::function<PhysicalField(double t)>;

/// <f(t), w_i> for every requested time.
std::vector<Eigen::VectorXd> project_forcing(const FieldSeries& forcing, const std::vector<double>& times,
                                             const BasisSet& basis);

struct GalerkinSystem {
    BasisSet basis;
    EllipticParams elliptic;
    AdvectionMap advection;
    Eigen::SparseMatrix<double> mass;
    Eigen::SparseMatrix<double> stiffness;
    Eigen::VectorXd stiffness_diagonal;
    std::optional<TrilinearTensor> trilinear;
    TrilinearEvaluator evaluator;
};

/// The elliptic operator and advection rule follow the basis: Laplacian and standard
/// advection for a standard basis, plane-derived ones for a restricted basis.
GalerkinSystem assemble_system(const BasisSet& basis, bool dense_trilinear = false);
GalerkinSystem assemble_system(const BasisSet& basis, const EllipticParams& elliptic,
                               const AdvectionMap& advection, bool dense_trilinear = false);

struct CoercivityReport {
    /// nu * sum_i (||D1 u_i||^2 + ||D2 u_i||^2)
    double dirichlet_energy = 0.0;
    /// nu * <A_L u, u> with the plane-derived elliptic operator
    double elliptic_energy = 0.0;
    /// b_L(u, u, u) with the effective advecting velocity
    double advection_term = 0.0;
    double lhs = 0.0;
    bool holds = false;
};

/// Evaluates both sides of <nu A_L u + B_L u, u> >= nu sum ||grad u_i||^2 for a restricted field.
/// Throws NonSolenoidalInput if the restricted divergence exceeds 1e-10.
CoercivityReport coercivity_check(const PhysicalField& u, const Hyperplane& plane, double nu = 1.0);

/// |b(u, u, v)| / (||u||_4^2 ||grad v||_2) on physical fields (dealiased), the empirical
/// constant of the trilinear boundedness estimate.
double trilinear_bound_ratio(const PhysicalField& u, const PhysicalField& v, const AdvectionMap& advection);

} // namespace nslab

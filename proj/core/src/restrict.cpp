#include "nslab/restrict.hpp"

#include <cmath>

#include "nslab/basis.hpp"
#include "nslab/errors.hpp"
#include "nslab/spectral.hpp"

namespace nslab {

namespace {

using spectral::Complex;
using spectral::ComplexArray;

/// Per-axis Fourier basis value; Nyquist uses the real cosine split.
Complex axis_mode(int index, int n, double scale, double x)
{
    if (index == n / 2) {
        return Complex(std::cos(scale * (n / 2) * x), 0.0);
    }
    const double phase = scale * spectral::signed_wavenumber(index, n) * x;
    return Complex(std::cos(phase), std::sin(phase));
}

std::vector<double> restrict_component(const Grid& grid3d, std::span<const double> values,
                                       const Hyperplane& plane, const Grid& grid2d)
{
    const auto coeffs = spectral::forward(grid3d, values);
    const int n = grid3d.points();
    const int m = grid2d.points();
    const double scale = grid3d.wavenumber_scale();
    const double h = grid2d.spacing();

    // partial[x1][k2][k3] = sum_k1 c(k1,k2,k3) phi_k1(x1)
    const std::size_t nn = static_cast<std::size_t>(n) * n;
    std::vector<Complex> partial(static_cast<std::size_t>(m) * nn);
    for (int i1 = 0; i1 < m; ++i1) {
        const double x1 = i1 * h;
        std::vector<Complex> phi(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
            phi[k] = axis_mode(k, n, scale, x1);
        }
        Complex* out = &partial[static_cast<std::size_t>(i1) * nn];
        for (int k1 = 0; k1 < n; ++k1) {
            const Complex* row = &coeffs[static_cast<std::size_t>(k1) * nn];
            for (std::size_t r = 0; r < nn; ++r) {
                out[r] += row[r] * phi[k1];
            }
        }
    }

    std::vector<double> result(grid2d.size());
    std::vector<Complex> phi2(static_cast<std::size_t>(n));
    std::vector<Complex> phi3(static_cast<std::size_t>(n));
    std::vector<Complex> column(static_cast<std::size_t>(n));
    for (int i1 = 0; i1 < m; ++i1) {
        const Complex* p1 = &partial[static_cast<std::size_t>(i1) * nn];
        for (int i2 = 0; i2 < m; ++i2) {
            const double x1 = i1 * h;
            const double x2 = i2 * h;
            const double x3 = plane.height(x1, x2);
            for (int k = 0; k < n; ++k) {
                phi2[k] = axis_mode(k, n, scale, x2);
                phi3[k] = axis_mode(k, n, scale, x3);
            }
            std::fill(column.begin(), column.end(), Complex(0.0, 0.0));
            for (int k2 = 0; k2 < n; ++k2) {
                const Complex* row = p1 + static_cast<std::size_t>(k2) * n;
                for (int k3 = 0; k3 < n; ++k3) {
                    column[k3] += row[k3] * phi2[k2];
                }
            }
            Complex sum(0.0, 0.0);
            for (int k3 = 0; k3 < n; ++k3) {
                sum += column[k3] * phi3[k3];
            }
            result[grid2d.flat_index({i1, i2, 0})] = sum.real();
        }
    }
    return result;
}

} // namespace

PhysicalField restrict_field(const PhysicalField& u3d, const Hyperplane& plane, const Grid& grid2d)
{
    if (u3d.grid().dimension() != 3) {
        throw InvalidField("restrict_field expects a field on a 3D grid");
    }
    if (grid2d.dimension() != 2) {
        throw InvalidField("restrict_field target grid must be 2D");
    }
    if (grid2d.period() != u3d.grid().period()) {
        throw GridMismatch("restricted grid must share the period of the 3D grid");
    }
    std::vector<std::vector<double>> components;
    for (int c = 0; c < u3d.component_count(); ++c) {
        components.push_back(restrict_component(u3d.grid(), u3d.component(c), plane, grid2d));
    }
    return PhysicalField(grid2d, std::move(components));
}

ScalarField restricted_divergence(const PhysicalField& u, const Hyperplane& plane)
{
    const Grid& grid = u.grid();
    if (grid.dimension() != 2 || u.component_count() != 3) {
        throw InvalidField("restricted divergence expects 3 components over 2 variables");
    }
    const auto c1 = spectral::forward(grid, u.component(0));
    const auto c2 = spectral::forward(grid, u.component(1));
    const auto c3 = spectral::forward(grid, u.component(2));
    ComplexArray first(grid.size());
    ComplexArray second(grid.size());
    for (std::size_t p = 0; p < grid.size(); ++p) {
        first[p] = c1[p] - plane.inv_a1() * c3[p];
        second[p] = c2[p] - plane.inv_a2() * c3[p];
    }
    auto d1 = spectral::derivative(grid, first, 0);
    const auto d2 = spectral::derivative(grid, second, 1);
    for (std::size_t p = 0; p < grid.size(); ++p) {
        d1[p] += d2[p];
    }
    return ScalarField{grid, spectral::backward(grid, std::move(d1))};
}

PhysicalField solenoidal_from_stream(const ScalarField& psi, const ScalarField& u3, const Hyperplane& plane)
{
    if (!(psi.grid == u3.grid)) {
        throw GridMismatch("stream function and third component must share a grid");
    }
    const Grid& grid = psi.grid;
    if (grid.dimension() != 2) {
        throw InvalidField("stream function must live on a 2D grid");
    }
    const auto cpsi = spectral::forward(grid, psi.values);
    const auto d1 = spectral::backward(grid, spectral::derivative(grid, cpsi, 0));
    const auto d2 = spectral::backward(grid, spectral::derivative(grid, cpsi, 1));
    PhysicalField out(grid, 3);
    auto o1 = out.component(0);
    auto o2 = out.component(1);
    auto o3 = out.component(2);
    for (std::size_t p = 0; p < grid.size(); ++p) {
        o1[p] = d2[p] + plane.inv_a1() * u3.values[p];
        o2[p] = -d1[p] + plane.inv_a2() * u3.values[p];
        o3[p] = u3.values[p];
    }
    return out;
}

ConstraintProjection enforce_constraint(const PhysicalField& u, const Hyperplane& plane)
{
    const double residual = restricted_divergence(u, plane).max_abs();
    auto projected = leray_project(u, plane);
    const double removed = lp_norm(u - projected, 2.0);
    return ConstraintProjection{std::move(projected), residual, removed};
}

RestrictedProblem restrict_problem(const PhysicalField& u0_3d, const PhysicalField& f_3d,
                                   const Hyperplane& plane, const Grid& grid2d)
{
    if (u0_3d.component_count() != 3 || f_3d.component_count() != 3) {
        throw InvalidField("restrict_problem expects three-component 3D data");
    }
    auto initial = enforce_constraint(restrict_field(u0_3d, plane, grid2d), plane);
    auto forcing = restrict_field(f_3d, plane, grid2d);
    return RestrictedProblem{plane,
                             EllipticParams::from_plane(plane),
                             AdvectionMap::restricted(plane),
                             std::move(initial.field),
                             std::move(forcing),
                             initial.constraint_residual,
                             initial.removed_norm};
}

} // namespace nslab

/// @file field.hpp
/// @brief Physical-space velocity fields, spectral derivatives and discrete norms.
#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "nslab/grid.hpp"

namespace nslab {

/// Scalar samples on a grid.
struct ScalarField {
    Grid grid;
    std::vector<double> values;

    double max_abs() const noexcept;
};

/// Vector field samples: one array per component, each of length grid.size().
///
/// The component count is declared independently of the grid dimension so that
/// hyperplane-restricted fields (three components over two variables) are first class.
class PhysicalField {
public:
    using Sampler = std::function<std::array<double, 3>(const std::array<double, 3>& x)>;

    /// Zero field. Throws InvalidField if `components` is not 1..3.
    PhysicalField(const Grid& grid, int components);
    /// Throws InvalidField if the storage shape disagrees with the grid.
    PhysicalField(const Grid& grid, std::vector<std::vector<double>> components);

    /// Samples `fn` at every grid point; only the first `components` entries are used.
    static PhysicalField from_function(const Grid& grid, int components, const Sampler& fn);

    const Grid& grid() const noexcept { return grid_; }
    int component_count() const noexcept { return static_cast<int>(data_.size()); }
    std::span<const double> component(int c) const;
    std::span<double> component(int c);

    PhysicalField& operator+=(const PhysicalField& other);
    PhysicalField& operator-=(const PhysicalField& other);
    PhysicalField& operator*=(double factor);

    double max_abs() const noexcept;

private:
    Grid grid_;
    std::vector<std::vector<double>> data_;
};

PhysicalField operator+(PhysicalField lhs, const PhysicalField& rhs);
PhysicalField operator-(PhysicalField lhs, const PhysicalField& rhs);
PhysicalField operator*(double factor, PhysicalField field);

/// Velocity gradient D_i v_k for every spatial axis i and component k.
struct GradientTensor {
    Grid grid;
    int components = 0;
    /// entries[axis * components + component]
    std::vector<std::vector<double>> entries;

    std::span<const double> at(int axis, int component) const;
    int axes() const noexcept { return grid.dimension(); }
};

struct NormReport {
    double l2 = 0.0;
    double l4 = 0.0;
    double h1_semi = 0.0;
};

GradientTensor gradient(const PhysicalField& field);
/// Requires component_count == grid dimension.
ScalarField divergence(const PhysicalField& field);
NormReport norms(const PhysicalField& field);

/// Trapezoid-rule integral of a scalar sample array over the periodic box.
double integrate(const Grid& grid, std::span<const double> values);
/// L^p norm of the pointwise Euclidean magnitude; p = infinity gives the max norm.
double lp_norm(const PhysicalField& field, double p);
/// L^2 norm of a gradient tensor (Frobenius magnitude pointwise).
double l2_norm(const GradientTensor& grad);
double inner_product(const PhysicalField& a, const PhysicalField& b);

/// Zero-padded (or truncated) trigonometric resampling of every component.
PhysicalField resample(const PhysicalField& field, const Grid& target);

/// Points needed for exact trapezoid quadrature of cubic products of fields on `grid`:
/// the smallest even count >= ceil(3n/2).
int dealiased_points(int points) noexcept;

/// Taylor-Green vortex: (A sin x cos y, -A cos x sin y) in 2D, with an extra cos z factor
/// and zero third component in 3D (coordinates scaled to the grid period).
PhysicalField taylor_green(const Grid& grid, double amplitude = 1.0);

} // namespace nslab

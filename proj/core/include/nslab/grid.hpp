/// @file grid.hpp
/// @brief Uniform periodic grids on the box [0, period)^d.
#pragma once

#include <array>
#include <cstddef>
#include <numbers>

namespace nslab {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Uniform periodic grid with the same number of points and period on every axis.
///
/// Flat indices are row-major with the first axis slowest:
/// 2D `i0 * n + i1`, 3D `(i0 * n + i1) * n + i2`.
class Grid {
public:
    Grid() : Grid(2, 16, two_pi) {}
    /// Throws InvalidGrid unless dimension is 2 or 3, points is even and >= 4,
    /// and period is finite and positive.
    Grid(int dimension, int points, double period = two_pi);

    int dimension() const noexcept { return dimension_; }
    int points() const noexcept { return points_; }
    double period() const noexcept { return period_; }

    std::size_t size() const noexcept;
    double spacing() const noexcept { return period_ / points_; }
    double volume() const noexcept;
    double cell_volume() const noexcept;
    /// Factor 2*pi/period converting integer wavenumbers to physical ones.
    double wavenumber_scale() const noexcept { return two_pi / period_; }

    std::array<int, 3> multi_index(std::size_t flat) const noexcept;
    /// Periodic wrap is applied to each entry of `index`.
    std::size_t flat_index(std::array<int, 3> index) const noexcept;
    std::array<double, 3> coordinate(std::size_t flat) const noexcept;

    bool operator==(const Grid&) const = default;

private:
    int dimension_;
    int points_;
    double period_;
};

} // namespace nslab

#include "nslab/grid.hpp"

#include <cmath>
#include <string>

#include "nslab/errors.hpp"

namespace nslab {

Grid::Grid(int dimension, int points, double period)
    : dimension_(dimension), points_(points), period_(period)
{
    if (dimension != 2 && dimension != 3) {
        throw InvalidGrid("grid dimension must be 2 or 3, got " + std::to_string(dimension));
    }
    if (points < 4 || points % 2 != 0) {
        throw InvalidGrid("points_per_axis must be even and >= 4, got " + std::to_string(points));
    }
    if (!(period > 0.0) || !std::isfinite(period)) {
        throw InvalidGrid("period must be positive and finite");
    }
}

std::size_t Grid::size() const noexcept
{
    std::size_t total = 1;
    for (int axis = 0; axis < dimension_; ++axis) {
        total *= static_cast<std::size_t>(points_);
    }
    return total;
}

double Grid::volume() const noexcept
{
    return std::pow(period_, dimension_);
}

double Grid::cell_volume() const noexcept
{
    return std::pow(spacing(), dimension_);
}

std::array<int, 3> Grid::multi_index(std::size_t flat) const noexcept
{
    std::array<int, 3> index{0, 0, 0};
    const auto n = static_cast<std::size_t>(points_);
    for (int axis = dimension_ - 1; axis >= 0; --axis) {
        index[axis] = static_cast<int>(flat % n);
        flat /= n;
    }
    return index;
}

std::size_t Grid::flat_index(std::array<int, 3> index) const noexcept
{
    std::size_t flat = 0;
    for (int axis = 0; axis < dimension_; ++axis) {
        int wrapped = index[axis] % points_;
        if (wrapped < 0) {
            wrapped += points_;
        }
        flat = flat * static_cast<std::size_t>(points_) + static_cast<std::size_t>(wrapped);
    }
    return flat;
}

std::array<double, 3> Grid::coordinate(std::size_t flat) const noexcept
{
    const auto index = multi_index(flat);
    std::array<double, 3> x{0.0, 0.0, 0.0};
    for (int axis = 0; axis < dimension_; ++axis) {
        x[axis] = index[axis] * spacing();
    }
    return x;
}

} // namespace nslab

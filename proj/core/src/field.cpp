#include "nslab/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "nslab/errors.hpp"
#include "nslab/spectral.hpp"

namespace nslab {

double ScalarField::max_abs() const noexcept
{
    double m = 0.0;
    for (double v : values) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

PhysicalField::PhysicalField(const Grid& grid, int components) : grid_(grid)
{
    if (components < 1 || components > 3) {
        throw InvalidField("component count must be 1..3, got " + std::to_string(components));
    }
    data_.assign(static_cast<std::size_t>(components), std::vector<double>(grid.size(), 0.0));
}

PhysicalField::PhysicalField(const Grid& grid, std::vector<std::vector<double>> components)
    : grid_(grid), data_(std::move(components))
{
    if (data_.empty() || data_.size() > 3) {
        throw InvalidField("component count must be 1..3, got " + std::to_string(data_.size()));
    }
    for (const auto& c : data_) {
        if (c.size() != grid.size()) {
            throw InvalidField("component length " + std::to_string(c.size()) +
                               " does not match grid size " + std::to_string(grid.size()));
        }
    }
}

PhysicalField PhysicalField::from_function(const Grid& grid, int components, const Sampler& fn)
{
    PhysicalField field(grid, components);
    for (std::size_t p = 0; p < grid.size(); ++p) {
        const auto value = fn(grid.coordinate(p));
        for (int c = 0; c < components; ++c) {
            field.data_[c][p] = value[c];
        }
    }
    return field;
}

std::span<const double> PhysicalField::component(int c) const
{
    if (c < 0 || c >= component_count()) {
        throw InvalidField("component index out of range");
    }
    return data_[static_cast<std::size_t>(c)];
}

std::span<double> PhysicalField::component(int c)
{
    if (c < 0 || c >= component_count()) {
        throw InvalidField("component index out of range");
    }
    return data_[static_cast<std::size_t>(c)];
}

namespace {

void require_compatible(const PhysicalField& a, const PhysicalField& b)
{
    if (!(a.grid() == b.grid()) || a.component_count() != b.component_count()) {
        throw GridMismatch("fields live on different grids or have different component counts");
    }
}

} // namespace

PhysicalField& PhysicalField::operator+=(const PhysicalField& other)
{
    require_compatible(*this, other);
    for (std::size_t c = 0; c < data_.size(); ++c) {
        for (std::size_t p = 0; p < data_[c].size(); ++p) {
            data_[c][p] += other.data_[c][p];
        }
    }
    return *this;
}

PhysicalField& PhysicalField::operator-=(const PhysicalField& other)
{
    require_compatible(*this, other);
    for (std::size_t c = 0; c < data_.size(); ++c) {
        for (std::size_t p = 0; p < data_[c].size(); ++p) {
            data_[c][p] -= other.data_[c][p];
        }
    }
    return *this;
}

PhysicalField& PhysicalField::operator*=(double factor)
{
    for (auto& c : data_) {
        for (auto& v : c) {
            v *= factor;
        }
    }
    return *this;
}

double PhysicalField::max_abs() const noexcept
{
    double m = 0.0;
    for (const auto& c : data_) {
        for (double v : c) {
            m = std::max(m, std::abs(v));
        }
    }
    return m;
}

PhysicalField operator+(PhysicalField lhs, const PhysicalField& rhs)
{
    lhs += rhs;
    return lhs;
}

PhysicalField operator-(PhysicalField lhs, const PhysicalField& rhs)
{
    lhs -= rhs;
    return lhs;
}

PhysicalField operator*(double factor, PhysicalField field)
{
    field *= factor;
    return field;
}

std::span<const double> GradientTensor::at(int axis, int component) const
{
    if (axis < 0 || axis >= axes() || component < 0 || component >= components) {
        throw InvalidField("gradient entry out of range");
    }
    return entries[static_cast<std::size_t>(axis * components + component)];
}

GradientTensor gradient(const PhysicalField& field)
{
    const Grid& grid = field.grid();
    GradientTensor grad{grid, field.component_count(), {}};
    grad.entries.resize(static_cast<std::size_t>(grid.dimension() * field.component_count()));
    for (int c = 0; c < field.component_count(); ++c) {
        const auto coefficients = spectral::forward(grid, field.component(c));
        for (int axis = 0; axis < grid.dimension(); ++axis) {
            grad.entries[static_cast<std::size_t>(axis * grad.components + c)] =
                spectral::backward(grid, spectral::derivative(grid, coefficients, axis));
        }
    }
    return grad;
}

ScalarField divergence(const PhysicalField& field)
{
    const Grid& grid = field.grid();
    if (field.component_count() != grid.dimension()) {
        throw InvalidField("divergence needs one component per spatial axis");
    }
    spectral::ComplexArray sum(grid.size(), spectral::Complex(0.0, 0.0));
    for (int axis = 0; axis < grid.dimension(); ++axis) {
        const auto d = spectral::derivative(grid, spectral::forward(grid, field.component(axis)), axis);
        for (std::size_t p = 0; p < sum.size(); ++p) {
            sum[p] += d[p];
        }
    }
    return ScalarField{grid, spectral::backward(grid, std::move(sum))};
}

double integrate(const Grid& grid, std::span<const double> values)
{
    if (values.size() != grid.size()) {
        throw InvalidField("sample count does not match grid");
    }
    double total = 0.0;
    for (double v : values) {
        total += v;
    }
    return total * grid.cell_volume();
}

double lp_norm(const PhysicalField& field, double p)
{
    const Grid& grid = field.grid();
    std::vector<double> magnitude(grid.size(), 0.0);
    for (int c = 0; c < field.component_count(); ++c) {
        const auto values = field.component(c);
        for (std::size_t i = 0; i < magnitude.size(); ++i) {
            magnitude[i] += values[i] * values[i];
        }
    }
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : magnitude) {
            m = std::max(m, std::sqrt(v));
        }
        return m;
    }
    if (!(p >= 1.0)) {
        throw InvalidField("L^p norm needs p >= 1");
    }
    for (auto& v : magnitude) {
        v = p == 2.0 ? v : std::pow(v, 0.5 * p);
    }
    return std::pow(integrate(grid, magnitude), 1.0 / p);
}

double l2_norm(const GradientTensor& grad)
{
    std::vector<double> squared(grad.grid.size(), 0.0);
    for (const auto& entry : grad.entries) {
        for (std::size_t i = 0; i < squared.size(); ++i) {
            squared[i] += entry[i] * entry[i];
        }
    }
    return std::sqrt(integrate(grad.grid, squared));
}

double inner_product(const PhysicalField& a, const PhysicalField& b)
{
    require_compatible(a, b);
    std::vector<double> product(a.grid().size(), 0.0);
    for (int c = 0; c < a.component_count(); ++c) {
        const auto x = a.component(c);
        const auto y = b.component(c);
        for (std::size_t i = 0; i < product.size(); ++i) {
            product[i] += x[i] * y[i];
        }
    }
    return integrate(a.grid(), product);
}

NormReport norms(const PhysicalField& field)
{
    return NormReport{lp_norm(field, 2.0), lp_norm(field, 4.0), l2_norm(gradient(field))};
}

PhysicalField resample(const PhysicalField& field, const Grid& target)
{
    std::vector<std::vector<double>> components;
    components.reserve(static_cast<std::size_t>(field.component_count()));
    for (int c = 0; c < field.component_count(); ++c) {
        components.push_back(spectral::resample(field.grid(), field.component(c), target));
    }
    return PhysicalField(target, std::move(components));
}

int dealiased_points(int points) noexcept
{
    int padded = (3 * points + 1) / 2;
    if (padded % 2 != 0) {
        ++padded;
    }
    return padded;
}

PhysicalField taylor_green(const Grid& grid, double amplitude)
{
    const double scale = grid.wavenumber_scale();
    const bool three = grid.dimension() == 3;
    return PhysicalField::from_function(grid, grid.dimension(), [&](const std::array<double, 3>& x) {
        const double z = three ? std::cos(scale * x[2]) : 1.0;
        return std::array<double, 3>{amplitude * std::sin(scale * x[0]) * std::cos(scale * x[1]) * z,
                                     -amplitude * std::cos(scale * x[0]) * std::sin(scale * x[1]) * z, 0.0};
    });
}

} // namespace nslab

#include "nslab/basis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <tuple>

#include "nslab/errors.hpp"

namespace nslab {

namespace {

using spectral::Complex;
using spectral::ComplexArray;

std::array<double, 3> cross(const std::array<double, 3>& a, const std::array<double, 3>& b)
{
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double norm3(const std::array<double, 3>& a)
{
    return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
}

std::array<double, 3> unit(std::array<double, 3> a)
{
    const double n = norm3(a);
    for (auto& v : a) {
        v /= n;
    }
    return a;
}

/// Two unit vectors spanning the plane orthogonal to `normal`.
std::array<std::array<double, 3>, 2> orthogonal_pair(const std::array<double, 3>& normal)
{
    int axis = 0;
    for (int i = 1; i < 3; ++i) {
        if (std::abs(normal[i]) < std::abs(normal[axis])) {
            axis = i;
        }
    }
    std::array<double, 3> e_axis{0.0, 0.0, 0.0};
    e_axis[axis] = 1.0;
    const auto first = unit(cross(normal, e_axis));
    const auto second = unit(cross(unit(normal), first));
    return {first, second};
}

bool in_half_space(const std::array<int, 3>& k)
{
    for (int v : k) {
        if (v != 0) {
            return v > 0;
        }
    }
    return false;
}

std::vector<std::array<int, 3>> half_space_wavevectors(int dimension, int k_max)
{
    std::vector<std::array<int, 3>> out;
    const int k3_max = dimension == 3 ? k_max : 0;
    for (int k1 = -k_max; k1 <= k_max; ++k1) {
        for (int k2 = -k_max; k2 <= k_max; ++k2) {
            for (int k3 = -k3_max; k3 <= k3_max; ++k3) {
                const std::array<int, 3> k{k1, k2, k3};
                if (in_half_space(k)) {
                    out.push_back(k);
                }
            }
        }
    }
    return out;
}

void sort_modes(std::vector<Mode>& modes)
{
    std::sort(modes.begin(), modes.end(), [](const Mode& a, const Mode& b) {
        return std::make_tuple(a.eigenvalue, a.k, a.polarization, static_cast<int>(a.parity)) <
               std::make_tuple(b.eigenvalue, b.k, b.polarization, static_cast<int>(b.parity));
    });
}

void append_parities(std::vector<Mode>& modes, Mode mode)
{
    mode.parity = Parity::Cos;
    modes.push_back(mode);
    mode.parity = Parity::Sin;
    modes.push_back(mode);
}

void require_field_matches(const PhysicalField& field, const BasisSet& basis)
{
    const Grid& grid = field.grid();
    if (grid.dimension() != basis.dimension() || field.component_count() != basis.components()) {
        throw InvalidField("field shape does not match the basis");
    }
}

} // namespace

BasisSet::BasisSet(int dimension, int components, int k_max, double period,
                   std::optional<Hyperplane> plane, std::vector<Mode> modes)
    : dimension_(dimension), components_(components), k_max_(k_max), period_(period),
      plane_(plane), modes_(std::move(modes))
{
    if (modes_.empty()) {
        throw EmptyBasis("basis has no modes");
    }
}

std::array<double, 3> BasisSet::constraint_normal(const std::array<int, 3>& k) const noexcept
{
    const double scale = two_pi / period_;
    if (plane_) {
        return plane_->effective_wavevector(scale * k[0], scale * k[1]);
    }
    return {scale * k[0], scale * k[1], dimension_ == 3 ? scale * k[2] : 0.0};
}

int BasisSet::min_grid_points() const noexcept
{
    return 2 * k_max_ + 2;
}

int BasisSet::min_quadrature_points() const noexcept
{
    int points = 3 * k_max_ + 1;
    if (points % 2 != 0) {
        ++points;
    }
    return std::max(points, 4);
}

Grid BasisSet::quadrature_grid() const
{
    return Grid(dimension_, min_quadrature_points(), period_);
}

bool BasisSet::same_discretization(const BasisSet& other) const noexcept
{
    if (dimension_ != other.dimension_ || components_ != other.components_ ||
        k_max_ != other.k_max_ || period_ != other.period_ || plane_ != other.plane_ ||
        modes_.size() != other.modes_.size()) {
        return false;
    }
    for (std::size_t i = 0; i < modes_.size(); ++i) {
        const auto& a = modes_[i];
        const auto& b = other.modes_[i];
        if (a.k != b.k || a.polarization != b.polarization || a.parity != b.parity) {
            return false;
        }
    }
    return true;
}

BasisSet build_basis(int dimension, int k_max, double period)
{
    if (k_max < 1) {
        throw EmptyBasis("k_max must be >= 1");
    }
    if (dimension != 2 && dimension != 3) {
        throw InvalidArgument("basis dimension must be 2 or 3");
    }
    if (!(period > 0.0)) {
        throw InvalidArgument("period must be positive");
    }
    const double scale = two_pi / period;
    std::vector<Mode> modes;
    for (const auto& k : half_space_wavevectors(dimension, k_max)) {
        const std::array<double, 3> kappa{scale * k[0], scale * k[1], scale * k[2]};
        const double kappa2 = kappa[0] * kappa[0] + kappa[1] * kappa[1] + kappa[2] * kappa[2];
        Mode mode;
        mode.k = k;
        mode.eigenvalue = kappa2;
        mode.gradient_weight = kappa2;
        if (dimension == 2) {
            mode.direction = unit({-kappa[1], kappa[0], 0.0});
            mode.polarization = 0;
            append_parities(modes, mode);
        } else {
            const auto pair = orthogonal_pair(kappa);
            for (int p = 0; p < 2; ++p) {
                mode.direction = pair[p];
                mode.polarization = p;
                append_parities(modes, mode);
            }
        }
    }
    sort_modes(modes);
    return BasisSet(dimension, dimension, k_max, period, std::nullopt, std::move(modes));
}

BasisSet build_restricted_basis(const Hyperplane& plane, int k_max, double period)
{
    if (k_max < 1) {
        throw EmptyBasis("k_max must be >= 1");
    }
    if (!(period > 0.0)) {
        throw InvalidArgument("period must be positive");
    }
    const double scale = two_pi / period;
    std::vector<Mode> modes;
    for (const auto& k : half_space_wavevectors(2, k_max)) {
        const auto normal = plane.effective_wavevector(scale * k[0], scale * k[1]);
        Mode mode;
        mode.k = k;
        mode.eigenvalue = normal[0] * normal[0] + normal[1] * normal[1] + normal[2] * normal[2];
        mode.gradient_weight = normal[0] * normal[0] + normal[1] * normal[1];
        const auto pair = orthogonal_pair(normal);
        for (int p = 0; p < 2; ++p) {
            mode.direction = pair[p];
            mode.polarization = p;
            append_parities(modes, mode);
        }
    }
    sort_modes(modes);
    return BasisSet(2, 3, k_max, period, plane, std::move(modes));
}

double stokes_eigenvalue(const Mode& mode, double period) noexcept
{
    const double scale = two_pi / period;
    double sum = 0.0;
    for (int v : mode.k) {
        sum += (scale * v) * (scale * v);
    }
    return sum;
}

namespace {

PhysicalField project_along(const PhysicalField& field,
                            const std::function<std::array<double, 3>(double, double, double)>& normal_of)
{
    const Grid& grid = field.grid();
    const int nc = field.component_count();
    std::vector<ComplexArray> spectra;
    for (int c = 0; c < nc; ++c) {
        spectra.push_back(spectral::forward(grid, field.component(c)));
    }
    const double scale = grid.wavenumber_scale();
    for (std::size_t p = 0; p < grid.size(); ++p) {
        if (spectral::has_nyquist(grid, p)) {
            for (auto& s : spectra) {
                s[p] = 0.0;
            }
            continue;
        }
        const auto k = spectral::integer_wavevector(grid, p);
        if (k[0] == 0 && k[1] == 0 && k[2] == 0) {
            continue;
        }
        const auto n = normal_of(scale * k[0], scale * k[1], scale * k[2]);
        double n2 = 0.0;
        Complex dot(0.0, 0.0);
        for (int c = 0; c < nc; ++c) {
            n2 += n[c] * n[c];
            dot += n[c] * spectra[c][p];
        }
        for (int c = 0; c < nc; ++c) {
            spectra[c][p] -= n[c] * dot / n2;
        }
    }
    std::vector<std::vector<double>> components;
    for (auto& s : spectra) {
        components.push_back(spectral::backward(grid, std::move(s)));
    }
    return PhysicalField(grid, std::move(components));
}

} // namespace

PhysicalField leray_project(const PhysicalField& field)
{
    if (field.component_count() != field.grid().dimension()) {
        throw InvalidField("Leray projection needs one component per spatial axis");
    }
    return project_along(field, [](double k1, double k2, double k3) {
        return std::array<double, 3>{k1, k2, k3};
    });
}

PhysicalField leray_project(const PhysicalField& field, const Hyperplane& plane)
{
    if (field.grid().dimension() != 2 || field.component_count() != 3) {
        throw InvalidField("restricted projection needs three components over two variables");
    }
    return project_along(field, [&plane](double k1, double k2, double) {
        return plane.effective_wavevector(k1, k2);
    });
}

ModeTable::ModeTable(const BasisSet& basis, const Grid& grid)
    : grid_(grid), components_(basis.components()), volume_(grid.volume())
{
    if (grid.dimension() != basis.dimension() || grid.period() != basis.period()) {
        throw InvalidField("grid dimension/period does not match the basis");
    }
    if (grid.points() < basis.min_grid_points()) {
        throw InvalidField("grid with " + std::to_string(grid.points()) +
                           " points per axis cannot represent k_max = " +
                           std::to_string(basis.k_max()));
    }
    const double amplitude = std::sqrt(2.0 / volume_) * 0.5;
    entries_.reserve(basis.size());
    for (const auto& mode : basis.modes()) {
        Entry entry;
        entry.plus = grid.flat_index(mode.k);
        entry.minus = grid.flat_index({-mode.k[0], -mode.k[1], -mode.k[2]});
        for (int c = 0; c < 3; ++c) {
            const double a = amplitude * mode.direction[c];
            entry.phase[c] = mode.parity == Parity::Cos ? Complex(a, 0.0) : Complex(0.0, -a);
        }
        entries_.push_back(entry);
    }
}

std::vector<ComplexArray> ModeTable::to_spectral(const Eigen::VectorXd& coefficients) const
{
    if (static_cast<std::size_t>(coefficients.size()) != entries_.size()) {
        throw InvalidCoefficients("expected " + std::to_string(entries_.size()) +
                                  " coefficients, got " + std::to_string(coefficients.size()));
    }
    std::vector<ComplexArray> spectra(static_cast<std::size_t>(components_),
                                      ComplexArray(grid_.size(), Complex(0.0, 0.0)));
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const double a = coefficients[static_cast<Eigen::Index>(i)];
        if (a == 0.0) {
            continue;
        }
        const auto& e = entries_[i];
        for (int c = 0; c < components_; ++c) {
            spectra[c][e.plus] += a * e.phase[c];
            spectra[c][e.minus] += a * std::conj(e.phase[c]);
        }
    }
    return spectra;
}

Eigen::VectorXd ModeTable::from_spectral(const std::vector<ComplexArray>& spectra) const
{
    if (spectra.size() != static_cast<std::size_t>(components_)) {
        throw InvalidField("spectral component count does not match the basis");
    }
    Eigen::VectorXd out(static_cast<Eigen::Index>(entries_.size()));
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const auto& e = entries_[i];
        double sum = 0.0;
        for (int c = 0; c < components_; ++c) {
            sum += (spectra[c][e.plus] * std::conj(e.phase[c])).real();
        }
        out[static_cast<Eigen::Index>(i)] = 2.0 * volume_ * sum;
    }
    return out;
}

Eigen::VectorXd analyze(const PhysicalField& field, const BasisSet& basis)
{
    require_field_matches(field, basis);
    const ModeTable table(basis, field.grid());
    std::vector<ComplexArray> spectra;
    for (int c = 0; c < field.component_count(); ++c) {
        spectra.push_back(spectral::forward(field.grid(), field.component(c)));
    }
    return table.from_spectral(spectra);
}

PhysicalField synthesize(const Eigen::VectorXd& coefficients, const BasisSet& basis,
                         const Grid& grid)
{
    const ModeTable table(basis, grid);
    auto spectra = table.to_spectral(coefficients);
    std::vector<std::vector<double>> components;
    for (auto& s : spectra) {
        components.push_back(spectral::backward(grid, std::move(s)));
    }
    return PhysicalField(grid, std::move(components));
}

Eigen::MatrixXd gram_matrix(const BasisSet& basis, const Grid& grid)
{
    const auto n = static_cast<Eigen::Index>(basis.size());
    std::vector<PhysicalField> fields;
    fields.reserve(basis.size());
    for (Eigen::Index i = 0; i < n; ++i) {
        fields.push_back(synthesize(Eigen::VectorXd::Unit(n, i), basis, grid));
    }
    Eigen::MatrixXd gram(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            gram(i, j) = inner_product(fields[i], fields[j]);
            gram(j, i) = gram(i, j);
        }
    }
    return gram;
}

std::string basis_manifest(const BasisSet& basis)
{
    std::ostringstream out;
    char buffer[64];
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const auto& mode = basis[i];
        out << i << ' ' << mode.k[0] << ',' << mode.k[1];
        if (basis.dimension() == 3) {
            out << ',' << mode.k[2];
        }
        std::snprintf(buffer, sizeof(buffer), "%.17g", mode.eigenvalue);
        out << ' ' << mode.polarization << ' ' << (mode.parity == Parity::Cos ? "cos" : "sin")
            << ' ' << buffer << '\n';
    }
    return out.str();
}

} // namespace nslab

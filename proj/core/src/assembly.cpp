#include "nslab/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "nslab/errors.hpp"
#include "nslab/restrict.hpp"

namespace nslab {

namespace {

using spectral::Complex;
using spectral::ComplexArray;

int resolve_quadrature(const BasisSet& basis, int requested)
{
    const int minimum = basis.min_quadrature_points();
    if (requested == 0) {
        return minimum;
    }
    if (requested < minimum) {
        throw AliasingError("quadrature grid of " + std::to_string(requested) +
                            " points cannot integrate triple products exactly for k_max = " +
                            std::to_string(basis.k_max()) + " (need >= " + std::to_string(minimum) + ")");
    }
    return requested % 2 == 0 ? requested : requested + 1;
}

/// Integral of sum_c (adv(u) . grad) v_c * w_c on a grid where the product is exact.
double physical_trilinear(const PhysicalField& u, const PhysicalField& v, const PhysicalField& w,
                          const AdvectionMap& advection)
{
    const Grid fine(u.grid().dimension(), dealiased_points(u.grid().points()), u.grid().period());
    const auto uf = resample(u, fine);
    const auto vf = resample(v, fine);
    const auto wf = resample(w, fine);

    std::vector<std::vector<double>> velocity;
    for (int c = 0; c < uf.component_count(); ++c) {
        velocity.emplace_back(uf.component(c).begin(), uf.component(c).end());
    }
    const auto adv = advection.effective_velocity(velocity);
    const auto grad = gradient(vf);
    std::vector<double> integrand(fine.size(), 0.0);
    for (int c = 0; c < vf.component_count(); ++c) {
        const auto wc = wf.component(c);
        for (int axis = 0; axis < fine.dimension(); ++axis) {
            const auto d = grad.at(axis, c);
            const auto& a = adv[static_cast<std::size_t>(axis)];
            for (std::size_t p = 0; p < integrand.size(); ++p) {
                integrand[p] += a[p] * d[p] * wc[p];
            }
        }
    }
    return integrate(fine, integrand);
}

} // namespace

EllipticParams EllipticParams::from_plane(const Hyperplane& plane) noexcept
{
    const auto rule = substitute_d3(plane).second;
    return EllipticParams{1.0 + rule.d11, 1.0 + rule.d22, rule.d12, 1.0};
}

double EllipticParams::symbol(const std::array<double, 3>& kappa, int variables) const noexcept
{
    double s = c11 * kappa[0] * kappa[0] + c22 * kappa[1] * kappa[1] + c12 * kappa[0] * kappa[1];
    if (variables == 3) {
        s += c33 * kappa[2] * kappa[2];
    }
    return s;
}

std::vector<std::vector<double>> AdvectionMap::effective_velocity(
    const std::vector<std::vector<double>>& velocity) const
{
    if (!plane_) {
        return velocity;
    }
    if (velocity.size() != 3) {
        throw InvalidField("restricted advection needs three velocity components");
    }
    const double i1 = plane_->inv_a1();
    const double i2 = plane_->inv_a2();
    std::vector<std::vector<double>> out(2, std::vector<double>(velocity[0].size()));
    for (std::size_t p = 0; p < velocity[0].size(); ++p) {
        out[0][p] = velocity[0][p] - i1 * velocity[2][p];
        out[1][p] = velocity[1][p] - i2 * velocity[2][p];
    }
    return out;
}

TrilinearEvaluator::TrilinearEvaluator(const BasisSet& basis, AdvectionMap advection, int quadrature_points)
    : variables_(basis.dimension()),
      components_(basis.components()),
      advection_(advection),
      table_(basis, Grid(basis.dimension(), resolve_quadrature(basis, quadrature_points), basis.period()))
{
    if (advection_.plane() != basis.plane()) {
        throw InvalidArgument("advection map and basis disagree on plane restriction");
    }
    const Grid& g = table_.grid();
    kappa_.assign(static_cast<std::size_t>(variables_), std::vector<double>(g.size(), 0.0));
    for (std::size_t p = 0; p < g.size(); ++p) {
        const auto index = g.multi_index(p);
        for (int axis = 0; axis < variables_; ++axis) {
            if (index[axis] != g.points() / 2) {
                kappa_[axis][p] = g.wavenumber_scale() * spectral::signed_wavenumber(index[axis], g.points());
            }
        }
    }
}

Eigen::VectorXd TrilinearEvaluator::apply(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const
{
    const Grid& g = table_.grid();
    const std::size_t size = g.size();

    auto su = table_.to_spectral(u);
    std::vector<std::vector<double>> velocity;
    velocity.reserve(su.size());
    for (auto& s : su) {
        velocity.push_back(spectral::backward(g, std::move(s)));
    }
    const auto adv = advection_.effective_velocity(velocity);

    const auto sv = table_.to_spectral(v);
    std::vector<ComplexArray> products(static_cast<std::size_t>(components_), ComplexArray(size));
    ComplexArray work(size);
    for (int c = 0; c < components_; ++c) {
        auto& product = products[static_cast<std::size_t>(c)];
        std::fill(product.begin(), product.end(), Complex(0.0, 0.0));
        for (int axis = 0; axis < variables_; ++axis) {
            const auto& kappa = kappa_[static_cast<std::size_t>(axis)];
            const auto& coeffs = sv[static_cast<std::size_t>(c)];
            for (std::size_t p = 0; p < size; ++p) {
                work[p] = Complex(-kappa[p] * coeffs[p].imag(), kappa[p] * coeffs[p].real());
            }
            spectral::backward_inplace(g, work);
            const auto& a = adv[static_cast<std::size_t>(axis)];
            for (std::size_t p = 0; p < size; ++p) {
                product[p] += a[p] * work[p].real();
            }
        }
        spectral::forward_inplace(g, product);
    }
    return table_.from_spectral(products);
}

double TrilinearEvaluator::form(const Eigen::VectorXd& u, const Eigen::VectorXd& v,
                                const Eigen::VectorXd& w) const
{
    return apply(u, v).dot(w);
}

Eigen::VectorXd TrilinearTensor::contract(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const
{
    Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_));
    for (std::size_t i = 0; i < n_; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < n_; ++j) {
            const double aj = a[static_cast<Eigen::Index>(j)];
            if (aj == 0.0) {
                continue;
            }
            const double* row = &data_[(i * n_ + j) * n_];
            for (std::size_t k = 0; k < n_; ++k) {
                sum += row[k] * aj * b[static_cast<Eigen::Index>(k)];
            }
        }
        out[static_cast<Eigen::Index>(i)] = sum;
    }
    return out;
}

Eigen::SparseMatrix<double> assemble_stiffness(const BasisSet& basis, const EllipticParams& elliptic)
{
    const auto n = static_cast<Eigen::Index>(basis.size());
    const double scale = two_pi / basis.period();
    Eigen::SparseMatrix<double> stiffness(n, n);
    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(basis.size());
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& k = basis[static_cast<std::size_t>(i)].k;
        const double value =
            elliptic.symbol({scale * k[0], scale * k[1], scale * k[2]}, basis.dimension());
        if (!(value > 0.0)) {
            throw NotElliptic("elliptic symbol is not positive at mode " + std::to_string(i));
        }
        entries.emplace_back(i, i, value);
    }
    stiffness.setFromTriplets(entries.begin(), entries.end());
    return stiffness;
}

TrilinearTensor assemble_trilinear(const BasisSet& basis, const AdvectionMap& advection, int quadrature_points)
{
    if (basis.size() > kDenseTrilinearLimit) {
        throw InvalidArgument("dense trilinear tensor limited to " + std::to_string(kDenseTrilinearLimit) +
                              " modes; use TrilinearEvaluator");
    }
    const TrilinearEvaluator evaluator(basis, advection, quadrature_points);
    const auto n = static_cast<Eigen::Index>(basis.size());
    TrilinearTensor tensor(basis.size());
    for (Eigen::Index j = 0; j < n; ++j) {
        const Eigen::VectorXd ej = Eigen::VectorXd::Unit(n, j);
        for (Eigen::Index k = 0; k < n; ++k) {
            const auto column = evaluator.apply(ej, Eigen::VectorXd::Unit(n, k));
            for (Eigen::Index i = 0; i < n; ++i) {
                tensor(static_cast<std::size_t>(i), static_cast<std::size_t>(j), static_cast<std::size_t>(k)) =
                    column[i];
            }
        }
    }
    return tensor;
}

void write_trilinear_dump(std::ostream& out, const TrilinearTensor& tensor, double threshold)
{
    char buffer[32];
    const std::size_t n = tensor.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                const double value = tensor(i, j, k);
                if (std::abs(value) > threshold) {
                    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
                    out << i << ' ' << j << ' ' << k << ' ' << buffer << '\n';
                }
            }
        }
    }
}

std::vector<Eigen::VectorXd> project_forcing(const FieldSeries& forcing, const std::vector<double>& times,
                                             const BasisSet& basis)
{
    std::vector<Eigen::VectorXd> out;
    out.reserve(times.size());
    for (double t : times) {
        out.push_back(analyze(forcing(t), basis));
    }
    return out;
}

GalerkinSystem assemble_system(const BasisSet& basis, bool dense_trilinear)
{
    if (basis.plane()) {
        return assemble_system(basis, EllipticParams::from_plane(*basis.plane()),
                               AdvectionMap::restricted(*basis.plane()), dense_trilinear);
    }
    return assemble_system(basis, EllipticParams::laplacian(), AdvectionMap::standard(), dense_trilinear);
}

GalerkinSystem assemble_system(const BasisSet& basis, const EllipticParams& elliptic,
                               const AdvectionMap& advection, bool dense_trilinear)
{
    const auto n = static_cast<Eigen::Index>(basis.size());
    Eigen::SparseMatrix<double> mass(n, n);
    mass.setIdentity();
    auto stiffness = assemble_stiffness(basis, elliptic);
    Eigen::VectorXd diagonal = stiffness.diagonal();
    std::optional<TrilinearTensor> tensor;
    if (dense_trilinear) {
        tensor = assemble_trilinear(basis, advection);
    }
    return GalerkinSystem{basis,
                          elliptic,
                          advection,
                          std::move(mass),
                          std::move(stiffness),
                          std::move(diagonal),
                          std::move(tensor),
                          TrilinearEvaluator(basis, advection)};
}

CoercivityReport coercivity_check(const PhysicalField& u, const Hyperplane& plane, double nu)
{
    if (u.grid().dimension() != 2 || u.component_count() != 3) {
        throw InvalidField("coercivity check expects a restricted field (3 components over 2 variables)");
    }
    const double residual = restricted_divergence(u, plane).max_abs();
    if (residual > 1e-10) {
        throw NonSolenoidalInput("restricted divergence " + std::to_string(residual) + " exceeds 1e-10");
    }
    const auto elliptic = EllipticParams::from_plane(plane);
    const auto grad = gradient(u);
    const Grid& grid = u.grid();
    double dirichlet = 0.0;
    double elliptic_energy = 0.0;
    for (int c = 0; c < 3; ++c) {
        const auto d1 = grad.at(0, c);
        const auto d2 = grad.at(1, c);
        std::vector<double> s11(grid.size()), s22(grid.size()), s12(grid.size());
        for (std::size_t p = 0; p < grid.size(); ++p) {
            s11[p] = d1[p] * d1[p];
            s22[p] = d2[p] * d2[p];
            s12[p] = d1[p] * d2[p];
        }
        const double i11 = integrate(grid, s11);
        const double i22 = integrate(grid, s22);
        const double i12 = integrate(grid, s12);
        dirichlet += i11 + i22;
        elliptic_energy += elliptic.c11 * i11 + elliptic.c22 * i22 + elliptic.c12 * i12;
    }
    CoercivityReport report;
    report.dirichlet_energy = nu * dirichlet;
    report.elliptic_energy = nu * elliptic_energy;
    report.advection_term = physical_trilinear(u, u, u, AdvectionMap::restricted(plane));
    report.lhs = report.elliptic_energy + report.advection_term;
    report.holds = report.lhs >= report.dirichlet_energy - 1e-10 * std::max(1.0, report.dirichlet_energy);
    return report;
}

double trilinear_bound_ratio(const PhysicalField& u, const PhysicalField& v, const AdvectionMap& advection)
{
    const double b = physical_trilinear(u, u, v, advection);
    const double l4 = lp_norm(u, 4.0);
    const double grad_v = l2_norm(gradient(v));
    const double denominator = l4 * l4 * grad_v;
    if (denominator == 0.0) {
        throw ZeroFieldRatio("trilinear bound ratio undefined for zero fields");
    }
    return std::abs(b) / denominator;
}

} // namespace nslab

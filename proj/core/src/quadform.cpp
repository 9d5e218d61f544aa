#include "nslab/quadform.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "nslab/errors.hpp"

namespace nslab {

Eigen::Matrix3d symmetrize(const Eigen::Matrix3d& grad) noexcept
{
    return 0.5 * (grad + grad.transpose());
}

SymmetrizedGradient symmetrize(const GradientTensor& grad)
{
    if (grad.axes() != 3 || grad.components != 3) {
        throw DimensionError("the symmetrized-gradient form is defined for 3D fields with 3 components");
    }
    SymmetrizedGradient out{grad.grid, std::vector<Eigen::Matrix3d>(grad.grid.size())};
    for (std::size_t p = 0; p < out.matrices.size(); ++p) {
        Eigen::Matrix3d m;
        // m(i, j) = D_i v_j
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                m(i, j) = grad.at(i, j)[p];
            }
        }
        out.matrices[p] = symmetrize(m);
    }
    return out;
}

double LDLFactors::evaluate(const Eigen::Vector3d& w) const
{
    const Eigen::Vector3d wbar = transform * w;
    return a1 * wbar[0] * wbar[0] + a2 * wbar[1] * wbar[1] + a3 * wbar[2] * wbar[2];
}

LDLFactors ldl_coefficients(const Eigen::Matrix3d& s)
{
    LDLFactors out;
    const double scale = s.norm();
    const double minor1 = s(0, 0);
    const double minor2 = s(0, 0) * s(1, 1) - s(0, 1) * s(1, 0);
    if (scale == 0.0 || std::abs(minor1) <= 1e-12 * scale || std::abs(minor2) <= 1e-12 * scale * scale) {
        out.fallback = true;
        return out;
    }
    const double minor3 = s.determinant();
    out.a1 = minor1;
    out.a2 = minor2 / minor1;
    out.a3 = minor3 / minor2;

    // S = L diag(a) L^T with L unit lower triangular; wbar = L^T w.
    const double l10 = s(1, 0) / out.a1;
    const double l20 = s(2, 0) / out.a1;
    const double l21 = (s(2, 1) - l20 * l10 * out.a1) / out.a2;
    out.transform << 1.0, l10, l20,
                     0.0, 1.0, l21,
                     0.0, 0.0, 1.0;
    return out;
}

std::vector<LDLFactors> ldl_coefficients(const SymmetrizedGradient& sym)
{
    std::vector<LDLFactors> out;
    out.reserve(sym.matrices.size());
    for (const auto& m : sym.matrices) {
        out.push_back(ldl_coefficients(m));
    }
    return out;
}

const char* to_string(Definiteness d) noexcept
{
    switch (d) {
    case Definiteness::PositiveSemidefinite: return "PositiveSemidefinite";
    case Definiteness::Indefinite: return "Indefinite";
    case Definiteness::NegativeSemidefinite: return "NegativeSemidefinite";
    case Definiteness::Zero: return "Zero";
    }
    return "Unknown";
}

Definiteness classify(const Eigen::Matrix3d& sym)
{
    const double scale = sym.norm();
    if (scale == 0.0) {
        return Definiteness::Zero;
    }
    const double tol = 1e-12 * scale;
    const Eigen::Vector3d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(sym, Eigen::EigenvaluesOnly).eigenvalues();
    if (ev.cwiseAbs().maxCoeff() <= tol) {
        return Definiteness::Zero;
    }
    if (ev.minCoeff() >= -tol) {
        return Definiteness::PositiveSemidefinite;
    }
    if (ev.maxCoeff() <= tol) {
        return Definiteness::NegativeSemidefinite;
    }
    return Definiteness::Indefinite;
}

ClassHistogram classify(const SymmetrizedGradient& sym)
{
    double peak = 0.0;
    for (const auto& m : sym.matrices) {
        peak = std::max(peak, m.norm());
    }
    ClassHistogram hist{};
    for (const auto& m : sym.matrices) {
        const auto cls = m.norm() <= 1e-12 * peak ? Definiteness::Zero : classify(m);
        ++hist[static_cast<std::size_t>(cls)];
    }
    return hist;
}

double integral_form(const SymmetrizedGradient& sym, const PhysicalField& w)
{
    if (!(sym.grid == w.grid())) {
        throw GridMismatch("quadratic form and test field live on different grids");
    }
    if (w.component_count() != 3) {
        throw InvalidField("integral_form needs a 3-component field");
    }
    std::vector<double> density(sym.matrices.size());
    for (std::size_t p = 0; p < density.size(); ++p) {
        const Eigen::Vector3d v(w.component(0)[p], w.component(1)[p], w.component(2)[p]);
        density[p] = v.dot(sym.matrices[p] * v);
    }
    return integrate(sym.grid, density);
}

double gradient_norm_sum(const GradientTensor& grad)
{
    double sum = 0.0;
    std::vector<double> sq(grad.grid.size());
    for (int i = 0; i < grad.axes(); ++i) {
        for (int j = 0; j < grad.components; ++j) {
            const auto d = grad.at(i, j);
            for (std::size_t p = 0; p < sq.size(); ++p) {
                sq[p] = d[p] * d[p];
            }
            sum += std::sqrt(integrate(grad.grid, sq));
        }
    }
    return sum;
}

QuadFormCertificate criterion_certificate(const PhysicalField& v, double c, double nu, double lambda1, double time)
{
    QuadFormCertificate cert;
    cert.time = time;
    cert.c_used = c;
    cert.nu = nu;
    cert.lambda1 = lambda1;
    const auto grad = gradient(v);
    cert.lhs = c * c * gradient_norm_sum(grad);
    cert.rhs = nu * std::pow(lambda1, 0.25);
    cert.holds = cert.rhs >= cert.lhs;
    if (grad.axes() == 3 && grad.components == 3) {
        cert.histogram = classify(symmetrize(grad));
        cert.has_histogram = true;
    }
    return cert;
}

std::vector<QuadFormCertificate> criterion_theorem31(const TrajectoryRecord& trajectory, const BasisSet& basis,
                                                     const Grid& grid, double c, double nu, double lambda1)
{
    std::vector<QuadFormCertificate> out;
    out.reserve(trajectory.snapshots.size());
    const auto times = trajectory.snapshot_times();
    for (std::size_t s = 0; s < trajectory.snapshots.size(); ++s) {
        out.push_back(criterion_certificate(synthesize(trajectory.snapshots[s], basis, grid), c, nu, lambda1, times[s]));
    }
    return out;
}

} // namespace nslab

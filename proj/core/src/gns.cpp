#include "nslab/gns.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "nslab/basis.hpp"
#include "nslab/errors.hpp"
#include "nslab/spectral.hpp"

namespace nslab {

namespace {

double ratio_over(int d, double p) { return std::isinf(p) ? 0.0 : d / p; }

void require_exponent(double p, const char* name)
{
    if (!(p >= 1.0)) {
        throw OutOfRange(std::string(name) + " must lie in [1, inf]");
    }
}

std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

double lp_of_magnitude(const Grid& grid, const std::vector<double>& magnitude, double p)
{
    if (std::isinf(p)) {
        double peak = 0.0;
        for (double v : magnitude) {
            peak = std::max(peak, v);
        }
        return peak;
    }
    std::vector<double> powered(magnitude.size());
    std::transform(magnitude.begin(), magnitude.end(), powered.begin(), [p](double v) { return std::pow(v, p); });
    return std::pow(integrate(grid, powered), 1.0 / p);
}

/// L^p norm of the pointwise Euclidean magnitude of all order-th partial derivatives.
double derivative_norm(const PhysicalField& field, int order, double p)
{
    const Grid& grid = field.grid();
    std::vector<spectral::ComplexArray> spectra;
    for (int c = 0; c < field.component_count(); ++c) {
        spectra.push_back(spectral::forward(grid, field.component(c)));
    }
    for (int o = 0; o < order; ++o) {
        std::vector<spectral::ComplexArray> next;
        next.reserve(spectra.size() * static_cast<std::size_t>(grid.dimension()));
        for (const auto& s : spectra) {
            for (int axis = 0; axis < grid.dimension(); ++axis) {
                next.push_back(spectral::derivative(grid, s, axis));
            }
        }
        spectra = std::move(next);
    }
    std::vector<double> magnitude(grid.size(), 0.0);
    for (auto& s : spectra) {
        const auto values = spectral::backward(grid, std::move(s));
        for (std::size_t i = 0; i < magnitude.size(); ++i) {
            magnitude[i] += values[i] * values[i];
        }
    }
    for (double& v : magnitude) {
        v = std::sqrt(v);
    }
    return lp_of_magnitude(grid, magnitude, p);
}

} // namespace

std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t index) noexcept
{
    return splitmix64(master ^ splitmix64(index));
}

double solve_sigma(int d, double p0, double p1, double p2, int s, int m)
{
    if (d < 1) {
        throw OutOfRange("dimension must be positive");
    }
    require_exponent(p0, "p0");
    require_exponent(p1, "p1");
    require_exponent(p2, "p2");
    if (s < 0 || s >= m) {
        throw OutOfRange("need 0 <= s < m");
    }
    const double denominator = ratio_over(d, p1) - m - ratio_over(d, p2);
    if (std::abs(denominator) < 1e-14) {
        throw DegenerateBalance("d/p1 - m - d/p2 vanishes");
    }
    const double sigma = (ratio_over(d, p0) - s - ratio_over(d, p2)) / denominator;
    const double lower = static_cast<double>(s) / m;
    if (sigma < lower - 1e-14 || sigma > 1.0 + 1e-14) {
        throw OutOfRange("sigma = " + std::to_string(sigma) + " outside [s/m, 1]");
    }
    return sigma;
}

GNSParams make_params(int d, double p0, double p1, double p2, int s, int m, double exponent)
{
    GNSParams params{d, p0, p1, p2, s, m, solve_sigma(d, p0, p1, p2, s, m), exponent};
    return params;
}

GNSParams ladyzhenskaya(int d)
{
    return make_params(d, 4.0, 2.0, 2.0, 0, 1, 2.0);
}

const char* to_string(GNSVerdict v) noexcept
{
    switch (v) {
    case GNSVerdict::Ok: return "ok";
    case GNSVerdict::ExclusionA: return "exclusion_a";
    case GNSVerdict::ExclusionB: return "exclusion_b";
    }
    return "unknown";
}

GNSVerdict validate_params(const GNSParams& params)
{
    const double d_over_p1 = ratio_over(params.d, params.p1);
    if (params.s == 0 && params.s < d_over_p1 && std::isinf(params.p2)) {
        return GNSVerdict::ExclusionA;
    }
    if (params.p1 >= 1.0 && !std::isinf(params.p1) && std::abs(params.m - params.s - d_over_p1) <= 1e-12 &&
        std::isinf(params.p0) && std::abs(params.sigma - 1.0) <= 1e-12) {
        return GNSVerdict::ExclusionB;
    }
    return GNSVerdict::Ok;
}

GNSReport check_inequality(const PhysicalField& field, const GNSParams& params, double c)
{
    if (params.s > 2 || params.m > 2) {
        throw InvalidArgument("derivative orders above 2 are not supported");
    }
    if (field.max_abs() == 0.0) {
        throw ZeroFieldRatio("inequality ratio is undefined for the zero field");
    }
    const double lhs_norm = derivative_norm(field, params.s, params.p0);
    const double top = derivative_norm(field, params.m, params.p1);
    const double base = derivative_norm(field, 0, params.p2);
    const double rhs_free = std::pow(std::pow(top, params.sigma) * std::pow(base, 1.0 - params.sigma), params.exponent);
    if (rhs_free == 0.0) {
        throw ZeroFieldRatio("right-hand side vanishes for this field");
    }
    GNSReport report;
    report.lhs = std::pow(lhs_norm, params.exponent);
    report.ratio = report.lhs / rhs_free;
    report.rhs = c * rhs_free;
    report.holds = report.ratio <= c;
    return report;
}

std::vector<PhysicalField> gns_probe_fields(const Grid& grid)
{
    const auto basis = build_basis(grid.dimension(), 1, grid.period());
    std::vector<PhysicalField> out;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (basis[i].eigenvalue != basis.lambda1()) {
            break;
        }
        Eigen::VectorXd a = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis.size()));
        a[static_cast<Eigen::Index>(i)] = 1.0;
        out.push_back(synthesize(a, basis, grid));
    }
    out.push_back(taylor_green(grid));
    return out;
}

PhysicalField gns_sample_field(const Grid& grid, std::uint64_t seed, std::size_t index)
{
    const int k_max = std::max(1, (grid.points() - 1) / 4);
    const auto basis = build_basis(grid.dimension(), k_max, grid.period());
    std::mt19937_64 rng(derive_stream_seed(seed, index));
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd a(static_cast<Eigen::Index>(basis.size()));
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        a[i] = normal(rng);
    }
    return synthesize(a, basis, grid);
}

ConstantEstimate estimate_constant(const GNSParams& params, const Grid& grid, std::size_t n_samples,
                                   std::uint64_t seed)
{
    if (n_samples == 0) {
        throw InvalidArgument("estimate_constant needs at least one sample");
    }
    if (params.d != grid.dimension()) {
        throw InvalidArgument("parameter dimension does not match the grid");
    }
    ConstantEstimate est;
    est.params = params;
    est.seed = seed;
    for (const auto& probe : gns_probe_fields(grid)) {
        est.c_lower = std::max(est.c_lower, check_inequality(probe, params, 0.0).ratio);
        ++est.probe_count;
    }
    for (std::size_t i = 0; i < n_samples; ++i) {
        est.c_lower = std::max(est.c_lower, check_inequality(gns_sample_field(grid, seed, i), params, 0.0).ratio);
    }
    est.sample_count = n_samples;
    return est;
}

} // namespace nslab

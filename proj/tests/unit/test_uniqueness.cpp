#include <cmath>
#include <cstring>

#include <gtest/gtest.h>

#include "nslab/errors.hpp"
#include "nslab/uniqueness.hpp"
#include "oracles.hpp"

using namespace nslab;

namespace {

struct Setup {
    GalerkinSystem system;
    SimConfig config;
};

Setup restricted_taylor_green(double dt, double t_end = 1.0)
{
    const Hyperplane plane{1.0, 1.0, 0.0};
    const auto basis = build_restricted_basis(plane, 4);
    const Grid g = basis.quadrature_grid();
    const auto tg = taylor_green(g);
    PhysicalField u(g, std::vector<std::vector<double>>{
                           std::vector<double>(tg.component(0).begin(), tg.component(0).end()),
                           std::vector<double>(tg.component(1).begin(), tg.component(1).end()),
                           std::vector<double>(g.size(), 0.0)});
    Setup s{assemble_system(basis), {}};
    s.config.nu = 0.1;
    s.config.dt = dt;
    s.config.t_end = t_end;
    s.config.plane = plane;
    s.config.initial = analyze(u, basis);
    s.config.track_divergence = false;
    return s;
}

double max_abs(const std::vector<double>& v)
{
    double m = 0.0;
    for (double x : v) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

} // namespace

TEST(GronwallConstant, Examples)
{
    EXPECT_DOUBLE_EQ(gronwall_constant(1.0, 0.25), 1.0);
    EXPECT_DOUBLE_EQ(gronwall_constant(0.5, 0.1), 0.625);
    EXPECT_DOUBLE_EQ(gronwall_constant(0.7, 0.4), 0.5 * gronwall_constant(0.7, 0.2));
    EXPECT_THROW(gronwall_constant(0.0, 1.0), InvalidArgument);
    EXPECT_THROW(gronwall_constant(1.0, -1.0), InvalidArgument);
}

TEST(Difference, IdenticalRunsGiveExactZero)
{
    auto s = restricted_taylor_green(1e-3, 0.2);
    const auto a = run(s.config, s.system);
    const auto b = run(s.config, s.system);
    const auto d = difference_trajectory(a, b);
    for (const auto& w : d.w) {
        ASSERT_EQ(w.cwiseAbs().maxCoeff(), 0.0);
    }
    const auto cert = gronwall_bound_check(a, d, 1.0);
    EXPECT_TRUE(cert.holds);
    EXPECT_EQ(max_abs(cert.envelope), 0.0);
    EXPECT_EQ(max_abs(cert.w_energy), 0.0);
    EXPECT_EQ(max_abs(w_energy_identity_residual(a, b, s.system)), 0.0);
}

TEST(Difference, Antisymmetric)
{
    auto s = restricted_taylor_green(1e-3, 0.05);
    const auto a = run(s.config, s.system);
    s.config.initial[2] += 0.01;
    const auto b = run(s.config, s.system);
    const auto ab = difference_trajectory(a, b);
    const auto ba = difference_trajectory(b, a);
    for (std::size_t i = 0; i < ab.w.size(); ++i) {
        ASSERT_EQ(ab.w[i], -ba.w[i]);
        ASSERT_EQ(ab.w_energy[i], ba.w_energy[i]);
    }
}

TEST(Difference, IncompatibleRuns)
{
    auto s = restricted_taylor_green(1e-3, 0.01);
    const auto a = run(s.config, s.system);
    s.config.dt = 2e-3;
    const auto b = run(s.config, s.system);
    EXPECT_THROW(difference_trajectory(a, b), IncompatibleRuns);
}

TEST(Perturbation, InitialDifferenceIsEpsilon)
{
    auto s = restricted_taylor_green(1e-3, 0.01);
    const auto r = perturbation_experiment(s.config, s.system, 1e-3, 0, 0.5);
    EXPECT_NEAR(std::sqrt(r.difference.w_energy.front()), 1e-3, 1e-15);
    const auto zero = perturbation_experiment(s.config, s.system, 0.0, 0, 0.5);
    EXPECT_EQ(max_abs(zero.difference.w_energy), 0.0);
    EXPECT_TRUE(zero.certificate.holds);
    EXPECT_THROW(perturbation_experiment(s.config, s.system, -1.0, 0, 0.5), InvalidArgument);
    EXPECT_THROW(perturbation_experiment(s.config, s.system, 1e-3, s.system.basis.size(), 0.5), InvalidArgument);
}

TEST(Perturbation, GronwallHoldsForSmallPerturbations)
{
    auto s = restricted_taylor_green(1e-3);
    for (double eps : {1e-3, 1e-6}) {
        const auto r = perturbation_experiment(s.config, s.system, eps, 1, 0.5);
        EXPECT_TRUE(r.certificate.holds) << eps;
        EXPECT_LE(r.certificate.max_ratio, 1.0 + 1e-8);
        EXPECT_DOUBLE_EQ(r.certificate.C_used, gronwall_constant(0.5, 0.1));
        for (std::size_t i = 1; i < r.certificate.envelope.size(); ++i) {
            ASSERT_GE(r.certificate.envelope[i], r.certificate.envelope[i - 1]);
        }
    }
}

TEST(Perturbation, IncreasingConstantNeverBreaksCertificate)
{
    auto s = restricted_taylor_green(1e-3, 0.3);
    const auto r = perturbation_experiment(s.config, s.system, 1e-3, 1, 0.5);
    bool held = false;
    for (double C : {1e-4, 1e-3, 1e-2, 0.1, 1.0, 10.0}) {
        const bool holds = gronwall_bound_check(r.run_a, r.difference, C).holds;
        EXPECT_TRUE(!held || holds) << C;
        held = held || holds;
    }
    EXPECT_TRUE(held);
}

TEST(Perturbation, LinearInEpsilon)
{
    auto s = restricted_taylor_green(1e-3, 0.3);
    std::vector<double> k;
    for (double eps : {1e-3, 1e-4, 1e-5}) {
        const auto r = perturbation_experiment(s.config, s.system, eps, 1, 0.5);
        k.push_back(std::sqrt(*std::max_element(r.difference.w_energy.begin(), r.difference.w_energy.end())) / eps);
    }
    EXPECT_NEAR(k[1] / k[0], 1.0, 0.1);
    EXPECT_NEAR(k[2] / k[0], 1.0, 0.1);
}

TEST(Gronwall, MisalignedSeriesRejected)
{
    auto s = restricted_taylor_green(1e-3, 0.01);
    const auto a = run(s.config, s.system);
    auto d = difference_trajectory(a, a);
    d.times.pop_back();
    EXPECT_THROW(gronwall_bound_check(a, d, 1.0), MisalignedSeries);
}

TEST(Gronwall, EnvelopeMatchesHighResolutionQuadrature)
{
    // trapezoid accumulation differs from the oracle by O(dt^2); about 2e-6 at dt = 1e-3
    auto s = restricted_taylor_green(5e-4);
    const double C = gronwall_constant(0.5, 0.1);
    const auto r = perturbation_experiment(s.config, s.system, 1e-3, 1, 0.5);
    const double growth = r.certificate.envelope.back() / r.certificate.envelope.front();

    // ||grad u||^2 recomputed from physical gradients of every snapshot on a fine grid, then Simpson in time
    const Grid fine(2, 32);
    std::vector<double> g;
    for (const auto& a : r.run_a.snapshots) {
        const double n = l2_norm(gradient(synthesize(a, s.system.basis, fine)));
        g.push_back(n * n);
    }
    const double oracle_growth = std::exp(2.0 * C * oracle::simpson(g, s.config.dt, g.size() - 1));
    EXPECT_NEAR(growth / oracle_growth, 1.0, 1e-6);
}

TEST(Identity, ResidualSmallAndSecondOrder)
{
    std::vector<double> peaks;
    double scale = 0.0;
    for (double dt : {1e-3, 5e-4}) {
        auto s = restricted_taylor_green(dt, 0.5);
        const auto r = perturbation_experiment(s.config, s.system, 1e-3, 1, 0.5);
        peaks.push_back(max_abs(w_energy_identity_residual(r.run_b, r.run_a, s.system)));
        scale = max_abs(r.difference.w_energy);
    }
    EXPECT_LE(peaks[0], 1e-6 * scale);
    EXPECT_GE(peaks[0] / peaks[1], 3.5);
}

TEST(Identity, QuadraticInEpsilon)
{
    auto s = restricted_taylor_green(1e-3, 0.3);
    const auto r1 = perturbation_experiment(s.config, s.system, 1e-3, 1, 0.5);
    const auto r2 = perturbation_experiment(s.config, s.system, 2e-3, 1, 0.5);
    const double a = max_abs(w_energy_identity_residual(r1.run_b, r1.run_a, s.system));
    const double b = max_abs(w_energy_identity_residual(r2.run_b, r2.run_a, s.system));
    EXPECT_NEAR(b / a, 4.0, 0.8);
}

TEST(Identity, NeedsEveryStep)
{
    auto s = restricted_taylor_green(1e-3, 0.01);
    s.config.thinning = 2;
    const auto a = run(s.config, s.system);
    EXPECT_THROW(w_energy_identity_residual(a, a, s.system), MisalignedSeries);
}

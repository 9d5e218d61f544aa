#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "nslab/errors.hpp"
#include "nslab/quadform.hpp"
#include "oracles.hpp"

using namespace nslab;
constexpr double pi = std::numbers::pi;

namespace {

GradientTensor constant_gradient(const Grid& g, const Eigen::Matrix3d& m)
{
    GradientTensor grad{g, 3, std::vector<std::vector<double>>(9, std::vector<double>(g.size()))};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            grad.entries[static_cast<std::size_t>(i * 3 + j)].assign(g.size(), m(i, j));
        }
    }
    return grad;
}

PhysicalField random_solenoidal(const Grid& g, std::uint64_t seed)
{
    const auto b = build_basis(3, 2);
    return synthesize(oracle::normal_vector(static_cast<Eigen::Index>(b.size()), seed), b, g);
}

} // namespace

TEST(Symmetrize, Examples)
{
    EXPECT_EQ(symmetrize(Eigen::Matrix3d::Zero()), Eigen::Matrix3d::Zero());
    const Eigen::Matrix3d d = Eigen::Vector3d(1.0, 1.0, -2.0).asDiagonal();
    EXPECT_EQ(symmetrize(d), d);
    Eigen::Matrix3d g = Eigen::Matrix3d::Zero();
    g(0, 1) = 2.0;  // D1 v2
    const auto s = symmetrize(g);
    EXPECT_DOUBLE_EQ(s(0, 1), 1.0);
    EXPECT_DOUBLE_EQ(s(1, 0), 1.0);
}

TEST(Symmetrize, FieldVersionIsSymmetricAndTraceFree)
{
    const Grid g(3, 8);
    const auto sym = symmetrize(gradient(random_solenoidal(g, 3)));
    ASSERT_EQ(sym.matrices.size(), g.size());
    for (const auto& m : sym.matrices) {
        EXPECT_EQ(m, m.transpose());
        EXPECT_LE(std::abs(m.trace()), 1e-10);
    }
}

TEST(Symmetrize, TwoDimensionalInputRejected)
{
    EXPECT_THROW(symmetrize(gradient(taylor_green(Grid(2, 8)))), DimensionError);
}

TEST(LDL, DiagonalCase)
{
    const auto f = ldl_coefficients(Eigen::Matrix3d(Eigen::Vector3d(1.0, 1.0, -2.0).asDiagonal()));
    EXPECT_FALSE(f.fallback);
    EXPECT_DOUBLE_EQ(f.a1, 1.0);
    EXPECT_DOUBLE_EQ(f.a2, 1.0);
    EXPECT_DOUBLE_EQ(f.a3, -2.0);
}

TEST(LDL, ZeroMatrixFallsBack)
{
    EXPECT_TRUE(ldl_coefficients(Eigen::Matrix3d::Zero()).fallback);
    EXPECT_EQ(classify(Eigen::Matrix3d::Zero()), Definiteness::Zero);
}

TEST(LDL, DegeneratePivotFallsBack)
{
    Eigen::Matrix3d s;
    s << 0, 1, 0,
         1, 0, 0,
         0, 0, 1;
    EXPECT_TRUE(ldl_coefficients(s).fallback);
    EXPECT_EQ(classify(s), Definiteness::Indefinite);
}

TEST(LDL, MatchesMinorQuotients)
{
    const auto s = oracle::random_symmetric(5);
    const auto f = ldl_coefficients(s);
    // a2 = D2 v2 - (D1 v2 + D2 v1)^2 / (4 a1) with S12 = (D1 v2 + D2 v1) / 2
    EXPECT_NEAR(f.a1, s(0, 0), 1e-15);
    EXPECT_NEAR(f.a2, s(1, 1) - std::pow(2.0 * s(0, 1), 2) / (4.0 * f.a1), 1e-12);
    EXPECT_NEAR(f.a3, s.determinant() / (s(0, 0) * s(1, 1) - s(0, 1) * s(0, 1)), 1e-12);
}

TEST(LDL, ReconstructsDirectFormOnRandomMatrices)
{
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto s = oracle::random_symmetric(seed);
        const auto f = ldl_coefficients(s);
        ASSERT_FALSE(f.fallback);
        const Eigen::Vector3d w = oracle::normal_vector(3, 1000 + seed);
        const double direct = w.dot(s * w);
        EXPECT_LE(std::abs(f.evaluate(w) - direct), 1e-12 * s.norm() * w.squaredNorm()) << seed;
    }
}

TEST(LDL, ReconstructsOnSolenoidalField)
{
    const Grid g(3, 8);
    const auto sym = symmetrize(gradient(random_solenoidal(g, 8)));
    const auto factors = ldl_coefficients(sym);
    std::size_t tested = 0;
    for (std::size_t p = 0; p < g.size() && tested < 100; p += 5) {
        if (factors[p].fallback) {
            continue;
        }
        const Eigen::Vector3d w = oracle::normal_vector(3, p);
        const auto& s = sym.matrices[p];
        EXPECT_LE(std::abs(factors[p].evaluate(w) - w.dot(s * w)), 1e-12 * s.norm() * w.squaredNorm());
        ++tested;
    }
    EXPECT_EQ(tested, 100u);
}

TEST(Classify, Examples)
{
    EXPECT_EQ(classify(Eigen::Matrix3d(Eigen::Vector3d(1.0, 1.0, -2.0).asDiagonal())), Definiteness::Indefinite);
    EXPECT_EQ(classify(Eigen::Matrix3d(Eigen::Vector3d(1.0, 2.0, 0.0).asDiagonal())), Definiteness::PositiveSemidefinite);
    EXPECT_EQ(classify(Eigen::Matrix3d(Eigen::Vector3d(-1.0, -2.0, -3.0).asDiagonal())), Definiteness::NegativeSemidefinite);
}

TEST(Classify, TraceFreeNeverDefinite)
{
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        Eigen::Matrix3d s = oracle::random_symmetric(seed);
        s -= (s.trace() / 3.0) * Eigen::Matrix3d::Identity();
        const auto c = classify(s);
        EXPECT_TRUE(c == Definiteness::Indefinite || c == Definiteness::Zero) << seed;
    }
}

TEST(Classify, InvariantUnderRotation)
{
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto s = oracle::random_symmetric(seed);
        const auto q = oracle::random_rotation(seed + 77);
        EXPECT_EQ(classify(s), classify(Eigen::Matrix3d(q * s * q.transpose())));
        const Eigen::Matrix3d psd = s * s;
        EXPECT_EQ(classify(Eigen::Matrix3d(q * psd * q.transpose())), Definiteness::PositiveSemidefinite);
    }
}

TEST(Classify, FieldHistogramCountsEveryPoint)
{
    const Grid g(3, 8);
    const auto hist = classify(symmetrize(gradient(random_solenoidal(g, 1))));
    EXPECT_EQ(hist[0] + hist[1] + hist[2] + hist[3], g.size());
    EXPECT_EQ(hist[static_cast<std::size_t>(Definiteness::PositiveSemidefinite)], 0u);
    EXPECT_EQ(hist[static_cast<std::size_t>(Definiteness::NegativeSemidefinite)], 0u);
}

TEST(IntegralForm, Examples)
{
    const Grid g(3, 8);
    const Eigen::Matrix3d d = Eigen::Vector3d(1.0, 1.0, -2.0).asDiagonal();
    const auto sym = symmetrize(constant_gradient(g, d));
    EXPECT_EQ(integral_form(sym, PhysicalField(g, 3)), 0.0);
    const auto w = PhysicalField::from_function(g, 3, [](const auto& x) { return std::array<double, 3>{std::sin(x[0]), 0.0, 0.0}; });
    EXPECT_NEAR(integral_form(sym, w), 4.0 * pi * pi * pi, 1e-10);
    const auto neg = symmetrize(constant_gradient(g, -d));
    EXPECT_DOUBLE_EQ(integral_form(neg, w), -integral_form(sym, w));
}

TEST(IntegralForm, GridMismatch)
{
    const auto sym = symmetrize(constant_gradient(Grid(3, 8), Eigen::Matrix3d::Identity()));
    EXPECT_THROW(integral_form(sym, PhysicalField(Grid(3, 4), 3)), GridMismatch);
}

TEST(Criterion, ZeroFieldHolds)
{
    const auto cert = criterion_certificate(PhysicalField(Grid(3, 8), 3), 0.5, 1.0, 1.0);
    EXPECT_EQ(cert.lhs, 0.0);
    EXPECT_DOUBLE_EQ(cert.rhs, 1.0);
    EXPECT_TRUE(cert.holds);
    EXPECT_TRUE(cert.has_histogram);
    EXPECT_EQ(cert.histogram[static_cast<std::size_t>(Definiteness::Zero)], Grid(3, 8).size());
}

TEST(Criterion, TaylorGreenClosedForm)
{
    const auto cert = criterion_certificate(taylor_green(Grid(2, 16)), 0.5, 1.0, 1.0);
    EXPECT_NEAR(cert.lhs, pi, 1e-12);
    EXPECT_DOUBLE_EQ(cert.rhs, 1.0);
    EXPECT_FALSE(cert.holds);
    EXPECT_FALSE(cert.has_histogram);
}

TEST(Criterion, RhsUsesQuarterPower)
{
    const auto cert = criterion_certificate(PhysicalField(Grid(2, 8), 2), 1.0, 0.3, 16.0);
    EXPECT_NEAR(cert.rhs, 0.6, 1e-15);
}

TEST(Criterion, MonotoneInAmplitudeWithUniqueThreshold)
{
    const Grid g(3, 8);
    const auto v = random_solenoidal(g, 2);
    const double base = criterion_certificate(v, 0.3, 1.0, 1.0).lhs;
    const double threshold = 1.0 / base;
    bool failed = false;
    for (double s = 0.05; s < 5.0 * threshold; s *= 1.1) {
        const auto cert = criterion_certificate(s * v, 0.3, 1.0, 1.0);
        EXPECT_NEAR(cert.lhs, s * base, 1e-12 * s * base);
        if (failed) {
            EXPECT_FALSE(cert.holds) << s;
        }
        failed = failed || !cert.holds;
        EXPECT_EQ(cert.holds, s <= threshold * (1.0 + 1e-12)) << s;
    }
    EXPECT_TRUE(failed);
}

TEST(Criterion, TrajectorySeriesCarriesConstants)
{
    const auto b = build_basis(3, 1);
    const auto system = assemble_system(b);
    SimConfig c;
    c.nu = 0.5;
    c.dt = 1e-2;
    c.t_end = 0.05;
    c.initial = oracle::normal_vector(static_cast<Eigen::Index>(b.size()), 4);
    const auto record = run(c, system);
    const auto certs = criterion_theorem31(record, b, Grid(3, 8), 0.2, 0.5, b.lambda1());
    ASSERT_EQ(certs.size(), record.snapshots.size());
    for (std::size_t s = 0; s < certs.size(); ++s) {
        EXPECT_EQ(certs[s].c_used, 0.2);
        EXPECT_DOUBLE_EQ(certs[s].time, record.times[s]);
        EXPECT_EQ(certs[s].holds, certs[s].rhs >= certs[s].lhs);
    }
}

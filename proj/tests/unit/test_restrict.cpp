#include <cmath>

#include <gtest/gtest.h>

#include "nslab/errors.hpp"
#include "nslab/integrate.hpp"
#include "nslab/restrict.hpp"
#include "oracles.hpp"

using namespace nslab;

namespace {

ScalarField scalar(const Grid& g, const std::function<double(const std::array<double, 3>&)>& f)
{
    ScalarField s{g, std::vector<double>(g.size())};
    for (std::size_t p = 0; p < g.size(); ++p) {
        s.values[p] = f(g.coordinate(p));
    }
    return s;
}

ScalarField random_trig(const Grid& g, std::uint64_t seed)
{
    const auto c = oracle::normal_vector(8, seed);
    return scalar(g, [&](const auto& x) {
        return c[0] * std::sin(x[0]) + c[1] * std::cos(2.0 * x[1]) + c[2] * std::sin(x[0] + 3.0 * x[1]) +
               c[3] * std::cos(2.0 * x[0] - x[1]) + c[4] * std::sin(4.0 * x[1]) + c[5];
    });
}

} // namespace

TEST(Hyperplane, Normalization)
{
    const auto p = make_hyperplane(1, 1, 1, 0);
    EXPECT_EQ(p, (Hyperplane{1.0, 1.0, 0.0}));
    const auto q = make_hyperplane(2, 4, 2, 6);
    EXPECT_EQ(q, (Hyperplane{1.0, 2.0, 3.0}));
    EXPECT_THROW(make_hyperplane(1, 0, 1, 0), UnsupportedOrientation);
    EXPECT_THROW(make_hyperplane(1, 1, 0, 0), DegeneratePlane);
    EXPECT_THROW(Hyperplane::normalized(0.0, 1.0, 0.0), UnsupportedOrientation);
}

TEST(Hyperplane, SubstitutionRules)
{
    const auto s = substitute_d3(Hyperplane{1.0, 1.0, 0.0});
    EXPECT_EQ(s.first.d1, -1.0);
    EXPECT_EQ(s.first.d2, -1.0);
    const auto t = substitute_d3(Hyperplane{1.0, 2.0, 0.0});
    EXPECT_EQ(t.second, (SecondOrderRule{1.0, 0.25, 1.0}));
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto r = substitute_d3(oracle::random_plane(seed));
        EXPECT_EQ(compose(r.first), r.second) << seed;
    }
}

TEST(RestrictField, ConstantField)
{
    const Grid g3(3, 8);
    const auto u = PhysicalField::from_function(g3, 3, [](const auto&) { return std::array<double, 3>{1.0, -2.0, 0.5}; });
    const auto r = restrict_field(u, Hyperplane{0.3, -1.7, 0.9}, Grid(2, 8));
    for (std::size_t p = 0; p < r.grid().size(); ++p) {
        EXPECT_NEAR(r.component(0)[p], 1.0, 1e-14);
        EXPECT_NEAR(r.component(1)[p], -2.0, 1e-14);
        EXPECT_NEAR(r.component(2)[p], 0.5, 1e-14);
    }
}

TEST(RestrictField, ClosedFormComposition)
{
    const Grid g3(3, 32);
    const Grid g2(2, 32);
    const auto u = PhysicalField::from_function(g3, 3, [](const auto& x) { return std::array<double, 3>{std::sin(x[2]), 0.0, 0.0}; });
    const auto r = restrict_field(u, Hyperplane{1.0, 1.0, 0.0}, g2);
    double err = 0.0;
    for (std::size_t p = 0; p < g2.size(); ++p) {
        const auto x = g2.coordinate(p);
        err = std::max(err, std::abs(r.component(0)[p] - std::sin(-x[0] - x[1])));
    }
    EXPECT_LE(err, 1e-10);
}

TEST(RestrictField, OffGridPlaneMatchesClosedForm)
{
    const Grid g3(3, 16);
    const Grid g2(2, 16);
    const Hyperplane plane{0.37, -1.3, 0.41};
    const auto f = [](const std::array<double, 3>& x) {
        return std::array<double, 3>{std::sin(x[0] + 2.0 * x[2]), std::cos(3.0 * x[1] - x[2]), std::sin(x[2]) * std::cos(x[0])};
    };
    const auto r = restrict_field(PhysicalField::from_function(g3, 3, f), plane, g2);
    for (std::size_t p = 0; p < g2.size(); ++p) {
        const auto x = g2.coordinate(p);
        const auto ref = f({x[0], x[1], plane.height(x[0], x[1])});
        for (int c = 0; c < 3; ++c) {
            EXPECT_NEAR(r.component(c)[p], ref[c], 1e-12);
        }
    }
}

TEST(RestrictField, Linearity)
{
    const Grid g3(3, 8);
    const auto b = build_basis(3, 2);
    const auto u = synthesize(oracle::normal_vector(static_cast<Eigen::Index>(b.size()), 3), b, g3);
    const Hyperplane plane{2.0, 0.5, 1.0};
    const auto a = restrict_field(2.5 * u, plane, Grid(2, 8));
    const auto c = restrict_field(u, plane, Grid(2, 8));
    EXPECT_LE((a - 2.5 * c).max_abs(), 1e-14 * std::max(1.0, a.max_abs()));
}

TEST(RestrictedDivergence, Examples)
{
    const Grid g(2, 16);
    const Hyperplane plane{1.0, 1.0, 0.0};
    const auto constant = PhysicalField::from_function(g, 3, [](const auto&) { return std::array<double, 3>{1.0, 2.0, 3.0}; });
    EXPECT_EQ(restricted_divergence(constant, plane).max_abs(), 0.0);
    const auto u = PhysicalField::from_function(g, 3, [](const auto& x) { return std::array<double, 3>{std::sin(x[0]), 0.0, 0.0}; });
    const auto d = restricted_divergence(u, plane);
    for (std::size_t p = 0; p < g.size(); ++p) {
        EXPECT_NEAR(d.values[p], std::cos(g.coordinate(p)[0]), 1e-12);
    }
}

TEST(StreamFunction, ClosedFormAndZero)
{
    const Grid g(2, 16);
    const Hyperplane plane{1.0, 1.0, 0.0};
    const auto zero = solenoidal_from_stream(scalar(g, [](const auto&) { return 0.0; }), scalar(g, [](const auto&) { return 0.0; }), plane);
    EXPECT_EQ(zero.max_abs(), 0.0);
    const auto u = solenoidal_from_stream(scalar(g, [](const auto& x) { return std::sin(x[0]) * std::sin(x[1]); }),
                                          scalar(g, [](const auto&) { return 0.0; }), plane);
    for (std::size_t p = 0; p < g.size(); ++p) {
        const auto x = g.coordinate(p);
        EXPECT_NEAR(u.component(0)[p], std::sin(x[0]) * std::cos(x[1]), 1e-13);
        EXPECT_NEAR(u.component(1)[p], -std::cos(x[0]) * std::sin(x[1]), 1e-13);
        EXPECT_EQ(u.component(2)[p], 0.0);
    }
}

TEST(StreamFunction, SeededSweepSatisfiesConstraint)
{
    const Grid g(2, 16);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto plane = oracle::random_plane(seed);
        const auto u = solenoidal_from_stream(random_trig(g, seed), random_trig(g, seed + 100), plane);
        EXPECT_LE(restricted_divergence(u, plane).max_abs(), 1e-12) << seed;
    }
}

TEST(StreamFunction, GridMismatch)
{
    EXPECT_THROW(solenoidal_from_stream(scalar(Grid(2, 8), [](const auto&) { return 0.0; }),
                                        scalar(Grid(2, 16), [](const auto&) { return 0.0; }), Hyperplane{}),
                 GridMismatch);
}

TEST(Constraint, ProjectionRemovesViolation)
{
    const Grid g(2, 16);
    const Hyperplane plane{1.0, -2.0, 0.0};
    const auto u = PhysicalField::from_function(g, 3, [](const auto& x) {
        return std::array<double, 3>{std::sin(x[0]), std::cos(x[0] + x[1]), std::sin(2.0 * x[1])};
    });
    const auto proj = enforce_constraint(u, plane);
    EXPECT_GT(proj.constraint_residual, 0.1);
    EXPECT_GT(proj.removed_norm, 0.0);
    EXPECT_LE(restricted_divergence(proj.field, plane).max_abs(), 1e-12);
    EXPECT_NEAR(std::sqrt(inner_product(u - proj.field, u - proj.field)), proj.removed_norm, 1e-12);
}

TEST(RestrictProblem, ParametersAndZeroData)
{
    const Grid g3(3, 8);
    const auto p = restrict_problem(PhysicalField(g3, 3), PhysicalField(g3, 3), Hyperplane{1.0, 1.0, 0.0}, Grid(2, 8));
    EXPECT_EQ(p.elliptic.c11, 2.0);
    EXPECT_EQ(p.elliptic.c22, 2.0);
    EXPECT_EQ(p.elliptic.c12, 2.0);
    EXPECT_EQ(p.initial.max_abs(), 0.0);
    EXPECT_EQ(p.forcing.max_abs(), 0.0);
    EXPECT_EQ(p.removed_norm, 0.0);
}

TEST(RestrictProblem, EllipticSymbolPositiveForSeededPlanes)
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto plane = oracle::random_plane(seed);
        const auto e = EllipticParams::from_plane(plane);
        for (const auto& m : build_restricted_basis(plane, 4).modes()) {
            const std::array<double, 3> kappa{static_cast<double>(m.k[0]), static_cast<double>(m.k[1]), 0.0};
            EXPECT_GT(e.symbol(kappa, 2), 0.0);
            EXPECT_NEAR(e.symbol(kappa, 2), m.eigenvalue, 1e-12 * m.eigenvalue);
        }
    }
}

TEST(RestrictProblem, PipelineRunKeepsTrilinearDiagnosticZero)
{
    const Grid g3(3, 16);
    const Hyperplane plane{1.0, 1.0, 0.0};
    const auto b3 = build_basis(3, 3);
    const auto u3 = synthesize(oracle::normal_vector(static_cast<Eigen::Index>(b3.size()), 2), b3, g3);
    const auto problem = restrict_problem(u3, PhysicalField(g3, 3), plane, Grid(2, 16));
    const auto basis = build_restricted_basis(plane, 5);
    const auto system = assemble_system(basis);
    SimConfig c;
    c.nu = 0.2;
    c.dt = 1e-3;
    c.t_end = 0.05;
    c.plane = plane;
    c.initial = analyze(resample(problem.initial, basis.quadrature_grid()), basis);
    c.thinning = 10;
    const auto record = run(c, system);
    for (const auto& a : record.snapshots) {
        EXPECT_LE(std::abs(system.evaluator.form(a, a, a)), 1e-12);
    }
    for (double d : record.div_max) {
        EXPECT_LE(d, 1e-12);
    }
}

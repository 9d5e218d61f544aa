#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "nslab/config.hpp"
#include "nslab/errors.hpp"
#include "nslab/report.hpp"

using namespace nslab;

namespace {

const char* minimal = R"(# Taylor-Green decay
scenario = simulate
grid.n = 16
sim.nu = 0.1
sim.dt = 1e-3
sim.t_end = 1
ic = taylor_green
)";

ConfigError::Reason reason_of(const std::string& text, std::size_t* line = nullptr)
{
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        if (line) {
            *line = e.line();
        }
        return e.reason();
    }
    ADD_FAILURE() << "no ConfigError for:\n" << text;
    return ConfigError::Reason::UnknownKey;
}

} // namespace

TEST(Config, MinimalSimulateIsValid)
{
    const auto c = parse_config(minimal);
    EXPECT_EQ(c.scenario, Scenario::Simulate);
    EXPECT_EQ(c.n, 16);
    EXPECT_EQ(c.dim, 2);
    EXPECT_DOUBLE_EQ(c.nu, 0.1);
    EXPECT_DOUBLE_EQ(c.dt, 1e-3);
    EXPECT_DOUBLE_EQ(c.t_end, 1.0);
    EXPECT_EQ(c.ic.kind, InitialCondition::Kind::TaylorGreen);
    EXPECT_EQ(c.resolved_k_max(), 5);
    EXPECT_FALSE(c.plane.has_value());
}

std::string replace_line(const std::string& key, const std::string& line)
{
    std::string out;
    std::istringstream in(minimal);
    std::string l;
    while (std::getline(in, l)) {
        out += (l.rfind(key + " ", 0) == 0 ? line : l) + "\n";
    }
    return out;
}

TEST(Config, NegativeViscosityIsTypeError)
{
    std::size_t line = 0;
    EXPECT_EQ(reason_of(replace_line("sim.nu", "sim.nu = -1"), &line), ConfigError::Reason::TypeError);
    EXPECT_EQ(line, 4u);
}

TEST(Config, UnknownKeyNamesLine)
{
    std::size_t line = 0;
    EXPECT_EQ(reason_of(std::string(minimal) + "sim.viscosity = 3\n", &line), ConfigError::Reason::UnknownKey);
    EXPECT_EQ(line, 8u);
    try {
        parse_config("scenario = gns\nfoo = 1\n");
        ADD_FAILURE() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("foo"), std::string::npos);
        EXPECT_EQ(e.kind(), "UnknownKey");
    }
}

TEST(Config, MissingRequired)
{
    EXPECT_EQ(reason_of(replace_line("sim.dt", "")), ConfigError::Reason::MissingRequired);
    EXPECT_EQ(reason_of("grid.n = 16\n"), ConfigError::Reason::MissingRequired);
    EXPECT_NO_THROW(parse_config("scenario = gns\n"));
}

TEST(Config, TypeErrors)
{
    EXPECT_EQ(reason_of(replace_line("grid.n", "grid.n = sixteen")), ConfigError::Reason::TypeError);
    EXPECT_EQ(reason_of(replace_line("grid.n", "grid.n = 15")), ConfigError::Reason::TypeError);
    EXPECT_EQ(reason_of(replace_line("sim.dt", "sim.dt = 2")), ConfigError::Reason::TypeError);
    EXPECT_EQ(reason_of(replace_line("ic", "ic = vortex_sheet")), ConfigError::Reason::TypeError);
    EXPECT_EQ(reason_of(std::string(minimal) + "grid.n = 32\n"), ConfigError::Reason::TypeError);
    EXPECT_EQ(reason_of(std::string(minimal) + "no equals sign\n"), ConfigError::Reason::TypeError);
    EXPECT_EQ(reason_of(std::string(minimal) + "basis.k_max = 9\n"), ConfigError::Reason::TypeError);
}

TEST(Config, PlaneForms)
{
    const auto a = parse_config(std::string(minimal) + "plane = 1, 2, 3\n");
    EXPECT_EQ(*a.plane, (Hyperplane{1.0, 2.0, 3.0}));
    const auto b = parse_config(std::string(minimal) + "plane = 2,4,2,6\n");
    EXPECT_EQ(*b.plane, (Hyperplane{1.0, 2.0, 3.0}));
    EXPECT_THROW(parse_config(std::string(minimal) + "plane = 1,0,1,0\n"), UnsupportedOrientation);
    EXPECT_THROW(parse_config(std::string(minimal) + "plane = 1,1,0,0\n"), DegeneratePlane);
}

TEST(Config, Presets)
{
    const auto a = parse_config(replace_line("ic", "ic = single_mode(3)"));
    EXPECT_EQ(a.ic.kind, InitialCondition::Kind::SingleMode);
    EXPECT_EQ(a.ic.mode, 3u);
    const auto b = parse_config(replace_line("ic", "ic = seeded_random(42, 1.5)") + "seed = 7\n");
    EXPECT_EQ(b.ic.kind, InitialCondition::Kind::SeededRandom);
    EXPECT_EQ(b.ic_seed(), 42u);
    EXPECT_DOUBLE_EQ(b.ic.decay, 1.5);
    const auto c = parse_config(replace_line("ic", "ic = seeded_random(2)") + "seed = 7\n");
    EXPECT_EQ(c.ic_seed(), 7u);
    const auto d = parse_config(std::string(minimal) + "forcing = mode(2, 0.5, 3)\n");
    EXPECT_EQ(d.forcing.kind, ForcingSpec::Kind::Mode);
    EXPECT_DOUBLE_EQ(d.forcing.omega, 3.0);
    const auto e = parse_config("scenario = gns\ngns.p2 = inf\n");
    EXPECT_TRUE(std::isinf(e.gns_p2));
}

TEST(Config, CommentsAndBlankLines)
{
    const auto c = parse_config("\n  # comment\nscenario = gns   # trailing\n\n");
    EXPECT_EQ(c.scenario, Scenario::Gns);
}

TEST(Config, CanonicalTextIgnoresFormattingAndOutputDir)
{
    const auto a = parse_config(minimal);
    const auto b = parse_config(std::string("# other\n") + minimal + "outputs.dir = elsewhere\n");
    EXPECT_EQ(canonical_text(a), canonical_text(b));
    EXPECT_EQ(config_hash(a), config_hash(b));
    auto c = a;
    c.seed = 1;
    EXPECT_NE(config_hash(a), config_hash(c));
}

TEST(Report, Fnv1aKnownVectors)
{
    EXPECT_EQ(fnv1a64_hex(""), "cbf29ce484222325");
    EXPECT_EQ(fnv1a64_hex("a"), "af63dc4c8601ec8c");
}

TEST(Report, EmptySeriesGivesHeaderOnly)
{
    std::ostringstream out;
    write_timeseries(out, TrajectoryRecord{});
    EXPECT_EQ(out.str(), "t,energy,dirichlet,work,balance_residual,div_max\n");
    std::ostringstream g;
    write_gronwall_csv(g, GronwallCertificate{});
    EXPECT_EQ(g.str(), "t,w_energy,envelope\n");
}

TEST(Report, RealsRoundTrip)
{
    for (double x : {0.1, 1.0 / 3.0, 2.0 * std::acos(-1.0) * std::acos(-1.0) * std::exp(-0.4), 1e-300, -123456.789}) {
        EXPECT_EQ(std::stod(format_real(x)), x);
    }
}

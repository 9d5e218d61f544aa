/// @file config.hpp
/// @brief Line-oriented `section.key = value` run configuration.
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "nslab/grid.hpp"
#include "nslab/hyperplane.hpp"

namespace nslab {

enum class Scenario { Simulate, Restrict, Certify, Gns, Uniqueness };

const char* to_string(Scenario s) noexcept;

struct InitialCondition {
    enum class Kind { TaylorGreen, SingleMode, SeededRandom };
    Kind kind = Kind::TaylorGreen;
    std::size_t mode = 0;
    std::optional<std::uint64_t> seed;
    double decay = 0.0;
    double amplitude = 1.0;
};

struct ForcingSpec {
    enum class Kind { None, Mode };
    Kind kind = Kind::None;
    std::size_t mode = 0;
    double amplitude = 0.0;
    double omega = 0.0;
};

struct RunConfig {
    Scenario scenario = Scenario::Simulate;
    std::uint64_t seed = 0;

    int dim = 2;
    int n = 16;
    double period = two_pi;
    /// 0 selects the default max(1, (n - 1) / 3).
    int k_max = 0;

    double nu = 0.1;
    double dt = 1e-3;
    double t_end = 1.0;

    InitialCondition ic;
    ForcingSpec forcing;
    std::optional<Hyperplane> plane;

    std::string output_dir = "out";
    std::size_t thinning = 1;
    bool tensor_dump = false;

    std::optional<double> certify_c;
    double certify_amplitude = 1.0;
    std::optional<double> certify_lambda1;

    std::optional<int> gns_d;
    double gns_p0 = 4.0;
    double gns_p1 = 2.0;
    double gns_p2 = 2.0;
    int gns_s = 0;
    int gns_m = 1;
    double gns_exponent = 2.0;
    std::size_t gns_samples = 16;

    double epsilon = 1e-3;
    std::size_t perturb_mode = 0;
    std::optional<double> uniqueness_c;

    std::string restrict_input;
    bool restrict_simulate = false;

    int resolved_k_max() const noexcept;
    /// Seed of the initial-condition stream: the master seed unless the preset names one.
    std::uint64_t ic_seed() const noexcept { return ic.seed.value_or(seed); }
};

/// Parses and validates configuration text. Blank lines and `#` comments are ignored.
/// Throws ConfigError (UnknownKey, TypeError, MissingRequired) naming the line, and
/// propagates plane errors from make_hyperplane.
RunConfig parse_config(std::string_view text);

/// Reads and parses a file; throws IoError when it cannot be read.
RunConfig load_config(const std::filesystem::path& path);

/// Canonical `key = value` listing of every resolved setting (17 significant digits).
std::string canonical_text(const RunConfig& config);

} // namespace nslab

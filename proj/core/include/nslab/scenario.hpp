/// @file scenario.hpp
/// @brief Batch scenarios: configuration in, deterministic artifacts out.
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nslab/basis.hpp"
#include "nslab/config.hpp"
#include "nslab/integrate.hpp"

namespace nslab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitCertificateFails = 2;

struct ScenarioResult {
    int exit_code = kExitOk;
    /// Machine-readable JSON summary (also written as summary.json).
    std::string summary;
    /// Data artifacts written, relative to the output directory, in creation order.
    std::vector<std::string> artifacts;
};

/// Initial coefficients for the configured preset on `basis` (standard or restricted).
/// Throws InvalidConfig when a single_mode index is outside the basis.
Eigen::VectorXd initial_coefficients(const RunConfig& config, const BasisSet& basis);

/// Projected forcing for the configured preset; throws InvalidConfig for an out-of-range mode.
Forcing make_forcing(const RunConfig& config, const BasisSet& basis);

/// Simulation settings from the configuration for `basis`.
SimConfig make_sim_config(const RunConfig& config, const BasisSet& basis);

/// Grid constant for the standard or restricted Ladyzhenskaya estimate; a restricted
/// basis scales the GNS estimate by 1 + max(|1/a1|, |1/a2|) to cover the effective velocity.
double estimated_trilinear_constant(const RunConfig& config, const BasisSet& basis);

/// Executes the configured scenario, writing artifacts and manifest.json into `out_dir`.
/// Returns exit code 0 on success and 2 when a certificate verdict is false; errors propagate.
ScenarioResult run_scenario(const RunConfig& config, const std::filesystem::path& out_dir);

} // namespace nslab

/// @file uniqueness.hpp
/// @brief Difference dynamics w = u - v, its energy identity and the Gronwall bound.
#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "nslab/assembly.hpp"
#include "nslab/integrate.hpp"

namespace nslab {

struct DifferenceSeries {
    std::vector<double> times;
    std::vector<Eigen::VectorXd> w;
    /// ||w||_2^2 per snapshot.
    std::vector<double> w_energy;
};

/// Coefficient-wise run_a - run_b at every stored snapshot.
/// Throws IncompatibleRuns unless both runs share dt, snapshot times and basis size.
DifferenceSeries difference_trajectory(const TrajectoryRecord& run_a, const TrajectoryRecord& run_b);

/// Residual of 1/2 d/dt ||w||^2 + nu <A w, w> + b(w, u, w) with u = run_a, assuming both runs
/// share the forcing. Both runs must store every step (thinning 1).
/// Throws IncompatibleRuns on mismatched runs, MisalignedSeries when steps are missing.
std::vector<double> w_energy_identity_residual(const TrajectoryRecord& run_a, const TrajectoryRecord& run_b,
                                               const GalerkinSystem& system);

/// C = c^2 / (4 nu); throws InvalidArgument unless both inputs are positive.
double gronwall_constant(double c_estimate, double nu);

struct GronwallCertificate {
    std::vector<double> times;
    std::vector<double> w_energy;
    std::vector<double> envelope;
    double C_used = 0.0;
    /// max_t w_energy / envelope (0 when both vanish).
    double max_ratio = 0.0;
    /// w_energy <= envelope * (1 + 1e-8) at every time.
    bool holds = false;
};

/// envelope(t) = ||w(0)||^2 exp(2 C int_0^t ||grad u||^2 ds), the integral accumulated by the
/// trapezoid rule over every step of `run_u`. Throws MisalignedSeries unless the w series
/// times coincide with the snapshot times of `run_u`.
GronwallCertificate gronwall_bound_check(const TrajectoryRecord& run_u, const DifferenceSeries& w, double C);

/// Cumulative trapezoid integral of ||grad u||^2 at every step of the run.
std::vector<double> cumulative_gradient_integral(const TrajectoryRecord& run);

struct PerturbationResult {
    double epsilon = 0.0;
    std::size_t mode = 0;
    TrajectoryRecord run_a;
    TrajectoryRecord run_b;
    DifferenceSeries difference;
    GronwallCertificate certificate;
};

/// Runs `config` and a copy whose initial data is shifted by epsilon along basis mode `mode`,
/// then checks the Gronwall bound with C = gronwall_constant(c, config.nu).
/// Throws InvalidArgument for negative epsilon or an out-of-range mode.
PerturbationResult perturbation_experiment(const SimConfig& config, const GalerkinSystem& system, double epsilon,
                                           std::size_t mode, double c);

} // namespace nslab

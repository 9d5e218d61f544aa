/// @file integrate.hpp
/// @brief Time integration of the Galerkin ODE system with energy diagnostics.
///
/// The scheme integrates the diagonal elliptic term exactly through the factor
/// exp(-nu lambda_i dt) and treats the trilinear term and forcing with a two-stage
/// explicit (Heun) update on the transformed variable. Steps are fixed, so identical
/// configurations reproduce bit-identical trajectories.
#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "nslab/assembly.hpp"
#include "nslab/hyperplane.hpp"

namespace nslab {

/// Projected forcing as a function of time.
class Forcing {
public:
    using Function = std::function<Eigen::VectorXd(double t)>;

    static Forcing none() { return Forcing(); }
    static Forcing steady(Eigen::VectorXd coefficients);
    /// amplitude * cos(omega t) along basis mode `index`.
    static Forcing mode(std::size_t index, double amplitude, double omega = 0.0);
    /// Projects a physical forcing field onto `basis` at every evaluation.
    static Forcing from_field(FieldSeries field, const BasisSet& basis);
    static Forcing from_function(Function fn) { return Forcing(std::move(fn)); }

    bool is_zero() const noexcept { return !fn_; }
    Eigen::VectorXd evaluate(double t, Eigen::Index size) const;

private:
    Forcing() = default;
    explicit Forcing(Function fn) : fn_(std::move(fn)) {}
    Function fn_;
};

struct SimConfig {
    double nu = 0.1;
    double dt = 1e-3;
    double t_end = 1.0;
    Eigen::VectorXd initial;
    Forcing forcing = Forcing::none();
    /// Must match the basis restriction of the system; selects restricted dynamics.
    std::optional<Hyperplane> plane;
    /// Keep every `thinning`-th coefficient snapshot (the final step is always kept).
    std::size_t thinning = 1;
    /// Evaluate the max divergence of every kept snapshot on the quadrature grid.
    bool track_divergence = true;

    /// Throws InvalidConfig on violated invariants or a mismatch with `system`.
    void validate(const GalerkinSystem& system) const;
    std::size_t step_count() const;
};

/// Per-step diagnostics plus thinned coefficient snapshots.
///
/// `energy` is ||u||_2^2, `dirichlet` is nu <A u, u> (nu ||grad u||_2^2 for the standard
/// Laplacian), `work` is <f, u>, and `balance_residual` is the residual of
/// 1/2 d/dt energy + dirichlet - work with second-order finite differences in time.
struct TrajectoryRecord {
    double dt = 0.0;
    double nu = 0.0;
    std::vector<double> times;
    std::vector<double> energy;
    std::vector<double> dirichlet;
    std::vector<double> work;
    std::vector<double> gradient_sq;
    std::vector<double> forcing_norm;
    std::vector<double> balance_residual;

    std::vector<std::size_t> snapshot_steps;
    std::vector<Eigen::VectorXd> snapshots;
    /// Max pointwise divergence per snapshot (restricted divergence for restricted runs);
    /// empty when tracking is disabled.
    std::vector<double> div_max;

    /// sqrt(sum_n dt ||(a_{n+1} - a_n)/dt||_{V*}^2) with ||x||_{V*}^2 = sum x_i^2 / lambda_i.
    double derivative_l2 = 0.0;
    std::size_t cfl_warnings = 0;

    const Eigen::VectorXd& final_state() const { return snapshots.back(); }
    std::vector<double> snapshot_times() const;
};

/// One integrating-factor Heun step from time t. Throws DivergedError on non-finite output.
Eigen::VectorXd step(const Eigen::VectorXd& state, double t, const GalerkinSystem& system,
                     const SimConfig& config, std::size_t step_index = 0);

TrajectoryRecord run(const SimConfig& config, const GalerkinSystem& system);

/// Residual of 1/2 d/dt ||u||^2 + nu <A u, u> - <f, u> from the stored series; centered
/// differences inside, second-order one-sided differences at the ends.
/// Throws InvalidArgument for fewer than three samples.
std::vector<double> energy_balance_residual(const TrajectoryRecord& record);

/// ||u0|| + integral of ||f||: an upper bound for ||u(t)||_2 from the energy inequality.
std::vector<double> a_priori_envelope(const TrajectoryRecord& record);

/// Second-order differentiation of a uniformly sampled series (same stencils as above).
std::vector<double> time_derivative(const std::vector<double>& series, double dt);

} // namespace nslab

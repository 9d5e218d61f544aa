#include "nslab/uniqueness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nslab/errors.hpp"

namespace nslab {

namespace {

void require_compatible(const TrajectoryRecord& a, const TrajectoryRecord& b)
{
    if (a.dt != b.dt || a.times != b.times || a.snapshot_steps != b.snapshot_steps) {
        throw IncompatibleRuns("runs differ in time step or sampling");
    }
    if (!a.snapshots.empty() && a.snapshots.front().size() != b.snapshots.front().size()) {
        throw IncompatibleRuns("runs use bases of different size");
    }
}

} // namespace

DifferenceSeries difference_trajectory(const TrajectoryRecord& run_a, const TrajectoryRecord& run_b)
{
    require_compatible(run_a, run_b);
    DifferenceSeries out;
    out.times = run_a.snapshot_times();
    out.w.reserve(run_a.snapshots.size());
    out.w_energy.reserve(run_a.snapshots.size());
    for (std::size_t s = 0; s < run_a.snapshots.size(); ++s) {
        out.w.push_back(run_a.snapshots[s] - run_b.snapshots[s]);
        out.w_energy.push_back(out.w.back().squaredNorm());
    }
    return out;
}

std::vector<double> w_energy_identity_residual(const TrajectoryRecord& run_a, const TrajectoryRecord& run_b,
                                               const GalerkinSystem& system)
{
    require_compatible(run_a, run_b);
    if (run_a.snapshots.size() != run_a.times.size()) {
        throw MisalignedSeries("the identity residual needs a snapshot at every step");
    }
    const auto diff = difference_trajectory(run_a, run_b);
    const auto rate = time_derivative(diff.w_energy, run_a.dt);
    const Eigen::VectorXd& lambda = system.stiffness_diagonal;
    std::vector<double> out(rate.size());
    for (std::size_t n = 0; n < out.size(); ++n) {
        const Eigen::VectorXd& w = diff.w[n];
        const double dissipation = run_a.nu * w.cwiseProduct(w).dot(lambda);
        const double transfer = system.evaluator.form(w, run_a.snapshots[n], w);
        out[n] = 0.5 * rate[n] + dissipation + transfer;
    }
    return out;
}

double gronwall_constant(double c_estimate, double nu)
{
    if (!(c_estimate > 0.0) || !(nu > 0.0)) {
        throw InvalidArgument("gronwall_constant needs c > 0 and nu > 0");
    }
    return c_estimate * c_estimate / (4.0 * nu);
}

std::vector<double> cumulative_gradient_integral(const TrajectoryRecord& run)
{
    std::vector<double> out(run.gradient_sq.size(), 0.0);
    for (std::size_t n = 1; n < out.size(); ++n) {
        out[n] = out[n - 1] + 0.5 * run.dt * (run.gradient_sq[n - 1] + run.gradient_sq[n]);
    }
    return out;
}

GronwallCertificate gronwall_bound_check(const TrajectoryRecord& run_u, const DifferenceSeries& w, double C)
{
    if (w.times != run_u.snapshot_times() || w.w_energy.size() != w.times.size()) {
        throw MisalignedSeries("difference series is not aligned with the reference run");
    }
    const auto integral = cumulative_gradient_integral(run_u);
    GronwallCertificate cert;
    cert.C_used = C;
    cert.times = w.times;
    cert.w_energy = w.w_energy;
    cert.envelope.reserve(w.times.size());
    const double initial = w.w_energy.empty() ? 0.0 : w.w_energy.front();
    cert.holds = true;
    for (std::size_t s = 0; s < w.times.size(); ++s) {
        const double env = initial * std::exp(2.0 * C * integral[run_u.snapshot_steps[s]]);
        cert.envelope.push_back(env);
        const double we = w.w_energy[s];
        if (!(we <= env * (1.0 + 1e-8))) {
            cert.holds = false;
        }
        double ratio = 0.0;
        if (env > 0.0) {
            ratio = we / env;
        } else if (we > 0.0) {
            ratio = std::numeric_limits<double>::infinity();
        }
        cert.max_ratio = std::max(cert.max_ratio, ratio);
    }
    return cert;
}

PerturbationResult perturbation_experiment(const SimConfig& config, const GalerkinSystem& system, double epsilon,
                                           std::size_t mode, double c)
{
    if (!(epsilon >= 0.0)) {
        throw InvalidArgument("epsilon must be nonnegative");
    }
    if (mode >= system.basis.size()) {
        throw InvalidArgument("perturbation mode " + std::to_string(mode) + " outside the basis");
    }
    PerturbationResult out;
    out.epsilon = epsilon;
    out.mode = mode;
    out.run_a = run(config, system);
    SimConfig perturbed = config;
    perturbed.initial[static_cast<Eigen::Index>(mode)] += epsilon;
    out.run_b = run(perturbed, system);
    out.difference = difference_trajectory(out.run_b, out.run_a);
    out.certificate = gronwall_bound_check(out.run_a, out.difference, gronwall_constant(c, config.nu));
    return out;
}

} // namespace nslab

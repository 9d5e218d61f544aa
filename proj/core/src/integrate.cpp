#include "nslab/integrate.hpp"

#include <cmath>
#include <iostream>

#include "nslab/errors.hpp"
#include "nslab/restrict.hpp"

namespace nslab {

Forcing Forcing::steady(Eigen::VectorXd coefficients)
{
    return Forcing([coefficients = std::move(coefficients)](double) { return coefficients; });
}

Forcing Forcing::mode(std::size_t index, double amplitude, double omega)
{
    return Forcing([index, amplitude, omega](double t) {
        Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(index) + 1);
        out[static_cast<Eigen::Index>(index)] = amplitude * std::cos(omega * t);
        return out;
    });
}

Forcing Forcing::from_field(FieldSeries field, const BasisSet& basis)
{
    return Forcing([field = std::move(field), basis](double t) { return analyze(field(t), basis); });
}

Eigen::VectorXd Forcing::evaluate(double t, Eigen::Index size) const
{
    if (!fn_) {
        return Eigen::VectorXd::Zero(size);
    }
    Eigen::VectorXd value = fn_(t);
    if (value.size() > size) {
        throw InvalidConfig("forcing has more entries than the basis has modes");
    }
    if (value.size() < size) {
        value.conservativeResizeLike(Eigen::VectorXd::Zero(size));
    }
    return value;
}

void SimConfig::validate(const GalerkinSystem& system) const
{
    if (!(nu > 0.0) || !std::isfinite(nu)) {
        throw InvalidConfig("nu must be positive");
    }
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw InvalidConfig("dt must be positive");
    }
    if (!(t_end > 0.0) || !std::isfinite(t_end)) {
        throw InvalidConfig("t_end must be positive");
    }
    if (dt > t_end) {
        throw InvalidConfig("dt must not exceed t_end");
    }
    if (initial.size() != static_cast<Eigen::Index>(system.basis.size())) {
        throw InvalidConfig("initial coefficients have length " + std::to_string(initial.size()) +
                            ", basis has " + std::to_string(system.basis.size()) + " modes");
    }
    if (plane != system.basis.plane()) {
        throw InvalidConfig("configured plane does not match the system's basis");
    }
    if (thinning == 0) {
        throw InvalidConfig("thinning must be >= 1");
    }
}

std::size_t SimConfig::step_count() const
{
    return static_cast<std::size_t>(std::llround(t_end / dt));
}

std::vector<double> TrajectoryRecord::snapshot_times() const
{
    std::vector<double> out;
    out.reserve(snapshot_steps.size());
    for (auto s : snapshot_steps) {
        out.push_back(times.at(s));
    }
    return out;
}

namespace {

Eigen::VectorXd decay_factors(const GalerkinSystem& system, double nu, double dt)
{
    return (-nu * dt * system.stiffness_diagonal.array()).exp().matrix();
}

Eigen::VectorXd rhs(const GalerkinSystem& system, const SimConfig& config, double t, const Eigen::VectorXd& a)
{
    Eigen::VectorXd out = -system.evaluator.apply(a);
    if (!config.forcing.is_zero()) {
        out += config.forcing.evaluate(t, a.size());
    }
    return out;
}

Eigen::VectorXd heun(const Eigen::VectorXd& a, double t, const Eigen::VectorXd& decay,
                     const GalerkinSystem& system, const SimConfig& config, std::size_t step_index)
{
    const double dt = config.dt;
    const Eigen::VectorXd k1 = rhs(system, config, t, a);
    const Eigen::VectorXd predictor = decay.cwiseProduct(a + dt * k1);
    const Eigen::VectorXd k2 = rhs(system, config, t + dt, predictor);
    Eigen::VectorXd next = decay.cwiseProduct(a + 0.5 * dt * k1) + 0.5 * dt * k2;
    if (!next.allFinite()) {
        throw DivergedError(step_index, "non-finite state");
    }
    return next;
}

double max_divergence(const Eigen::VectorXd& a, const GalerkinSystem& system)
{
    const auto field = synthesize(a, system.basis, system.evaluator.grid());
    if (system.basis.plane()) {
        return restricted_divergence(field, *system.basis.plane()).max_abs();
    }
    return divergence(field).max_abs();
}

} // namespace

Eigen::VectorXd step(const Eigen::VectorXd& state, double t, const GalerkinSystem& system,
                     const SimConfig& config, std::size_t step_index)
{
    if (state.size() != static_cast<Eigen::Index>(system.basis.size())) {
        throw InvalidCoefficients("state length does not match the basis");
    }
    if (!state.allFinite()) {
        throw DivergedError(step_index, "non-finite input state");
    }
    return heun(state, t, decay_factors(system, config.nu, config.dt), system, config, step_index);
}

TrajectoryRecord run(const SimConfig& config, const GalerkinSystem& system)
{
    config.validate(system);
    if (!config.initial.allFinite()) {
        throw DivergedError(0, "non-finite initial state");
    }
    const std::size_t steps = config.step_count();
    const Eigen::VectorXd decay = decay_factors(system, config.nu, config.dt);
    const Eigen::VectorXd& lambda = system.stiffness_diagonal;
    Eigen::VectorXd gradient_weight(lambda.size());
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        gradient_weight[i] = system.basis[static_cast<std::size_t>(i)].gradient_weight;
    }
    const double kappa_max = system.basis.k_max() * two_pi / system.basis.period();

    TrajectoryRecord record;
    record.dt = config.dt;
    record.nu = config.nu;
    const std::size_t samples = steps + 1;
    record.times.reserve(samples);
    record.energy.reserve(samples);
    record.dirichlet.reserve(samples);
    record.work.reserve(samples);
    record.gradient_sq.reserve(samples);
    record.forcing_norm.reserve(samples);

    Eigen::VectorXd a = config.initial;
    double derivative_sum = 0.0;
    bool warned = false;
    for (std::size_t n = 0; n <= steps; ++n) {
        const double t = static_cast<double>(n) * config.dt;
        const Eigen::VectorXd f = config.forcing.evaluate(t, a.size());
        record.times.push_back(t);
        record.energy.push_back(a.squaredNorm());
        record.dirichlet.push_back(config.nu * a.cwiseProduct(a).dot(lambda));
        record.work.push_back(f.dot(a));
        record.gradient_sq.push_back(a.cwiseProduct(a).dot(gradient_weight));
        record.forcing_norm.push_back(f.norm());

        if (n % config.thinning == 0 || n == steps) {
            record.snapshot_steps.push_back(n);
            record.snapshots.push_back(a);
            if (config.track_divergence) {
                record.div_max.push_back(max_divergence(a, system));
                const double umax = synthesize(a, system.basis, system.evaluator.grid()).max_abs();
                if (config.dt * umax * kappa_max > 0.5) {
                    ++record.cfl_warnings;
                    if (!warned) {
                        std::cerr << "warning: CFL number " << config.dt * umax * kappa_max
                                  << " exceeds 0.5 at t = " << t << '\n';
                        warned = true;
                    }
                }
            }
        }
        if (n == steps) {
            break;
        }
        Eigen::VectorXd next = heun(a, t, decay, system, config, n);
        const Eigen::VectorXd rate = (next - a) / config.dt;
        derivative_sum += config.dt * rate.cwiseProduct(rate).cwiseQuotient(lambda).sum();
        a = std::move(next);
    }
    record.derivative_l2 = std::sqrt(derivative_sum);
    if (samples >= 3) {
        record.balance_residual = energy_balance_residual(record);
    } else {
        record.balance_residual.assign(samples, 0.0);
    }
    return record;
}

std::vector<double> time_derivative(const std::vector<double>& series, double dt)
{
    const std::size_t n = series.size();
    if (n < 3) {
        throw InvalidArgument("time derivative needs at least three samples");
    }
    std::vector<double> out(n);
    out[0] = (-3.0 * series[0] + 4.0 * series[1] - series[2]) / (2.0 * dt);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        out[i] = (series[i + 1] - series[i - 1]) / (2.0 * dt);
    }
    out[n - 1] = (3.0 * series[n - 1] - 4.0 * series[n - 2] + series[n - 3]) / (2.0 * dt);
    return out;
}

std::vector<double> energy_balance_residual(const TrajectoryRecord& record)
{
    const auto rate = time_derivative(record.energy, record.dt);
    std::vector<double> out(rate.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = 0.5 * rate[i] + record.dirichlet[i] - record.work[i];
    }
    return out;
}

std::vector<double> a_priori_envelope(const TrajectoryRecord& record)
{
    std::vector<double> out(record.energy.size());
    if (out.empty()) {
        return out;
    }
    double accumulated = std::sqrt(record.energy.front());
    out[0] = accumulated;
    for (std::size_t i = 1; i < out.size(); ++i) {
        accumulated += 0.5 * record.dt * (record.forcing_norm[i - 1] + record.forcing_norm[i]);
        out[i] = accumulated;
    }
    return out;
}

} // namespace nslab

// Independent reference computations for the test suites. Nothing here calls the
// library's transforms: basis functions are evaluated from their closed form and
// integrals use plain sums on uniform grids.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "nslab/basis.hpp"
#include "nslab/hyperplane.hpp"

namespace oracle {

inline constexpr double pi = std::numbers::pi;

struct ModeSample {
    std::array<double, 3> value{};
    // grad[axis][component]
    std::array<std::array<double, 3>, 3> grad{};
};

inline ModeSample evaluate_mode(const nslab::Mode& mode, int variables, double period, const std::array<double, 3>& x)
{
    const double scale = 2.0 * pi / period;
    const double volume = std::pow(period, variables);
    const double norm = std::sqrt(2.0 / volume);
    double phase = 0.0;
    std::array<double, 3> kappa{};
    for (int a = 0; a < variables; ++a) {
        kappa[a] = scale * mode.k[a];
        phase += kappa[a] * x[a];
    }
    const bool is_cos = mode.parity == nslab::Parity::Cos;
    const double f = is_cos ? std::cos(phase) : std::sin(phase);
    const double df = is_cos ? -std::sin(phase) : std::cos(phase);
    ModeSample s;
    for (int c = 0; c < 3; ++c) {
        s.value[c] = norm * mode.direction[c] * f;
        for (int a = 0; a < variables; ++a) {
            s.grad[a][c] = norm * mode.direction[c] * df * kappa[a];
        }
    }
    return s;
}

/// b(w_j, w_k, w_i) = int ((adv(w_j) . grad) w_k) . w_i by the trapezoid rule with `points` per axis.
inline double trilinear_entry(const nslab::BasisSet& basis, std::size_t i, std::size_t j, std::size_t k, int points)
{
    const int vars = basis.dimension();
    const int comps = basis.components();
    const auto plane = basis.plane();
    const double h = basis.period() / points;
    const int nz = vars == 3 ? points : 1;
    double sum = 0.0;
    for (int p0 = 0; p0 < points; ++p0) {
        for (int p1 = 0; p1 < points; ++p1) {
            for (int p2 = 0; p2 < nz; ++p2) {
                const std::array<double, 3> x{p0 * h, p1 * h, p2 * h};
                const auto wi = evaluate_mode(basis[i], vars, basis.period(), x);
                const auto wj = evaluate_mode(basis[j], vars, basis.period(), x);
                const auto wk = evaluate_mode(basis[k], vars, basis.period(), x);
                std::array<double, 3> adv = wj.value;
                if (plane) {
                    adv = {wj.value[0] - wj.value[2] / plane->a1, wj.value[1] - wj.value[2] / plane->a2, 0.0};
                }
                for (int c = 0; c < comps; ++c) {
                    double conv = 0.0;
                    for (int a = 0; a < vars; ++a) {
                        conv += adv[a] * wk.grad[a][c];
                    }
                    sum += conv * wi.value[c];
                }
            }
        }
    }
    return sum * std::pow(h, vars);
}

/// Composite Simpson rule on an odd number of uniform samples.
inline double simpson(const std::vector<double>& f, double h, std::size_t last)
{
    double s = f[0] + f[last];
    for (std::size_t i = 1; i < last; ++i) {
        s += (i % 2 == 1 ? 4.0 : 2.0) * f[i];
    }
    return s * h / 3.0;
}

/// ||u||_2^2 of the 2D Taylor-Green vortex on [0, 2 pi)^2 with unit amplitude.
inline double taylor_green_energy(double nu, double t)
{
    return 2.0 * pi * pi * std::exp(-4.0 * nu * t);
}

inline Eigen::VectorXd normal_vector(Eigen::Index n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        v[i] = normal(rng);
    }
    return v;
}

inline Eigen::Matrix3d random_symmetric(std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::Matrix3d m;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            m(i, j) = normal(rng);
        }
    }
    return 0.5 * (m + m.transpose());
}

inline Eigen::Matrix3d random_rotation(std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::Matrix3d m;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            m(i, j) = normal(rng);
        }
    }
    Eigen::Matrix3d q = Eigen::HouseholderQR<Eigen::Matrix3d>(m).householderQ();
    if (q.determinant() < 0.0) {
        q.col(0) *= -1.0;
    }
    return q;
}

/// Seeded plane with normalized coefficients bounded away from zero.
inline nslab::Hyperplane random_plane(std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> mag(0.25, 4.0);
    std::bernoulli_distribution sign(0.5);
    const double a1 = (sign(rng) ? 1.0 : -1.0) * mag(rng);
    const double a2 = (sign(rng) ? 1.0 : -1.0) * mag(rng);
    std::uniform_real_distribution<double> offset(-3.0, 3.0);
    return nslab::Hyperplane::normalized(a1, a2, offset(rng));
}

} // namespace oracle

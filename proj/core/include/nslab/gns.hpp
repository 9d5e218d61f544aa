/// @file gns.hpp
/// @brief Gagliardo-Nirenberg-Sobolev exponents, exclusion cases and empirical constants.
#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "nslab/field.hpp"

namespace nslab {

inline constexpr double infinity = std::numeric_limits<double>::infinity();

/// ||u||_{p0,s}^e <= C (||D^m u||_{p1}^sigma ||u||_{p2}^{1-sigma})^e.
///
/// `exponent` (e) raises both sides to a common power; e = 2 with d = 2, p0 = 4,
/// p1 = p2 = 2, s = 0, m = 1 is the Ladyzhenskaya form ||u||_4^2 <= C ||u||_2 ||grad u||_2.
struct GNSParams {
    int d = 2;
    double p0 = 4.0;
    double p1 = 2.0;
    double p2 = 2.0;
    int s = 0;
    int m = 1;
    double sigma = 0.5;
    double exponent = 1.0;
};

/// Solves d/p0 - s = sigma (d/p1 - m) + (1 - sigma) d/p2 (d/inf = 0).
/// Throws OutOfRange for parameters outside their ranges or sigma outside [s/m, 1],
/// DegenerateBalance when d/p1 - m - d/p2 vanishes.
double solve_sigma(int d, double p0, double p1, double p2, int s, int m);

/// Parameters with sigma filled in by solve_sigma.
GNSParams make_params(int d, double p0, double p1, double p2, int s, int m, double exponent = 1.0);

/// Ladyzhenskaya form in dimension d (sigma = d / 4).
GNSParams ladyzhenskaya(int d);

/// Independent stream seed for item `index` of a run seeded with `master` (SplitMix64 mixing).
std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t index) noexcept;

enum class GNSVerdict { Ok, ExclusionA, ExclusionB };

const char* to_string(GNSVerdict v) noexcept;

/// ExclusionA: s = 0, s < d/p1 and p2 = inf (needs a decay side condition).
/// ExclusionB: 1 <= p1 < inf, m - s - d/p1 = 0, p0 = inf and sigma = 1 (inequality fails).
GNSVerdict validate_params(const GNSParams& params);

struct GNSReport {
    double lhs = 0.0;
    /// c times the right-hand side without the constant.
    double rhs = 0.0;
    /// lhs over the constant-free right-hand side.
    double ratio = 0.0;
    bool holds = false;
};

/// Norms are Euclidean pointwise over components and derivative indices, by trapezoid
/// quadrature. Supports s, m <= 2. Throws ZeroFieldRatio for a vanishing field.
GNSReport check_inequality(const PhysicalField& field, const GNSParams& params, double c);

struct ConstantEstimate {
    /// Maximum observed ratio: a lower bound on the optimal constant.
    double c_lower = 0.0;
    std::size_t sample_count = 0;
    std::size_t probe_count = 0;
    std::uint64_t seed = 0;
    GNSParams params;
};

/// Deterministic probes on `grid`: every lowest-shell basis mode and the Taylor-Green field.
std::vector<PhysicalField> gns_probe_fields(const Grid& grid);

/// Random band-limited divergence-free field number `index` of the stream seeded by `seed`;
/// basis coefficients are standard normal with k_max = (n - 1) / 4 so that fourth powers are
/// integrated exactly.
PhysicalField gns_sample_field(const Grid& grid, std::uint64_t seed, std::size_t index);

/// Max ratio over the probe set and `n_samples` random fields. Throws InvalidArgument for
/// n_samples == 0 or a grid dimension different from params.d.
ConstantEstimate estimate_constant(const GNSParams& params, const Grid& grid, std::size_t n_samples,
                                   std::uint64_t seed);

} // namespace nslab

/// @file hyperplane.hpp
/// @brief Planes x3 = b - a1 x1 - a2 x2 and the induced derivative substitution.
#pragma once

#include <array>

namespace nslab {

/// Plane in normalized form x3 = b - a1*x1 - a2*x2 with a1, a2 nonzero.
struct Hyperplane {
    double a1 = 1.0;
    double a2 = 1.0;
    double b = 0.0;

    /// Validates an already normalized plane; throws UnsupportedOrientation if a1 or a2 is zero.
    static Hyperplane normalized(double a1, double a2, double b);

    double inv_a1() const noexcept { return 1.0 / a1; }
    double inv_a2() const noexcept { return 1.0 / a2; }
    /// x3 coordinate of the plane above (x1, x2).
    double height(double x1, double x2) const noexcept { return b - a1 * x1 - a2 * x2; }
    /// Effective 3-vector (k1, k2, -(k1/a1 + k2/a2)) whose orthogonal complement
    /// is the restricted-divergence constraint in Fourier space.
    std::array<double, 3> effective_wavevector(double k1, double k2) const noexcept;

    bool operator==(const Hyperplane&) const = default;
};

/// Normalizes a1 x1 + a2 x2 + a3 x3 = b by a3.
/// Throws DegeneratePlane when a3 == 0 and UnsupportedOrientation when a normalized
/// in-plane coefficient vanishes.
Hyperplane make_hyperplane(double a1, double a2, double a3, double b);

/// D3 -> d1*D1 + d2*D2
struct FirstOrderRule {
    double d1 = 0.0;
    double d2 = 0.0;
};

/// D3^2 -> d11*D1^2 + d22*D2^2 + d12*D1*D2
struct SecondOrderRule {
    double d11 = 0.0;
    double d22 = 0.0;
    double d12 = 0.0;

    bool operator==(const SecondOrderRule&) const = default;
};

struct D3Substitution {
    FirstOrderRule first;
    SecondOrderRule second;
};

D3Substitution substitute_d3(const Hyperplane& plane);

/// Applies a first-order rule twice.
SecondOrderRule compose(const FirstOrderRule& rule) noexcept;

} // namespace nslab

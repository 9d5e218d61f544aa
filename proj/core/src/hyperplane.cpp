#include "nslab/hyperplane.hpp"

#include <cmath>

#include "nslab/errors.hpp"

namespace nslab {

Hyperplane Hyperplane::normalized(double a1, double a2, double b)
{
    if (!std::isfinite(a1) || !std::isfinite(a2) || !std::isfinite(b)) {
        throw InvalidArgument("plane coefficients must be finite");
    }
    if (a1 == 0.0 || a2 == 0.0) {
        throw UnsupportedOrientation(
            "plane with a vanishing normalized coefficient (a1 or a2 == 0) is not supported");
    }
    return Hyperplane{a1, a2, b};
}

std::array<double, 3> Hyperplane::effective_wavevector(double k1, double k2) const noexcept
{
    return {k1, k2, -(k1 * inv_a1() + k2 * inv_a2())};
}

Hyperplane make_hyperplane(double a1, double a2, double a3, double b)
{
    if (a3 == 0.0) {
        throw DegeneratePlane("a3 == 0: the plane cannot be written as x3 = psi(x1, x2)");
    }
    return Hyperplane::normalized(a1 / a3, a2 / a3, b / a3);
}

SecondOrderRule compose(const FirstOrderRule& rule) noexcept
{
    return SecondOrderRule{rule.d1 * rule.d1, rule.d2 * rule.d2, 2.0 * rule.d1 * rule.d2};
}

D3Substitution substitute_d3(const Hyperplane& plane)
{
    const FirstOrderRule first{-plane.inv_a1(), -plane.inv_a2()};
    const double i1 = plane.inv_a1();
    const double i2 = plane.inv_a2();
    return D3Substitution{first, SecondOrderRule{i1 * i1, i2 * i2, 2.0 * i1 * i2}};
}

} // namespace nslab

/// @file spectral.hpp
/// @brief FFT-backed transforms between grid samples and Fourier coefficients.
///
/// Coefficients are normalized so that u(x) = sum_k c_k exp(i kappa_k . x) with
/// c_k = n^-d sum_x u(x) exp(-i kappa_k . x), stored in FFT order on the grid's
/// flat layout. kappa = (2 pi / period) * k with signed integer k in [-n/2, n/2).
#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "nslab/grid.hpp"

namespace nslab::spectral {

using Complex = std::complex<double>;
using ComplexArray = std::vector<Complex>;

/// Signed integer wavenumber of FFT index `m` on an `n`-point axis; the Nyquist index maps to -n/2.
int signed_wavenumber(int m, int n) noexcept;

/// Integer wavevector of a flat spectral index (unused axes are zero).
std::array<int, 3> integer_wavevector(const Grid& grid, std::size_t flat) noexcept;

/// True if any axis of the flat index sits on the Nyquist frequency.
bool has_nyquist(const Grid& grid, std::size_t flat) noexcept;

ComplexArray forward(const Grid& grid, std::span<const double> values);
/// Inverse transform keeping the real part.
std::vector<double> backward(const Grid& grid, ComplexArray coefficients);

void forward_inplace(const Grid& grid, ComplexArray& data);
void backward_inplace(const Grid& grid, ComplexArray& data);

/// Multiplies by i*kappa_axis; Nyquist entries are zeroed.
ComplexArray derivative(const Grid& grid, const ComplexArray& coefficients, int axis);

/// Trigonometric interpolation onto another grid of the same dimension and period.
/// Upsampling splits Nyquist content evenly between +n/2 and -n/2; downsampling drops
/// wavenumbers that do not fit.
std::vector<double> resample(const Grid& from, std::span<const double> values, const Grid& to);

} // namespace nslab::spectral

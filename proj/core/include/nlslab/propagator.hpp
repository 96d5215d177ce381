#pragma once

#include "nlslab/field.hpp"

namespace nlslab {
namespace propagator {

/// Spectral convention of the free flow: S(t) multiplies fhat(xi) by
/// exp(i * multiplier_sign * |xi|^2 * t). The sign is the unique one
/// consistent with discrete convolution against the fundamental-solution
/// kernel (-4 pi i t)^(-n/2) exp(-i|x|^2/4t); it is pinned by
/// calibrate_multiplier_sign and regression-tested, not assumed.
struct Convention {
  int multiplier_sign = +1;
};

inline constexpr Convention kConvention{+1};

/// Free flow S(t); unitary for every real t, S(0) = identity.
Field apply(double t, const Field& f, const Convention& conv = kConvention);

/// Direct box-truncated quadrature of (E(t) . ) * f against the fixed
/// kernel (-4 pi i t)^(-n/2) exp(-i|x|^2/4t). The kernel phase is steep
/// far from the diagonal, so the source is resampled on a lattice refined
/// by `oversample` via trigonometric interpolation computed from a direct
/// O(N^2) transform; no FFT enters this path. Oracle use only, 1D,
/// cost O(oversample * N^2) kernel evaluations.
Field kernel_convolve(double t, const Field& f, int oversample = 4);

/// Returns the sign in {-1,+1} whose multiplier best matches
/// kernel_convolve on a centered Gaussian, together with the attained
/// relative L^2 discrepancy for the winner.
struct SignCalibration {
  int sign;
  double rel_error;
};
SignCalibration calibrate_multiplier_sign(const Grid& g, double t = 0.5);

/// Vector field L_k = x_k - 2 i t d/dx_k (derivative taken spectrally,
/// x_k multiplication on box-centered physical samples).
Field l_operator(double t, const Field& f, int axis);

}  // namespace propagator
}  // namespace nlslab

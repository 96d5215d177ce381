#pragma once

#include <complex>
#include <span>
#include <vector>

#include "nlslab/grid.hpp"

namespace nlslab::fft {

/// Forward transform in the frozen convention
///   fhat(xi_k) = h^n * sum_i f(x_i) * exp(-i x_i . xi_k),
/// the Riemann-sum analogue of the integral transform with kernel
/// exp(-i x.xi). Output in FFT storage order (see Grid::freq).
std::vector<std::complex<double>> forward(const Grid& g,
                                          std::span<const std::complex<double>> physical);

/// Inverse of forward: f(x_i) = L^-n * sum_k fhat(xi_k) * exp(i x_i . xi_k).
std::vector<std::complex<double>> inverse(const Grid& g,
                                          std::span<const std::complex<double>> spectral);

}  // namespace nlslab::fft

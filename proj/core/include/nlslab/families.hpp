#pragma once

#include <array>
#include <cstdint>
#include <variant>

#include "nlslab/field.hpp"

namespace nlslab {

/// Analytic test-data families. Every constructed field is checked to be
/// band-limited: relative spectral mass above the dealias cutoff must be
/// below 1e-10, otherwise make_field throws.

struct Gaussian {
  std::array<double, 2> center{0.0, 0.0};
  double width = 1.0;  // exp(-|x-c|^2 / width^2)
  Complex amplitude{1.0, 0.0};
};

struct ModulatedGaussian {
  std::array<double, 2> center{0.0, 0.0};
  double width = 1.0;
  std::array<double, 2> modulation{0.0, 0.0};  // exp(i xi0 . x) carrier
  Complex amplitude{1.0, 0.0};
};

/// Sharp spectral indicator of the shell 2^(j-1) <= |xi| <= 2^j.
struct AnnulusIndicator {
  int j = 0;
};

/// Smooth spectral bump phi(2^-j |xi|) with the standard dyadic profile,
/// supported on the open shell (2^(j-1), 2^(j+1)).
struct DyadicBump {
  int j = 0;
};

/// Reproducible random field: spectral coefficients are complex Gaussians
/// shaped by exp(-|xi|^2/cutoff^2), hard-cut at cutoff_fraction of the
/// Nyquist frequency, then normalized to ||f||_2 = amplitude.
struct RandomBandLimited {
  std::uint64_t seed = 0;
  double cutoff_fraction = 0.25;  // of the Nyquist frequency
  double amplitude = 1.0;
};

using TestFamily = std::variant<Gaussian, ModulatedGaussian, AnnulusIndicator,
                                DyadicBump, RandomBandLimited>;

Field make_field(const TestFamily& family, const Grid& grid);

/// Frequency-localized field with spectral modulus equal to the sharp
/// annulus indicator at scale 2^j, unit L^2 norm, and phase exp(i xi.x0 + i c)
/// with x0 and c drawn from the seed. The linear phase translates the
/// coherent peak to x0, which keeps the Fourier-coefficient mass fully
/// in phase there (the equality case of Cauchy-Schwarz for ||fhat||_1).
Field localized_annulus_field(int j, const Grid& grid, std::uint64_t seed);

/// Deterministic uniform double in [0,1) from a 64-bit generator state.
double uniform01(std::uint64_t& state);

}  // namespace nlslab

#pragma once

#include <span>

namespace nlslab {

/// Ordinary least-squares line y = slope*x + intercept with the RMS of
/// the residuals. Callers pass log-transformed data for power-law fits.
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms_residual = 0.0;
};

LinearFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace nlslab

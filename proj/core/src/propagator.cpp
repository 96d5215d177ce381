#include "nlslab/propagator.hpp"

#include <cmath>
#include <stdexcept>

namespace nlslab {
namespace propagator {

Field apply(double t, const Field& f, const Convention& conv) {
  if (t == 0.0) return f;
  const Grid& g = f.grid();
  const double s = conv.multiplier_sign * t;
  std::vector<Complex> spec(f.size());
  auto fs = f.spectral();
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const double phase = s * g.freq_sq(i);
    spec[i] = fs[i] * Complex{std::cos(phase), std::sin(phase)};
  }
  return Field::from_spectral(g, std::move(spec));
}

namespace {

// (-4 pi i t)^(-n/2) with the principal branch.
Complex kernel_prefactor(double t, int dim) {
  const Complex base{0.0, -4.0 * M_PI * t};
  return std::pow(base, -0.5 * dim);
}

// Direct evaluation of the forward DFT coefficients: no FFT library on
// the oracle path.
std::vector<Complex> slow_spectral(const Grid& g, std::span<const Complex> phys) {
  const int n = g.extent();
  if (g.dim() != 1) throw std::invalid_argument("slow_spectral supports 1D only");
  std::vector<Complex> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    Complex acc{0.0, 0.0};
    const double xi = g.freq(k);
    for (int i = 0; i < n; ++i) {
      const double ph = -g.coord(i) * xi;
      acc += phys[static_cast<std::size_t>(i)] * Complex{std::cos(ph), std::sin(ph)};
    }
    out[static_cast<std::size_t>(k)] = acc * g.spacing();
  }
  return out;
}

}  // namespace

Field kernel_convolve(double t, const Field& f, int oversample) {
  if (t == 0.0) throw std::invalid_argument("kernel_convolve: kernel is singular at t = 0");
  if (oversample < 1) throw std::invalid_argument("oversample must be >= 1");
  const Grid& g = f.grid();
  if (g.dim() != 1)
    throw std::invalid_argument("kernel_convolve is an oracle for 1D grids only");

  const Complex pref = kernel_prefactor(t, 1);

  const int n = g.extent();
  const int m = n * oversample;
  const double hq = g.box_length() / m;

  // Trigonometric interpolation of f on the refined lattice.
  auto coeffs = slow_spectral(g, f.physical());
  std::vector<Complex> fine(static_cast<std::size_t>(m));
  const double inv_len = 1.0 / g.box_length();
  for (int q = 0; q < m; ++q) {
    const double y = -0.5 * g.box_length() + q * hq;
    Complex acc{0.0, 0.0};
    for (int k = 0; k < n; ++k) {
      const double ph = g.freq(k) * y;
      acc += coeffs[static_cast<std::size_t>(k)] * Complex{std::cos(ph), std::sin(ph)};
    }
    fine[static_cast<std::size_t>(q)] = acc * inv_len;
  }

  std::vector<Complex> out(static_cast<std::size_t>(n));
  const double inv4t = 1.0 / (4.0 * t);
  for (int i = 0; i < n; ++i) {
    const double x = g.coord(i);
    Complex acc{0.0, 0.0};
    for (int q = 0; q < m; ++q) {
      const double d = x - (-0.5 * g.box_length() + q * hq);
      const double ph = -d * d * inv4t;
      acc += fine[static_cast<std::size_t>(q)] * Complex{std::cos(ph), std::sin(ph)};
    }
    out[static_cast<std::size_t>(i)] = pref * hq * acc;
  }
  return Field::from_physical(g, std::move(out));
}

SignCalibration calibrate_multiplier_sign(const Grid& g, double t) {
  std::vector<Complex> v(g.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double x = g.coord(g.unflat(i)[0]);
    v[i] = Complex{std::exp(-x * x), 0.0};
  }
  Field gauss = Field::from_physical(g, std::move(v));
  Field reference = kernel_convolve(t, gauss);

  double best_err = 0.0;
  int best_sign = 0;
  for (int sign : {-1, +1}) {
    Field u = apply(t, gauss, Convention{sign});
    const double e = rel_l2_error(u, reference);
    if (best_sign == 0 || e < best_err) {
      best_sign = sign;
      best_err = e;
    }
  }
  return {best_sign, best_err};
}

Field l_operator(double t, const Field& f, int axis) {
  const Grid& g = f.grid();
  if (axis < 0 || axis >= g.dim()) throw std::invalid_argument("l_operator: invalid axis");

  std::vector<Complex> phys(f.size());
  auto fp = f.physical();
  for (std::size_t i = 0; i < phys.size(); ++i)
    phys[i] = g.coord(g.unflat(i)[axis]) * fp[i];
  Field xk = Field::from_physical(g, std::move(phys));
  if (t == 0.0) return xk;

  std::vector<Complex> spec(f.size());
  auto fs = f.spectral();
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const double xi = g.freq(g.unflat(i)[axis]);
    // -2it * (i xi) = 2 t xi
    spec[i] = 2.0 * t * xi * fs[i];
  }
  return xk + Field::from_spectral(g, std::move(spec));
}

}  // namespace propagator
}  // namespace nlslab

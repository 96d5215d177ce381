#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "nlslab/grid.hpp"

namespace nlslab {

using Complex = std::complex<double>;

/// Complex-valued function sampled on a Grid, carrying both the physical
/// samples and the spectral coefficients (mutual discrete transforms in
/// the convention of fft.hpp). Both views are materialized on construction
/// so instances are immutable and freely shared across threads.
class Field {
public:
  Field() = default;

  static Field from_physical(const Grid& g, std::vector<Complex> values);
  static Field from_spectral(const Grid& g, std::vector<Complex> coeffs);
  static Field zero(const Grid& g);

  const Grid& grid() const { return grid_; }
  std::span<const Complex> physical() const { return phys_; }
  std::span<const Complex> spectral() const { return spec_; }
  std::size_t size() const { return phys_.size(); }
  bool empty() const { return phys_.empty(); }

  Field operator+(const Field& o) const;
  Field operator-(const Field& o) const;
  Field operator*(Complex a) const;
  friend Field operator*(Complex a, const Field& f) { return f * a; }

private:
  Field(Grid g, std::vector<Complex> phys, std::vector<Complex> spec);
  Grid grid_;
  std::vector<Complex> phys_;
  std::vector<Complex> spec_;
};

/// Complex conjugate field; spectral view follows by reversal, no transform.
Field conj_field(const Field& f);

/// Pointwise product of physical samples (no dealiasing).
Field pointwise_product(const Field& a, const Field& b);

/// Applies a spectral multiplier m(flat index) -> Complex.
Field apply_multiplier(const Field& f, const std::function<Complex(std::size_t)>& m);

/// Zeroes every mode with any per-axis |wavenumber| > N/4 - 1 (half of the
/// Nyquist index, strictly), so cubic pointwise products of masked fields
/// are alias-free on the retained band.
Field dealias(const Field& f);

/// True if the flat spectral index survives the dealias mask.
bool dealias_keep(const Grid& g, std::size_t flat);

/// L^p norm by Riemann sum, (sum |f|^p h^n)^(1/p); p = inf -> max modulus.
/// Requires p >= 1.
double lp_norm(const Field& f, double p);

/// L^2 norm evaluated from the spectral view (Parseval route).
double l2_norm_spectral(const Field& f);

/// Inhomogeneous Sobolev norm ||(1+|xi|^2)^(s/2) fhat|| in the Parseval
/// normalization (s = 0 reproduces lp_norm(f, 2)).
double sobolev_norm(const Field& f, double s);

/// Fraction of |f|^2 in the outer shell |x|_inf >= (1/2 - margin) * L.
/// Used to invalidate sweep points whose data escaped the box.
double boundary_mass_fraction(const Field& f, double margin = 0.0625);

/// Fraction of spectral |fhat|^2 above the dealias cutoff.
double spectral_tail_fraction(const Field& f);

double max_abs_difference(const Field& a, const Field& b);
double rel_l2_error(const Field& approx, const Field& reference);

}  // namespace nlslab

#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <vector>

namespace nlslab {

/// Uniform periodic sampling lattice approximating R^n for n in {1,2}.
///
/// Physical samples live at x_i = -L/2 + i*h along each axis, h = L/N.
/// The discrete frequency set is xi_k = 2*pi*k/L for k in [-N/2, N/2),
/// stored in FFT order: index i holds k = i for i <= N/2-1 and k = i-N
/// otherwise, so index N/2 carries the lone Nyquist mode k = -N/2.
class Grid {
public:
  Grid() = default;

  int dim() const { return d_->dim; }
  int extent() const { return d_->n; }          // points per dimension
  std::size_t size() const { return d_->total; }
  double box_length() const { return d_->length; }
  double spacing() const { return d_->length / d_->n; }
  double cell_volume() const { return d_->cell_volume; }

  /// Sample coordinate along one axis, box-centered in [-L/2, L/2).
  double coord(int i) const { return d_->coord[static_cast<std::size_t>(i)]; }
  /// Frequency of spectral storage index i along one axis.
  double freq(int i) const { return d_->freq[static_cast<std::size_t>(i)]; }
  /// Signed integer wavenumber of storage index i.
  int wavenumber(int i) const { return i <= d_->n / 2 - 1 ? i : i - d_->n; }

  double nyquist() const { return d_->nyquist; }    // pi*N/L
  double freq_min() const { return d_->freq_min; }  // 2*pi/L

  /// Row-major flattening: 1D -> i, 2D -> i0*N + i1.
  std::size_t flat(std::array<int, 2> idx) const {
    return d_->dim == 1 ? static_cast<std::size_t>(idx[0])
                        : static_cast<std::size_t>(idx[0]) * d_->n + idx[1];
  }
  std::array<int, 2> unflat(std::size_t f) const {
    if (d_->dim == 1) return {static_cast<int>(f), 0};
    return {static_cast<int>(f / d_->n), static_cast<int>(f % d_->n)};
  }

  /// |xi|^2 at a flat spectral index.
  double freq_sq(std::size_t f) const {
    auto idx = unflat(f);
    double a = freq(idx[0]);
    if (d_->dim == 1) return a * a;
    double b = freq(idx[1]);
    return a * a + b * b;
  }

  bool compatible(const Grid& other) const {
    return d_->dim == other.d_->dim && d_->n == other.d_->n &&
           d_->length == other.d_->length;
  }
  bool operator==(const Grid& other) const { return compatible(other); }

private:
  friend Grid make_grid(int, int, double);
  struct Data {
    int dim = 0;
    int n = 0;
    double length = 0;
    double cell_volume = 0;
    double nyquist = 0;
    double freq_min = 0;
    std::size_t total = 0;
    std::vector<double> coord;
    std::vector<double> freq;
  };
  std::shared_ptr<const Data> d_;
};

/// Builds a grid. Requires dim in {1,2}, points_per_dim a power of two >= 16,
/// box_length > 0. Throws std::invalid_argument otherwise.
Grid make_grid(int dim, int points_per_dim, double box_length);

}  // namespace nlslab

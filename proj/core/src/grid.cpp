#include "nlslab/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace nlslab {

namespace {
bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

Grid make_grid(int dim, int points_per_dim, double box_length) {
  if (dim != 1 && dim != 2)
    throw std::invalid_argument("dim must be 1 or 2");
  if (!is_power_of_two(points_per_dim))
    throw std::invalid_argument("points_per_dim must be a power of two");
  if (points_per_dim < 16)
    throw std::invalid_argument("points_per_dim must be >= 16");
  if (!(box_length > 0.0) || !std::isfinite(box_length))
    throw std::invalid_argument("box_length must be positive");

  auto d = std::make_shared<Grid::Data>();
  d->dim = dim;
  d->n = points_per_dim;
  d->length = box_length;
  const double h = box_length / points_per_dim;
  d->cell_volume = dim == 1 ? h : h * h;
  d->nyquist = M_PI * points_per_dim / box_length;
  d->freq_min = 2.0 * M_PI / box_length;
  d->total = 1;
  for (int k = 0; k < dim; ++k) d->total *= static_cast<std::size_t>(points_per_dim);

  d->coord.resize(points_per_dim);
  d->freq.resize(points_per_dim);
  for (int i = 0; i < points_per_dim; ++i) {
    d->coord[i] = -0.5 * box_length + i * h;
    const int k = i <= points_per_dim / 2 - 1 ? i : i - points_per_dim;
    d->freq[i] = d->freq_min * k;
  }

  Grid g;
  g.d_ = std::move(d);
  return g;
}

}  // namespace nlslab

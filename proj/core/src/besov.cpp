#include "nlslab/besov.hpp"

#include <cmath>
#include <stdexcept>

namespace nlslab {

namespace {

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r *= static_cast<double>(n - k + i) / i;
  return r;
}

// Polynomial smoothstep of the given order on [0,1].
double smoothstep(int order, double r) {
  if (r <= 0.0) return 0.0;
  if (r >= 1.0) return 1.0;
  double acc = 0.0;
  for (int i = order; i >= 0; --i)
    acc = acc * (-r) + binom(order + i, i) * binom(2 * order + 1, order - i);
  return acc * std::pow(r, order + 1);
}

}  // namespace

double DyadicPartition::psi(double a) const {
  a = std::abs(a);
  if (a <= 0.5) return 1.0;
  if (a >= 1.0) return 0.0;
  return 1.0 - smoothstep(bump_.order, 2.0 * a - 1.0);
}

double DyadicPartition::block_weight(int j, std::size_t flat) const {
  const double a = std::ldexp(std::sqrt(grid_.freq_sq(flat)), -j);
  return phi(a);
}

bool DyadicPartition::certified(std::size_t flat) const {
  const double a = std::sqrt(grid_.freq_sq(flat));
  return a > 0.0 && a <= std::ldexp(1.0, j_max_);
}

DyadicPartition make_partition(const Grid& grid, const BumpSpec& bump) {
  if (bump.order < 1) throw std::invalid_argument("bump order must be >= 1");
  DyadicPartition part;
  part.grid_ = grid;
  part.bump_ = bump;
  // Smallest block whose open support (2^(j-1), 2^(j+1)) reaches the
  // first lattice frequency; largest block fully below Nyquist.
  part.j_min_ = static_cast<int>(std::ceil(std::log2(grid.freq_min()))) - 1;
  part.j_max_ = static_cast<int>(std::floor(std::log2(grid.nyquist()))) - 1;
  if (part.j_max_ - part.j_min_ + 1 < 3)
    throw std::invalid_argument("grid too coarse: fewer than 3 dyadic blocks resolvable");
  return part;
}

Field project(int j, const Field& f, const DyadicPartition& part) {
  if (!f.grid().compatible(part.grid())) throw std::invalid_argument("grid mismatch");
  if (j < part.j_min() || j > part.j_max())
    throw std::out_of_range("dyadic index outside [j_min, j_max]");
  std::vector<Complex> spec(f.size());
  auto fs = f.spectral();
  for (std::size_t i = 0; i < spec.size(); ++i) spec[i] = part.block_weight(j, i) * fs[i];
  return Field::from_spectral(f.grid(), std::move(spec));
}

BesovNorm besov_norm(const Field& f, const BesovParams& params, const DyadicPartition& part) {
  if (!(params.p > 1.0 && params.p <= 2.0))
    throw std::invalid_argument("besov_norm requires p in (1, 2]");
  if (!f.grid().compatible(part.grid())) throw std::invalid_argument("grid mismatch");

  BesovNorm out;
  double acc = 0.0;
  for (int j = part.j_min(); j <= part.j_max(); ++j) {
    const double bn = lp_norm(project(j, f, part), params.p);
    const double w = std::pow(2.0, j * params.s);
    out.rows.push_back({j, w, bn});
    if (params.q == BesovParams::Q::one)
      acc += w * bn;
    else
      acc += std::pow(w * bn, params.p);
  }
  out.value = params.q == BesovParams::Q::one ? acc : std::pow(acc, 1.0 / params.p);

  auto fs = f.spectral();
  double total = 0.0, tail = 0.0;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const double m = std::norm(fs[i]);
    total += m;
    if (!part.certified(i) && f.grid().freq_sq(i) > 0.0) tail += m;
  }
  out.tail_fraction = total > 0.0 ? tail / total : 0.0;
  out.reliable = out.tail_fraction <= 1e-6;
  return out;
}

}  // namespace nlslab

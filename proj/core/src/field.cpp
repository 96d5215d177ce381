#include "nlslab/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nlslab/fft.hpp"

namespace nlslab {

namespace {
void check_finite(std::span<const Complex> v, const char* what) {
  for (const auto& z : v)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw std::invalid_argument(std::string("non-finite value in ") + what);
}
}  // namespace

Field::Field(Grid g, std::vector<Complex> phys, std::vector<Complex> spec)
    : grid_(std::move(g)), phys_(std::move(phys)), spec_(std::move(spec)) {}

Field Field::from_physical(const Grid& g, std::vector<Complex> values) {
  if (values.size() != g.size()) throw std::invalid_argument("field size does not match grid");
  check_finite(values, "physical samples");
  auto spec = fft::forward(g, values);
  return Field(g, std::move(values), std::move(spec));
}

Field Field::from_spectral(const Grid& g, std::vector<Complex> coeffs) {
  if (coeffs.size() != g.size()) throw std::invalid_argument("field size does not match grid");
  check_finite(coeffs, "spectral coefficients");
  auto phys = fft::inverse(g, coeffs);
  return Field(g, std::move(phys), std::move(coeffs));
}

Field Field::zero(const Grid& g) {
  return Field(g, std::vector<Complex>(g.size(), Complex{0.0, 0.0}),
               std::vector<Complex>(g.size(), Complex{0.0, 0.0}));
}

Field Field::operator+(const Field& o) const {
  if (!grid_.compatible(o.grid_)) throw std::invalid_argument("grid mismatch");
  std::vector<Complex> phys(size()), spec(size());
  for (std::size_t i = 0; i < size(); ++i) {
    phys[i] = phys_[i] + o.phys_[i];
    spec[i] = spec_[i] + o.spec_[i];
  }
  return Field(grid_, std::move(phys), std::move(spec));
}

Field Field::operator-(const Field& o) const {
  if (!grid_.compatible(o.grid_)) throw std::invalid_argument("grid mismatch");
  std::vector<Complex> phys(size()), spec(size());
  for (std::size_t i = 0; i < size(); ++i) {
    phys[i] = phys_[i] - o.phys_[i];
    spec[i] = spec_[i] - o.spec_[i];
  }
  return Field(grid_, std::move(phys), std::move(spec));
}

Field Field::operator*(Complex a) const {
  std::vector<Complex> phys(size()), spec(size());
  for (std::size_t i = 0; i < size(); ++i) {
    phys[i] = a * phys_[i];
    spec[i] = a * spec_[i];
  }
  return Field(grid_, std::move(phys), std::move(spec));
}

Field conj_field(const Field& f) {
  const Grid& g = f.grid();
  const int n = g.extent();
  std::vector<Complex> phys(f.size()), spec(f.size());
  auto fp = f.physical();
  auto fs = f.spectral();
  for (std::size_t i = 0; i < phys.size(); ++i) phys[i] = std::conj(fp[i]);
  // conj(f)^hat(xi) = conj(fhat(-xi)); index -k maps to (N-k) mod N per axis.
  for (std::size_t i = 0; i < spec.size(); ++i) {
    auto idx = g.unflat(i);
    std::array<int, 2> rev = {(n - idx[0]) % n, (n - idx[1]) % n};
    spec[i] = std::conj(fs[g.flat(rev)]);
  }
  return Field::from_spectral(g, std::move(spec));
}

Field pointwise_product(const Field& a, const Field& b) {
  if (!a.grid().compatible(b.grid())) throw std::invalid_argument("grid mismatch");
  std::vector<Complex> phys(a.size());
  auto ap = a.physical(), bp = b.physical();
  for (std::size_t i = 0; i < phys.size(); ++i) phys[i] = ap[i] * bp[i];
  return Field::from_physical(a.grid(), std::move(phys));
}

Field apply_multiplier(const Field& f, const std::function<Complex(std::size_t)>& m) {
  std::vector<Complex> spec(f.size());
  auto fs = f.spectral();
  for (std::size_t i = 0; i < spec.size(); ++i) spec[i] = m(i) * fs[i];
  return Field::from_spectral(f.grid(), std::move(spec));
}

bool dealias_keep(const Grid& g, std::size_t flat) {
  const int cut = g.extent() / 4 - 1;
  auto idx = g.unflat(flat);
  if (std::abs(g.wavenumber(idx[0])) > cut) return false;
  if (g.dim() == 2 && std::abs(g.wavenumber(idx[1])) > cut) return false;
  return true;
}

Field dealias(const Field& f) {
  const Grid& g = f.grid();
  std::vector<Complex> spec(f.size());
  auto fs = f.spectral();
  for (std::size_t i = 0; i < spec.size(); ++i)
    spec[i] = dealias_keep(g, i) ? fs[i] : Complex{0.0, 0.0};
  return Field::from_spectral(g, std::move(spec));
}

double lp_norm(const Field& f, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm requires p >= 1");
  auto v = f.physical();
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& z : v) m = std::max(m, std::abs(z));
    return m;
  }
  double acc = 0.0;
  if (p == 2.0) {
    for (const auto& z : v) acc += std::norm(z);
  } else if (p == 1.0) {
    for (const auto& z : v) acc += std::abs(z);
  } else {
    for (const auto& z : v) acc += std::pow(std::abs(z), p);
  }
  return std::pow(acc * f.grid().cell_volume(), 1.0 / p);
}

double l2_norm_spectral(const Field& f) {
  double acc = 0.0;
  for (const auto& z : f.spectral()) acc += std::norm(z);
  double vol = f.grid().box_length();
  if (f.grid().dim() == 2) vol *= f.grid().box_length();
  return std::sqrt(acc / vol);
}

double sobolev_norm(const Field& f, double s) {
  const Grid& g = f.grid();
  auto fs = f.spectral();
  double acc = 0.0;
  for (std::size_t i = 0; i < fs.size(); ++i)
    acc += std::pow(1.0 + g.freq_sq(i), s) * std::norm(fs[i]);
  double vol = g.box_length();
  if (g.dim() == 2) vol *= g.box_length();
  return std::sqrt(acc / vol);
}

double boundary_mass_fraction(const Field& f, double margin) {
  const Grid& g = f.grid();
  const double edge = (0.5 - margin) * g.box_length();
  auto v = f.physical();
  double total = 0.0, outer = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double m = std::norm(v[i]);
    total += m;
    auto idx = g.unflat(i);
    double x = std::abs(g.coord(idx[0]));
    if (g.dim() == 2) x = std::max(x, std::abs(g.coord(idx[1])));
    if (x >= edge) outer += m;
  }
  return total > 0.0 ? outer / total : 0.0;
}

double spectral_tail_fraction(const Field& f) {
  const Grid& g = f.grid();
  auto fs = f.spectral();
  double total = 0.0, tail = 0.0;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const double m = std::norm(fs[i]);
    total += m;
    if (!dealias_keep(g, i)) tail += m;
  }
  return total > 0.0 ? tail / total : 0.0;
}

double max_abs_difference(const Field& a, const Field& b) {
  if (!a.grid().compatible(b.grid())) throw std::invalid_argument("grid mismatch");
  auto ap = a.physical(), bp = b.physical();
  double m = 0.0;
  for (std::size_t i = 0; i < ap.size(); ++i) m = std::max(m, std::abs(ap[i] - bp[i]));
  return m;
}

double rel_l2_error(const Field& approx, const Field& reference) {
  double ref = lp_norm(reference, 2.0);
  double err = lp_norm(approx - reference, 2.0);
  return ref > 0.0 ? err / ref : err;
}

}  // namespace nlslab

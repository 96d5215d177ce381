#include "nlslab/families.hpp"

#include <cmath>
#include <stdexcept>

namespace nlslab {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9E3779B97f4A7C15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double radial_abs(const Grid& g, std::size_t flat) { return std::sqrt(g.freq_sq(flat)); }

// Order-4 polynomial smoothstep on [0,1]: first four derivatives vanish
// at both ends.
double smoothstep4(double r) {
  if (r <= 0.0) return 0.0;
  if (r >= 1.0) return 1.0;
  const double r5 = r * r * r * r * r;
  return r5 * (126.0 + r * (-420.0 + r * (540.0 + r * (-315.0 + r * 70.0))));
}

// The radial cutoff profile: 1 for |xi| <= 1/2, 0 for |xi| >= 1, monotone
// smooth in between. Shared with the dyadic partition in besov.cpp.
double psi_profile(double a) {
  if (a <= 0.5) return 1.0;
  if (a >= 1.0) return 0.0;
  return 1.0 - smoothstep4(2.0 * a - 1.0);
}

void enforce_band_limit(const Field& f, const char* what) {
  if (spectral_tail_fraction(f) > 1e-10)
    throw std::invalid_argument(std::string(what) +
                                ": spectral support exceeds the dealiasing cutoff on this grid");
}

Field gaussian_field(const Grid& g, const std::array<double, 2>& center, double width,
                     const std::array<double, 2>& modulation, Complex amplitude) {
  if (!(width > 0.0)) throw std::invalid_argument("gaussian width must be positive");
  std::vector<Complex> v(g.size());
  const double inv_w2 = 1.0 / (width * width);
  for (std::size_t i = 0; i < v.size(); ++i) {
    auto idx = g.unflat(i);
    double x0 = g.coord(idx[0]) - center[0];
    double r2 = x0 * x0;
    double phase = modulation[0] * g.coord(idx[0]);
    if (g.dim() == 2) {
      double x1 = g.coord(idx[1]) - center[1];
      r2 += x1 * x1;
      phase += modulation[1] * g.coord(idx[1]);
    }
    v[i] = amplitude * std::exp(-r2 * inv_w2) * Complex{std::cos(phase), std::sin(phase)};
  }
  return Field::from_physical(g, std::move(v));
}

}  // namespace

double uniform01(std::uint64_t& state) {
  return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

Field make_field(const TestFamily& family, const Grid& grid) {
  Field f = std::visit(
      [&grid](const auto& fam) -> Field {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, Gaussian>) {
          return gaussian_field(grid, fam.center, fam.width, {0.0, 0.0}, fam.amplitude);
        } else if constexpr (std::is_same_v<T, ModulatedGaussian>) {
          return gaussian_field(grid, fam.center, fam.width, fam.modulation, fam.amplitude);
        } else if constexpr (std::is_same_v<T, AnnulusIndicator>) {
          const double lo = std::ldexp(1.0, fam.j - 1), hi = std::ldexp(1.0, fam.j);
          std::vector<Complex> s(grid.size(), Complex{0.0, 0.0});
          for (std::size_t i = 0; i < s.size(); ++i) {
            const double a = radial_abs(grid, i);
            if (a >= lo && a <= hi) s[i] = Complex{1.0, 0.0};
          }
          return Field::from_spectral(grid, std::move(s));
        } else if constexpr (std::is_same_v<T, DyadicBump>) {
          const double scale = std::ldexp(1.0, -fam.j);
          std::vector<Complex> s(grid.size(), Complex{0.0, 0.0});
          for (std::size_t i = 0; i < s.size(); ++i) {
            const double a = scale * radial_abs(grid, i);
            s[i] = Complex{psi_profile(0.5 * a) - psi_profile(a), 0.0};
          }
          return Field::from_spectral(grid, std::move(s));
        } else {
          static_assert(std::is_same_v<T, RandomBandLimited>);
          if (!(fam.cutoff_fraction > 0.0 && fam.cutoff_fraction <= 0.5))
            throw std::invalid_argument("cutoff_fraction must lie in (0, 1/2]");
          const double cutoff = fam.cutoff_fraction * grid.nyquist();
          std::uint64_t state = fam.seed * 0x9E3779B97f4A7C15ULL + 0xD1B54A32D192ED03ULL;
          std::vector<Complex> s(grid.size(), Complex{0.0, 0.0});
          for (std::size_t i = 0; i < s.size(); ++i) {
            const double a = radial_abs(grid, i);
            if (a > cutoff || a == 0.0) continue;
            const double u1 = uniform01(state), u2 = uniform01(state);
            const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
            const double shape = std::exp(-(a * a) / (cutoff * cutoff));
            s[i] = shape * r * Complex{std::cos(2.0 * M_PI * u2), std::sin(2.0 * M_PI * u2)};
          }
          Field raw = Field::from_spectral(grid, std::move(s));
          const double nrm = lp_norm(raw, 2.0);
          if (nrm == 0.0) return raw;
          return raw * Complex{fam.amplitude / nrm, 0.0};
        }
      },
      family);
  enforce_band_limit(f, "make_field");
  return f;
}

Field localized_annulus_field(int j, const Grid& grid, std::uint64_t seed) {
  const double lo = std::ldexp(1.0, j - 1), hi = std::ldexp(1.0, j);
  if (hi >= 0.5 * grid.nyquist())
    throw std::invalid_argument("localized_annulus_field: annulus exceeds the resolvable band");

  // x0 depends on the seed only, so fields of different scales built from
  // one seed share the same coherent-peak location.
  std::uint64_t state = seed * 0x9E3779B97f4A7C15ULL + 0x2545F4914F6CDD1DULL;
  std::array<double, 2> x0{0.0, 0.0};
  const double span = grid.box_length() / 8.0;
  x0[0] = span * (2.0 * uniform01(state) - 1.0);
  x0[1] = span * (2.0 * uniform01(state) - 1.0);
  std::uint64_t pstate = state + static_cast<std::uint64_t>(j) * 0xA24BAED4963EE407ULL;
  const double c = 2.0 * M_PI * uniform01(pstate);

  std::vector<Complex> s(grid.size(), Complex{0.0, 0.0});
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double a = radial_abs(grid, i);
    if (a < lo || a > hi) continue;
    auto idx = grid.unflat(i);
    double phase = c + grid.freq(idx[0]) * x0[0];
    if (grid.dim() == 2) phase += grid.freq(idx[1]) * x0[1];
    s[i] = Complex{std::cos(phase), std::sin(phase)};
  }
  Field raw = Field::from_spectral(grid, std::move(s));
  const double nrm = lp_norm(raw, 2.0);
  if (nrm == 0.0)
    throw std::invalid_argument("localized_annulus_field: annulus contains no lattice modes");
  return raw * Complex{1.0 / nrm, 0.0};
}

}  // namespace nlslab

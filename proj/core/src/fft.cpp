#include "nlslab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace nlslab::fft {

namespace {

// FFTW plan creation is not thread safe; execution with the new-array
// interface is. Plans are cached per (dim, n, direction) with ESTIMATE,
// which picks its algorithm deterministically.
class PlanCache {
public:
  fftw_plan get(int dim, int n, int sign) {
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::tuple{dim, n, sign};
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;

    const std::size_t total =
        dim == 1 ? static_cast<std::size_t>(n) : static_cast<std::size_t>(n) * n;
    fftw_complex* buf = fftw_alloc_complex(total);
    fftw_plan p = dim == 1
                      ? fftw_plan_dft_1d(n, buf, buf, sign, FFTW_ESTIMATE)
                      : fftw_plan_dft_2d(n, n, buf, buf, sign, FFTW_ESTIMATE);
    fftw_free(buf);
    if (!p) throw std::runtime_error("fftw plan creation failed");
    plans_.emplace(key, p);
    return p;
  }

  ~PlanCache() {
    for (auto& [k, p] : plans_) fftw_destroy_plan(p);
  }

private:
  std::mutex mu_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

void execute(const Grid& g, int sign, std::vector<std::complex<double>>& data) {
  fftw_plan p = cache().get(g.dim(), g.extent(), sign);
  // std::complex<double> is layout-compatible with fftw_complex.
  auto* raw = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(p, raw, raw);
}

// The box-centered origin contributes exp(+i pi (k0+..)) = (-1)^(k0+..)
// relative to the raw DFT; parity of the storage index equals parity of
// the signed wavenumber because N is even.
int index_parity(const Grid& g, std::size_t flat) {
  auto idx = g.unflat(flat);
  return g.dim() == 1 ? (idx[0] & 1) : ((idx[0] + idx[1]) & 1);
}

}  // namespace

std::vector<std::complex<double>> forward(const Grid& g,
                                          std::span<const std::complex<double>> physical) {
  if (physical.size() != g.size()) throw std::invalid_argument("size mismatch in fft::forward");
  std::vector<std::complex<double>> out(physical.begin(), physical.end());
  execute(g, FFTW_FORWARD, out);
  const double scale = g.cell_volume();
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] *= index_parity(g, i) ? -scale : scale;
  return out;
}

std::vector<std::complex<double>> inverse(const Grid& g,
                                          std::span<const std::complex<double>> spectral) {
  if (spectral.size() != g.size()) throw std::invalid_argument("size mismatch in fft::inverse");
  std::vector<std::complex<double>> out(spectral.begin(), spectral.end());
  for (std::size_t i = 0; i < out.size(); ++i)
    if (index_parity(g, i)) out[i] = -out[i];
  execute(g, FFTW_BACKWARD, out);
  double vol = g.box_length();
  if (g.dim() == 2) vol *= g.box_length();
  const double scale = 1.0 / vol;
  for (auto& v : out) v *= scale;
  return out;
}

}  // namespace nlslab::fft

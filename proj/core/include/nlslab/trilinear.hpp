#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "nlslab/field.hpp"

namespace nlslab {
namespace trilinear {

/// Inputs of the trilinear form
///   T(v1,v2,v3) = S(-tau)[ S(-tau)v1 . S(tau)v2 . S(tau)v3 ].
/// Optional dyadic tags assert that vhat2 is supported in
/// [2^(j-2), 2^(j+2)] and vhat3 in [2^(k-2), 2^(k+2)]; tags are verified
/// on use, not trusted.
struct Inputs {
  double tau = 0.0;
  Field v1, v2, v3;
  std::optional<int> j;  // tag for v2
  std::optional<int> k;  // tag for v3
};

/// Throws if a tagged factor has spectral mass outside its asserted shell
/// (relative mass above 1e-12).
void verify_tags(const Inputs& in);

/// Evaluates the trilinear form. All factors are spectrally truncated at
/// half Nyquist before the pointwise product and the product is truncated
/// to the same band, so the retained band carries the exact product of
/// the truncated factors (1/2-rule for cubic terms). tau = 0 degenerates
/// to the plain pointwise product of the truncated factors.
Field eval(const Inputs& in);

/// Independent realization through the collapsed kernel representation:
///   v0(a) = C tau^-1 e^{i a^2/4tau} negint e^{i(x^2-y^2-z^2)/4tau}
///           v1(x) v2(y) v3(z)|_{z=a+x-y} dx dy
/// by direct double quadrature (1D only, z off the box treated as zero).
/// The constant C depends on the transform normalization and is
/// calibrated once against eval on a reference Gaussian triple, then
/// frozen for the process lifetime.
Field eval_kernel_oracle(const Inputs& in);

/// The frozen oracle constant (calibrating it on first use).
Complex oracle_constant();

/// Frequency-localized pair (v2, v3) for sharpness tests: spectral
/// modulus equal to the annulus indicator at scales 2^j and 2^k, unit
/// L^2 norm, phases linear in xi with a seed-drawn common translation so
/// both coherent peaks coincide.
std::pair<Field, Field> localized_pair(int j, int k, const Grid& grid, std::uint64_t seed);

}  // namespace trilinear
}  // namespace nlslab

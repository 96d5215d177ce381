#pragma once

#include <vector>

#include "nlslab/field.hpp"

namespace nlslab {

/// Transition profile of the radial cutoff psi: a polynomial smoothstep
/// whose first `order` derivatives vanish at both ends of the shell
/// [1/2, 1]. psi == 1 on |xi| <= 1/2 and == 0 on |xi| >= 1.
struct BumpSpec {
  int order = 4;
};

/// Littlewood-Paley dyadic partition resolvable on a grid.
/// phi(xi) = psi(xi/2) - psi(xi) is supported on the open shell
/// (1/2, 2); block j applies phi(2^-j |xi|).
///
/// j_min is the smallest index whose shell meets a nonzero lattice
/// frequency, j_max the largest whose shell lies fully under the Nyquist
/// frequency. The truncated sum over [j_min, j_max] equals 1 at every
/// nonzero lattice frequency with |xi| <= 2^j_max; spectral mass beyond
/// that band is reported as the tail.
class DyadicPartition {
public:
  int j_min() const { return j_min_; }
  int j_max() const { return j_max_; }
  const Grid& grid() const { return grid_; }

  double psi(double a) const;  // radial cutoff profile
  double phi(double a) const { return psi(0.5 * a) - psi(a); }
  /// phi(2^-j |xi|) at a flat spectral index.
  double block_weight(int j, std::size_t flat) const;
  /// True if the truncated partition reconstructs this mode exactly.
  bool certified(std::size_t flat) const;

private:
  friend DyadicPartition make_partition(const Grid&, const BumpSpec&);
  Grid grid_;
  BumpSpec bump_;
  int j_min_ = 0;
  int j_max_ = 0;
};

/// Builds the partition for a grid; throws if fewer than 3 dyadic blocks
/// are resolvable.
DyadicPartition make_partition(const Grid& grid, const BumpSpec& bump = {});

/// Littlewood-Paley block: spectral view multiplied by phi(2^-j xi).
/// j must lie in [j_min, j_max].
Field project(int j, const Field& f, const DyadicPartition& part);

/// Besov norm parameters. q = one gives the homogeneous B^s_{p,1} sum
/// sum_j 2^{js} ||f_j||_p; q = p gives B^s_{p,p} = W^{s,p}.
struct BesovParams {
  double s = 0.0;
  double p = 2.0;
  enum class Q { one, p } q = Q::one;
};

struct BesovBlockRow {
  int j;
  double weight;      // 2^{js}
  double block_norm;  // ||f_j||_p
};

struct BesovNorm {
  double value = 0.0;
  double tail_fraction = 0.0;  // spectral mass outside the certified band
  bool reliable = true;        // tail_fraction <= 1e-6
  std::vector<BesovBlockRow> rows;
};

/// Dyadic Besov norm truncated to the resolvable band. The tail fraction
/// makes the truncation observable; callers must reject inputs with
/// tail_fraction > 1e-6 when the value matters.
BesovNorm besov_norm(const Field& f, const BesovParams& params, const DyadicPartition& part);

}  // namespace nlslab

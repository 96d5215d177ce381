#pragma once

#include <span>
#include <vector>

namespace nlslab {

/// Product quadrature for integrals int_0^T F(tau) dtau whose integrand
/// may behave like tau^-theta near zero, theta in (0,1).
///
/// Nodes are graded, tau_m = T (m/M)^(1/(1-theta)), m = 1..M. On each
/// interval the integrand is represented in the Chebyshev system
/// {tau^-theta, 1} through its two node values and integrated in closed
/// form, so the rule is exact both on the pure power and on constants.
/// The first interval [0, tau_1] extrapolates from (tau_1, tau_2); with a
/// single node it falls back to the pure-power model c tau^-theta.
class TimeQuadrature {
public:
  static TimeQuadrature graded(double horizon, double theta, int count);

  double horizon() const { return horizon_; }
  double theta() const { return theta_; }
  int count() const { return static_cast<int>(nodes_.size()); }
  const std::vector<double>& nodes() const { return nodes_; }

  /// Weights of interval l (0-based; interval l ends at node l): the
  /// integral over it is wa*F[ia] + wb*F[ib].
  struct Interval {
    int ia, ib;
    double wa, wb;
  };
  const std::vector<Interval>& intervals() const { return intervals_; }

  /// Cumulative integrals int_0^{tau_m} F dtau for scalar samples F at
  /// the nodes; result[m] corresponds to node m.
  std::vector<double> cumulative(std::span<const double> values) const;
  double integrate(std::span<const double> values) const;

private:
  double horizon_ = 0.0;
  double theta_ = 0.0;
  std::vector<double> nodes_;
  std::vector<Interval> intervals_;
};

/// Integral of a non-singular integrand g over [0, T] on graded nodes:
/// trapezoid on interior intervals, first interval modeled as c tau^alpha
/// (matching g at the first node), for integrands vanishing like a power.
double integrate_graded_power(std::span<const double> nodes, std::span<const double> values,
                              double alpha);

}  // namespace nlslab

#include "nlslab/time_quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace nlslab {

TimeQuadrature TimeQuadrature::graded(double horizon, double theta, int count) {
  if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
  if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("theta must lie in (0,1)");
  if (count < 1) throw std::invalid_argument("need at least one node");

  TimeQuadrature q;
  q.horizon_ = horizon;
  q.theta_ = theta;
  const double grading = 1.0 / (1.0 - theta);
  q.nodes_.resize(static_cast<std::size_t>(count));
  for (int m = 1; m <= count; ++m)
    q.nodes_[static_cast<std::size_t>(m - 1)] =
        horizon * std::pow(static_cast<double>(m) / count, grading);
  q.nodes_.back() = horizon;  // exact endpoint

  const auto power_moment = [theta](double a, double b) {
    return (std::pow(b, 1.0 - theta) - std::pow(a, 1.0 - theta)) / (1.0 - theta);
  };

  q.intervals_.resize(q.nodes_.size());
  for (int l = 0; l < count; ++l) {
    const double a = l == 0 ? 0.0 : q.nodes_[static_cast<std::size_t>(l - 1)];
    const double b = q.nodes_[static_cast<std::size_t>(l)];
    const double mp = power_moment(a, b);
    const double m1 = b - a;
    Interval& iv = q.intervals_[static_cast<std::size_t>(l)];
    if (count == 1) {
      // Only one sample: pure-power model c tau^-theta through it.
      iv.ia = 0;
      iv.ib = 0;
      iv.wa = mp * std::pow(b, theta);
      iv.wb = 0.0;
      continue;
    }
    // Two-point rule in span{tau^-theta, 1}. The first interval borrows
    // the second node (extrapolation toward zero).
    const int ia = l == 0 ? 0 : l - 1;
    const int ib = l == 0 ? 1 : l;
    const double ta = q.nodes_[static_cast<std::size_t>(ia)];
    const double tb = q.nodes_[static_cast<std::size_t>(ib)];
    const double pa = std::pow(ta, -theta);
    const double pb = std::pow(tb, -theta);
    const double det = pa - pb;
    iv.ia = ia;
    iv.ib = ib;
    iv.wa = (mp - pb * m1) / det;
    iv.wb = (pa * m1 - mp) / det;
  }
  return q;
}

std::vector<double> TimeQuadrature::cumulative(std::span<const double> values) const {
  if (values.size() != nodes_.size())
    throw std::invalid_argument("sample count does not match node count");
  std::vector<double> out(nodes_.size());
  double acc = 0.0;
  for (std::size_t l = 0; l < intervals_.size(); ++l) {
    const Interval& iv = intervals_[l];
    acc += iv.wa * values[static_cast<std::size_t>(iv.ia)] +
           iv.wb * values[static_cast<std::size_t>(iv.ib)];
    out[l] = acc;
  }
  return out;
}

double TimeQuadrature::integrate(std::span<const double> values) const {
  return cumulative(values).back();
}

double integrate_graded_power(std::span<const double> nodes, std::span<const double> values,
                              double alpha) {
  if (nodes.size() != values.size() || nodes.empty())
    throw std::invalid_argument("bad integrand samples");
  // First interval: g ~ c tau^alpha matched at the first node.
  double acc = values[0] * nodes[0] / (1.0 + alpha);
  for (std::size_t l = 1; l < nodes.size(); ++l)
    acc += 0.5 * (values[l] + values[l - 1]) * (nodes[l] - nodes[l - 1]);
  return acc;
}

}  // namespace nlslab

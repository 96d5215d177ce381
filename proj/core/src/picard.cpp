#include "nlslab/picard.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include "nlslab/propagator.hpp"
#include "nlslab/trilinear.hpp"

namespace nlslab {
namespace picard {

double SolverConfig::theta(int dim) const {
  return mode == Mode::besov ? dim * (2.0 / p - 1.0) : 2.0 / p - 1.0;
}

void SolverConfig::validate(int dim) const {
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
  if (nodes_per_unit < 1) throw std::invalid_argument("nodes_per_unit must be >= 1");
  if (fixed_horizon && !(*fixed_horizon > 0.0))
    throw std::invalid_argument("fixed horizon must be positive");
  if (mode == Mode::besov) {
    const double lower = 2.0 * dim / (dim + 1.0);
    if (!(p > lower && p < 2.0))
      throw std::invalid_argument("besov mode requires 2n/(n+1) < p < 2");
  } else {
    if (dim != 1) throw std::invalid_argument("lp_1d mode requires a 1D grid");
    if (!(p > 1.0 && p < 2.0)) throw std::invalid_argument("lp_1d mode requires 1 < p < 2");
  }
}

namespace {

struct ModeNorm {
  double value;
  bool reliable;
};

// Iteration norm of the configured mode. The partition is built once per
// solve and reused.
ModeNorm mode_norm(const Field& f, const SolverConfig& cfg, const DyadicPartition* part) {
  if (cfg.mode == Mode::lp_1d) return {lp_norm(f, cfg.p), true};
  const int n = f.grid().dim();
  BesovParams bp{n * (1.0 - 1.0 / cfg.p), cfg.p, BesovParams::Q::one};
  BesovNorm bn = besov_norm(f, bp, *part);
  return {bn.value, bn.reliable};
}

}  // namespace

Field nonlinear_density(double tau, const Field& w, int sign) {
  trilinear::Inputs in;
  in.tau = tau;
  in.v1 = conj_field(w);
  in.v2 = w;
  in.v3 = w;
  // Duhamel factor -i*sign of i u_t - Lap u = sign |u|^2 u.
  return trilinear::eval(in) * Complex{0.0, -static_cast<double>(sign)};
}

TimeSlab initial_slab(const Field& u0, const SolverConfig& cfg, double horizon) {
  cfg.validate(u0.grid().dim());
  const int count =
      std::max(1, static_cast<int>(std::lround(cfg.nodes_per_unit * std::max(1.0, horizon))));
  TimeSlab slab;
  slab.quad = TimeQuadrature::graded(horizon, cfg.theta(u0.grid().dim()), count);
  slab.initial = u0;
  slab.states.assign(static_cast<std::size_t>(count), u0);
  return slab;
}

TimeSlab picard_map(const TimeSlab& w, const Field& u0, const SolverConfig& cfg) {
  if (!u0.grid().compatible(w.initial.grid())) throw std::invalid_argument("grid mismatch");
  const int count = w.count();
  const auto& nodes = w.quad.nodes();

  std::vector<Field> density(static_cast<std::size_t>(count));
  for (int m = 0; m < count; ++m)
    density[static_cast<std::size_t>(m)] =
        nonlinear_density(nodes[static_cast<std::size_t>(m)],
                          w.states[static_cast<std::size_t>(m)], cfg.sign);

  TimeSlab out;
  out.quad = w.quad;
  out.initial = u0;
  out.states.reserve(static_cast<std::size_t>(count));
  Field acc = Field::zero(u0.grid());
  for (const auto& iv : w.quad.intervals()) {
    acc = acc + density[static_cast<std::size_t>(iv.ia)] * Complex{iv.wa, 0.0} +
          density[static_cast<std::size_t>(iv.ib)] * Complex{iv.wb, 0.0};
    out.states.push_back(u0 + acc);
  }
  return out;
}

double choose_horizon(const Field& u0, const SolverConfig& cfg, double* measured_constant) {
  cfg.validate(u0.grid().dim());
  const double theta = cfg.theta(u0.grid().dim());

  std::unique_ptr<DyadicPartition> part;
  if (cfg.mode == Mode::besov)
    part = std::make_unique<DyadicPartition>(make_partition(u0.grid()));

  const double unorm = mode_norm(u0, cfg, part.get()).value;
  if (unorm == 0.0) {
    if (measured_constant) *measured_constant = 0.0;
    return 1.0;
  }

  // Probe grid for the effective constant in ||F(tau)|| <= C tau^-theta ||w||^3,
  // evaluated at w = u0: 24 logarithmic points on [1e-3, 2].
  constexpr int kProbeCount = 24;
  constexpr double kProbeLo = 1e-3, kProbeHi = 2.0;
  double chat = 0.0;
  for (int i = 0; i < kProbeCount; ++i) {
    const double tau =
        kProbeLo * std::pow(kProbeHi / kProbeLo, static_cast<double>(i) / (kProbeCount - 1));
    const Field f = nonlinear_density(tau, u0, cfg.sign);
    const double fn = mode_norm(f, cfg, part.get()).value;
    chat = std::max(chat, std::pow(tau, theta) * fn / (unorm * unorm * unorm));
  }
  if (measured_constant) *measured_constant = chat;
  if (chat == 0.0) return 1.0;

  const double base = (2.0 * chat) * (2.0 * unorm) * (2.0 * unorm) / (1.0 - theta);
  return std::pow(base, -1.0 / (1.0 - theta));
}

SolveResult solve(const Field& u0, const SolverConfig& cfg) {
  cfg.validate(u0.grid().dim());
  SolveResult res;
  SolveDiagnostics& d = res.diagnostics;

  std::unique_ptr<DyadicPartition> part;
  if (cfg.mode == Mode::besov)
    part = std::make_unique<DyadicPartition>(make_partition(u0.grid()));

  auto u0n = mode_norm(u0, cfg, part.get());
  d.initial_norm = u0n.value;
  d.norm_reliable = u0n.reliable;

  const double horizon =
      cfg.fixed_horizon ? *cfg.fixed_horizon : choose_horizon(u0, cfg, &d.measured_constant);
  d.chosen_horizon = horizon;

  TimeSlab w = initial_slab(u0, cfg, horizon);
  for (int it = 0; it < cfg.max_iter; ++it) {
    TimeSlab next = picard_map(w, u0, cfg);
    double dist = 0.0;
    for (int m = 0; m < w.count(); ++m) {
      auto nm = mode_norm(next.states[static_cast<std::size_t>(m)] -
                              w.states[static_cast<std::size_t>(m)],
                          cfg, part.get());
      dist = std::max(dist, nm.value);
      d.norm_reliable = d.norm_reliable && nm.reliable;
    }
    d.iterations = it + 1;
    if (!d.iterate_distances.empty()) {
      const double prev = d.iterate_distances.back();
      const double ratio = prev > 0.0 ? dist / prev : 0.0;
      d.contraction_ratios.push_back(ratio);
      if (ratio >= 1.0 && dist > cfg.tol) {
        d.iterate_distances.push_back(dist);
        d.status = SolveStatus::non_contraction;
        d.message = "picard iteration is not contracting; horizon too large or under-resolved";
        res.slab = std::move(next);
        break;
      }
    }
    d.iterate_distances.push_back(dist);
    w = std::move(next);
    if (dist < cfg.tol) {
      d.status = SolveStatus::converged;
      res.slab = std::move(w);
      break;
    }
    if (it + 1 == cfg.max_iter) {
      d.status = SolveStatus::max_iter_reached;
      d.message = "max_iter reached before tolerance";
      res.slab = std::move(w);
    }
  }
  d.final_residual = d.iterate_distances.empty() ? 0.0 : d.iterate_distances.back();

  // Final-state diagnostics.
  const TimeSlab& v = res.slab;
  d.norm_history.resize(static_cast<std::size_t>(v.count()));
  d.sup_norm = 0.0;
  for (int m = 0; m < v.count(); ++m) {
    auto nm = mode_norm(v.states[static_cast<std::size_t>(m)], cfg, part.get());
    d.norm_history[static_cast<std::size_t>(m)] = nm.value;
    d.sup_norm = std::max(d.sup_norm, nm.value);
    d.norm_reliable = d.norm_reliable && nm.reliable;
  }
  d.apriori_constant = d.initial_norm > 0.0 ? d.sup_norm / d.initial_norm : 0.0;
  d.apriori_ok = cfg.mode == Mode::besov
                     ? d.sup_norm <= 2.0 * d.initial_norm * (1.0 + 1e-9)
                     : true;

  if (cfg.mode == Mode::lp_1d) {
    // Eq-(a80)-type weighted time integral of ||dv/dtau||_p with
    // dv/dtau = F(tau; v).
    const double theta = cfg.theta(1);
    const double pprime = cfg.p / (cfg.p - 1.0);
    const auto& nodes = v.quad.nodes();
    std::vector<double> g(nodes.size());
    for (std::size_t m = 0; m < nodes.size(); ++m) {
      const Field f = nonlinear_density(nodes[m], v.states[m], cfg.sign);
      g[m] = std::pow(nodes[m], theta * pprime) * std::pow(lp_norm(f, cfg.p), pprime);
    }
    d.weighted_integral =
        std::pow(integrate_graded_power(nodes, g, theta * pprime), 1.0 / pprime);
  }
  return res;
}

Field reference_splitstep(const Field& u0, double T, int steps, int sign) {
  if (steps < 1) throw std::invalid_argument("steps must be >= 1");
  const double dt = T / steps;
  Field u = u0;
  for (int s = 0; s < steps; ++s) {
    u = propagator::apply(0.5 * dt, u);
    std::vector<Complex> v(u.physical().begin(), u.physical().end());
    for (auto& z : v) {
      const double phase = -sign * std::norm(z) * dt;
      z *= Complex{std::cos(phase), std::sin(phase)};
    }
    u = Field::from_physical(u.grid(), std::move(v));
    u = propagator::apply(0.5 * dt, u);
  }
  return u;
}

}  // namespace picard
}  // namespace nlslab

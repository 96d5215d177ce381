#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlslab/besov.hpp"
#include "nlslab/field.hpp"
#include "nlslab/time_quadrature.hpp"

namespace nlslab {
namespace picard {

enum class Mode { besov, lp_1d };

/// Solver configuration for the integral equation
///   v(t) = u0 - i*sign int_0^t S(-tau)[ S(-tau) conj(v) (S(tau) v)^2 ] dtau.
/// In besov mode the iteration norm is the homogeneous B^s_{p,1} norm
/// with s = n(1 - 1/p) and the singular exponent is theta = n(2/p - 1);
/// in lp_1d mode (1D only) the norm is L^p and theta = 2/p - 1.
struct SolverConfig {
  int sign = +1;
  Mode mode = Mode::besov;
  double p = 1.5;
  double tol = 1e-10;
  int max_iter = 64;
  int nodes_per_unit = 128;
  std::optional<double> fixed_horizon;  // empty -> auto rule

  double theta(int dim) const;
  void validate(int dim) const;
};

/// Time-quadrature grid on (0, T] with one state per node plus the
/// initial field at tau = 0.
struct TimeSlab {
  TimeQuadrature quad;
  Field initial;
  std::vector<Field> states;  // states[m] at quad.nodes()[m]

  double horizon() const { return quad.horizon(); }
  int count() const { return quad.count(); }
};

enum class SolveStatus { converged, non_contraction, max_iter_reached };

struct SolveDiagnostics {
  SolveStatus status = SolveStatus::max_iter_reached;
  int iterations = 0;
  std::vector<double> iterate_distances;   // sup-node distance per sweep
  std::vector<double> contraction_ratios;  // successive quotients
  double chosen_horizon = 0.0;
  double measured_constant = 0.0;  // the probed constant behind the horizon rule
  double initial_norm = 0.0;       // ||u0|| in the mode norm
  std::vector<double> norm_history;  // ||v(tau_m)|| per node
  double sup_norm = 0.0;
  double apriori_constant = 0.0;   // sup_m ||v|| / ||u0||
  bool apriori_ok = false;         // <= 2 in besov mode
  double final_residual = 0.0;
  double weighted_integral = 0.0;  // lp_1d: (int tau^{theta p'} ||dv/dtau||_p^{p'})^{1/p'}
  bool norm_reliable = true;       // besov tails stayed under 1e-6
  std::string message;
};

struct SolveResult {
  TimeSlab slab;
  SolveDiagnostics diagnostics;
};

/// Nonlinear density F(tau) = -i*sign S(-tau)[S(-tau) conj(w) (S(tau) w)^2]
/// (the tau-derivative of the interaction-representation solution), built
/// from the trilinear form with the conjugate in slot one. The scalar
/// -i*sign is the Duhamel factor of the cubic equation.
Field nonlinear_density(double tau, const Field& w, int sign);

/// One application of the integral map M: (Mw)(tau_m) = u0 + cumulative
/// graded quadrature of F over the slab nodes.
TimeSlab picard_map(const TimeSlab& w, const Field& u0, const SolverConfig& cfg);

/// Constant-in-time initial iterate w == u0 on the graded node set.
TimeSlab initial_slab(const Field& u0, const SolverConfig& cfg, double horizon);

/// Horizon rule: probes Chat = sup tau^theta ||F(tau; u0)|| / ||u0||^3
/// over a fixed tau grid and returns
///   T = [ (2 Chat) (2||u0||)^2 / (1-theta) ]^(-1/(1-theta)),
/// the largest horizon for which the measured contraction chain closes
/// with factor 1/2. Returns 1 for zero data.
double choose_horizon(const Field& u0, const SolverConfig& cfg, double* measured_constant = nullptr);

/// Picard iteration from w == u0 until the sup-node mode-norm distance of
/// successive sweeps drops below tol. Non-contraction (a ratio >= 1)
/// aborts with diagnostics rather than throwing.
SolveResult solve(const Field& u0, const SolverConfig& cfg);

/// Independent Strang-splitting integrator of the PDE
///   i u_t - Lap u = sign |u|^2 u,
/// alternating the exact free flow and the exact nonlinear phase rotation
/// u -> u exp(-i*sign |u|^2 dt). Returns u(T) given u(0) = u0.
Field reference_splitstep(const Field& u0, double T, int steps, int sign);

}  // namespace picard
}  // namespace nlslab

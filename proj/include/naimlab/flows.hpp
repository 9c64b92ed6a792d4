#pragma once

#include "naimlab/objectives.hpp"

#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace naimlab {

/// Position-velocity point in the lifted 2n-dimensional phase space.
struct PhaseState {
  Vector x;
  Vector v;
  double t = 0.0;
};

/// Right-hand side (xdot, vdot) of a first-order system in phase space.
using PhaseField =
    std::function<std::pair<Vector, Vector>(double t, const Vector& x, const Vector& v)>;

/// Uniformly sampled solution curve.
struct Trajectory {
  std::vector<PhaseState> samples;
  std::string objective_id;
  std::map<std::string, double> params;  // lambda, mu, L, eps, step, ...

  double step() const;
};

/// -(1/L) grad f(x), the scaled gradient flow.
Vector gradient_flow_field(const Objective& obj, const Vector& x);

/// Virtual controls (u_in, u_a) of the lifted system: u_in cancels the drift
/// of z = x2 + grad f(x1)/L, u_a contracts it at rate mu.
std::pair<Vector, Vector> lifted_controls(const Objective& obj, const Vector& x1,
                                          const Vector& x2, double mu);

/// Damped oscillator field (xdot, vdot) = (v, -damping*v - grad f(x)).
PhaseField nag_field(const Objective& obj, double damping);

/// Lifted field (x1dot, x2dot) = (x2, u_in + u_a) driven by lifted_controls.
PhaseField lifted_field(const Objective& obj, double mu);

/// Fast-slow form in tau-time: dx/dtau = v/eps, dv/dtau = -v/eps - grad f/sqrt(mu).
PhaseField fast_slow_field(const Objective& obj, double epsilon, double mu);

struct TripleCoefficients {
  double alpha0, alpha1, alpha2;
};
TripleCoefficients canonical_triple_coefficients(double omega);

/// Third-order field (xdot, vdot, adot) = (v, a, -a2 a - a1 v - a0 Q x).
/// Only quadratic objectives are accepted (constant Q).
std::tuple<Vector, Vector, Vector> triple_momentum_field(const Objective& obj, const Vector& x,
                                                         const Vector& v, const Vector& a,
                                                         const TripleCoefficients& c);

/// Classical 4th-order fixed-step integration; throws on NaN/overflow.
Trajectory integrate(const PhaseField& field, const PhaseState& initial, double step,
                     double horizon, long record_stride = 1);

/// Integrates the triple-momentum system; the trajectory stores (x, v) and
/// the acceleration is carried internally.
Trajectory integrate_triple(const Objective& obj, const TripleCoefficients& c,
                            const PhaseState& initial, const Vector& a0, double step,
                            double horizon, long record_stride = 1);

/// (t, V, Vdot) with V = f - f* + |v|^2/2 and Vdot from central differences.
std::vector<std::tuple<double, double, double>> lyapunov_series(const Trajectory& traj,
                                                                const Objective& obj);

struct FenichelReport {
  double fitted_envelope_rate = 0.0;   // decay rate of the |v| envelope
  double target_rate = 0.0;            // sqrt(mu)
  bool confined = false;               // V(t) <= V(0) for all samples
  double max_V_increase = 0.0;         // max over steps of V_{k+1} - V_k
  double gamma_perp = 0.0;             // sqrt(mu)
  double gamma_fenichel = 0.0;         // sqrt(mu) (1 - eps)
  double slow_manifold_proximity = 0.0;  // max late |v| / (eps (1 + |x|))
};

/// Persistence diagnostics for a NAG trajectory at damping 2 sqrt(mu).
FenichelReport fenichel_report(const Trajectory& traj, const Objective& obj,
                               const SpectralBounds& bounds);

/// Slope/intercept of a least-squares line; shared by the envelope fits.
std::pair<double, double> fit_line(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace naimlab

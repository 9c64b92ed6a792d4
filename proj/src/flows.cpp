#include "naimlab/flows.hpp"

#include <cmath>
#include <stdexcept>

namespace naimlab {

double Trajectory::step() const {
  if (samples.size() < 2) throw std::logic_error("trajectory has fewer than two samples");
  return samples[1].t - samples[0].t;
}

Vector gradient_flow_field(const Objective& obj, const Vector& x) {
  return Vector(-obj.grad(x) / obj.L);
}

std::pair<Vector, Vector> lifted_controls(const Objective& obj, const Vector& x1,
                                          const Vector& x2, double mu) {
  Vector u_in = -(obj.hess(x1) * x2) / obj.L;
  Vector u_a = -mu * (x2 + obj.grad(x1) / obj.L);
  return {u_in, u_a};
}

PhaseField nag_field(const Objective& obj, double damping) {
  if (damping < 0.0) throw std::invalid_argument("nag_field: damping must be nonnegative");
  return [obj, damping](double, const Vector& x, const Vector& v) {
    return std::make_pair(v, Vector(-damping * v - obj.grad(x)));
  };
}

PhaseField lifted_field(const Objective& obj, double mu) {
  return [obj, mu](double, const Vector& x1, const Vector& x2) {
    auto [u_in, u_a] = lifted_controls(obj, x1, x2, mu);
    return std::make_pair(x2, Vector(u_in + u_a));
  };
}

PhaseField fast_slow_field(const Objective& obj, double epsilon, double mu) {
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw std::invalid_argument("fast_slow_field: epsilon must lie in (0, 1]");
  const double root_mu = std::sqrt(mu);
  return [obj, epsilon, root_mu](double, const Vector& x, const Vector& v) {
    return std::make_pair(Vector(v / epsilon),
                          Vector(-v / epsilon - obj.grad(x) / root_mu));
  };
}

TripleCoefficients canonical_triple_coefficients(double omega) {
  return {omega * omega, omega * (omega + 2.0), 2.0 * omega + 1.0};
}

std::tuple<Vector, Vector, Vector> triple_momentum_field(const Objective& obj, const Vector& x,
                                                         const Vector& v, const Vector& a,
                                                         const TripleCoefficients& c) {
  if (!obj.quadratic)
    throw std::invalid_argument("triple_momentum_field: objective must be quadratic");
  Vector adot = -c.alpha2 * a - c.alpha1 * v - c.alpha0 * (obj.hess(x) * x);
  return {v, a, adot};
}

Trajectory integrate(const PhaseField& field, const PhaseState& initial, double step,
                     double horizon, long record_stride) {
  if (!(step > 0.0)) throw std::invalid_argument("integrate: step must be positive");
  if (record_stride < 1) record_stride = 1;

  const long nsteps = static_cast<long>(std::llround(horizon / step));
  Trajectory traj;
  traj.params["step"] = step * record_stride;

  Vector x = initial.x, v = initial.v;
  double t = initial.t;
  traj.samples.push_back({x, v, t});

  for (long k = 0; k < nsteps; ++k) {
    auto [k1x, k1v] = field(t, x, v);
    auto [k2x, k2v] = field(t + step / 2, x + (step / 2) * k1x, v + (step / 2) * k1v);
    auto [k3x, k3v] = field(t + step / 2, x + (step / 2) * k2x, v + (step / 2) * k2v);
    auto [k4x, k4v] = field(t + step, x + step * k3x, v + step * k3v);
    x += (step / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
    v += (step / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    t = initial.t + (k + 1) * step;
    if (!x.allFinite() || !v.allFinite())
      throw std::runtime_error("integrate: NaN/overflow at t = " + std::to_string(t));
    if ((k + 1) % record_stride == 0 || k + 1 == nsteps) traj.samples.push_back({x, v, t});
  }
  return traj;
}

Trajectory integrate_triple(const Objective& obj, const TripleCoefficients& c,
                            const PhaseState& initial, const Vector& a0, double step,
                            double horizon, long record_stride) {
  if (!(step > 0.0)) throw std::invalid_argument("integrate_triple: step must be positive");
  if (record_stride < 1) record_stride = 1;
  if (!obj.quadratic)
    throw std::invalid_argument("integrate_triple: objective must be quadratic");

  const long nsteps = static_cast<long>(std::llround(horizon / step));
  Trajectory traj;
  traj.params["step"] = step * record_stride;

  Vector x = initial.x, v = initial.v, a = a0;
  double t = initial.t;
  traj.samples.push_back({x, v, t});
  auto rhs = [&](const Vector& xx, const Vector& vv, const Vector& aa) {
    return triple_momentum_field(obj, xx, vv, aa, c);
  };
  for (long k = 0; k < nsteps; ++k) {
    auto [k1x, k1v, k1a] = rhs(x, v, a);
    auto [k2x, k2v, k2a] =
        rhs(x + (step / 2) * k1x, v + (step / 2) * k1v, a + (step / 2) * k1a);
    auto [k3x, k3v, k3a] =
        rhs(x + (step / 2) * k2x, v + (step / 2) * k2v, a + (step / 2) * k2a);
    auto [k4x, k4v, k4a] = rhs(x + step * k3x, v + step * k3v, a + step * k3a);
    x += (step / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
    v += (step / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    a += (step / 6.0) * (k1a + 2.0 * k2a + 2.0 * k3a + k4a);
    t = initial.t + (k + 1) * step;
    if (!x.allFinite() || !v.allFinite() || !a.allFinite())
      throw std::runtime_error("integrate_triple: NaN/overflow at t = " + std::to_string(t));
    if ((k + 1) % record_stride == 0 || k + 1 == nsteps) traj.samples.push_back({x, v, t});
  }
  return traj;
}

std::vector<std::tuple<double, double, double>> lyapunov_series(const Trajectory& traj,
                                                                const Objective& obj) {
  if (!obj.min_value) throw std::invalid_argument("lyapunov_series: min_value unknown");
  const auto& s = traj.samples;
  std::vector<double> V(s.size());
  for (size_t i = 0; i < s.size(); ++i)
    V[i] = obj.value(s[i].x) - *obj.min_value + 0.5 * s[i].v.squaredNorm();

  std::vector<std::tuple<double, double, double>> out(s.size());
  for (size_t i = 0; i < s.size(); ++i) {
    double vdot;
    if (i == 0)
      vdot = (V[1] - V[0]) / (s[1].t - s[0].t);
    else if (i + 1 == s.size())
      vdot = (V[i] - V[i - 1]) / (s[i].t - s[i - 1].t);
    else
      vdot = (V[i + 1] - V[i - 1]) / (s[i + 1].t - s[i - 1].t);
    out[i] = {s[i].t, V[i], vdot};
  }
  return out;
}

std::pair<double, double> fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw std::invalid_argument("fit_line: need at least two points");
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

FenichelReport fenichel_report(const Trajectory& traj, const Objective& obj,
                               const SpectralBounds& bounds) {
  const auto& s = traj.samples;
  const double root_mu = std::sqrt(bounds.mu);
  const double transient = 5.0 / root_mu;

  FenichelReport rep;
  rep.target_rate = root_mu;
  rep.gamma_perp = root_mu;
  rep.gamma_fenichel = root_mu * (1.0 - bounds.epsilon);

  std::vector<double> V(s.size()), vn(s.size());
  for (size_t i = 0; i < s.size(); ++i) {
    V[i] = obj.gap(s[i].x) + 0.5 * s[i].v.squaredNorm();
    vn[i] = s[i].v.norm();
  }
  rep.confined = true;
  rep.max_V_increase = -std::numeric_limits<double>::infinity();
  for (size_t i = 1; i < s.size(); ++i) {
    rep.max_V_increase = std::max(rep.max_V_increase, V[i] - V[i - 1]);
    if (V[i] > V[0] + 1e-12 * (1.0 + V[0])) rep.confined = false;
  }

  size_t first_late = s.size();
  for (size_t i = 0; i < s.size(); ++i)
    if (s[i].t >= transient) {
      first_late = i;
      break;
    }
  if (s.size() - first_late < 10)
    throw std::runtime_error("fenichel_report: fewer than 10 samples past the transient");

  // Envelope rate from the log of local maxima of |v|; pointwise log fits are
  // meaningless under the underdamped oscillation.
  std::vector<double> ts, logs;
  for (size_t i = std::max(first_late, size_t(1)); i + 1 < s.size(); ++i)
    if (vn[i] > vn[i - 1] && vn[i] >= vn[i + 1] && vn[i] > 0.0) {
      ts.push_back(s[i].t);
      logs.push_back(std::log(vn[i]));
    }
  if (ts.size() < 10) {
    ts.clear();
    logs.clear();
    for (size_t i = first_late; i < s.size(); ++i)
      if (vn[i] > 0.0) {
        ts.push_back(s[i].t);
        logs.push_back(std::log(vn[i]));
      }
  }
  rep.fitted_envelope_rate = -fit_line(ts, logs).first;

  rep.slow_manifold_proximity = 0.0;
  for (size_t i = first_late; i < s.size(); ++i)
    rep.slow_manifold_proximity = std::max(
        rep.slow_manifold_proximity, vn[i] / (bounds.epsilon * (1.0 + s[i].x.norm())));
  return rep;
}

}  // namespace naimlab

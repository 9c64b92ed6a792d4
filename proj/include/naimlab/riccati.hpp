#pragma once

#include "naimlab/objectives.hpp"

#include <complex>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace naimlab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Graph slope P of an invariant graph v = P x together with its damping.
/// P is complex-valued whenever some Hessian mode is underdamped.
struct SlopeOperator {
  ComplexMatrix matrix;
  double damping = 0.0;
  std::optional<Matrix> basis;  // eigenbasis of H used to assemble P
};

enum class DampingRegime { critically_damped, underdamped, overdamped };

/// Roots of the scalar mode equation p^2 + damping*p + sigma = 0.
struct ScalarModeRoots {
  double sigma = 0.0;
  double damping = 0.0;
  Complex p_plus;   // root with the larger real part (+i branch when complex)
  Complex p_minus;
  DampingRegime regime = DampingRegime::critically_damped;
};

/// Third-order momentum tilt pair (v, a) = (P1 x, P2 x) with its coefficients.
struct TripleMomentumState {
  Matrix P1, P2;
  double omega = 1.0;
  double alpha0 = 1.0, alpha1 = 3.0, alpha2 = 3.0;
};

/// Canonical coefficients alpha0 = w^2, alpha1 = w(w+2), alpha2 = 2w+1.
TripleMomentumState make_canonical_triple(Matrix P1, Matrix P2, double omega);

ScalarModeRoots scalar_are_roots(double alpha, double sigma);

/// Attracting branch of the ARE P^2 + damping*P + H = 0, assembled per
/// Hessian eigenmode.  Picks the root with the larger Re(p); complex pairs
/// take the +i branch.
SlopeOperator stable_slope(const Matrix& H, double damping);

/// Frobenius norm of P^2 + damping*P + H.
double are_residual(const SlopeOperator& P, const Matrix& H);

/// Normal component -(P^2 + damping*P + H) x of the field on the graph.
ComplexVector tilt_error(const SlopeOperator& P, const Matrix& H, const Vector& x);

/// Sampled solution of dP/dt = -H(t) - damping*P - P^2.
struct DrePath {
  std::vector<std::pair<double, SlopeOperator>> samples;
  bool blew_up = false;          // |P|_F crossed the 1e8 guard (unstable branch)
  double blowup_time = 0.0;
  std::vector<int> oscillatory_modes;  // frozen-H modes with damping^2 < 4 sigma
};

DrePath integrate_dre(const SlopeOperator& P0,
                      const std::function<Matrix(double)>& hessian_path,
                      double step, double horizon, long record_stride = 1);

struct ModeContraction {
  double sigma;
  double rho;  // transverse contraction rate at this mode
};

/// Per-mode contraction rates rho = damping/2 - Re sqrt(damping^2/4 - sigma).
/// With damping = 2 sqrt(min sigma) every mode contracts at sqrt(min sigma).
std::vector<ModeContraction> resonance_report(const std::vector<double>& spectrum,
                                              double damping);

/// The resonance damping 2 sqrt(mu).
double optimal_damping(double mu);

/// Norms of the two invariance defects
///   P1dot - (P2 - P1^2)   and   P2dot + a2 P2 + a1 P1 + a0 Q + P2 P1.
std::pair<double, double> triple_invariance_residuals(const TripleMomentumState& s,
                                                      const Matrix& P1dot,
                                                      const Matrix& P2dot,
                                                      const Matrix& Q);

/// Factorization (R, S) = (P1, P2 - P1^2); S = 0 is the slow manifold on
/// which R obeys the Nesterov Riccati equation.
std::pair<Matrix, Matrix> triple_factorize(const TripleMomentumState& s);

}  // namespace naimlab

#include "naimlab/riccati.hpp"

#include <cmath>
#include <stdexcept>

namespace naimlab {

namespace {
constexpr double kRegimeTol = 1e-12;
constexpr double kBlowupGuard = 1e8;
}  // namespace

TripleMomentumState make_canonical_triple(Matrix P1, Matrix P2, double omega) {
  TripleMomentumState s;
  s.P1 = std::move(P1);
  s.P2 = std::move(P2);
  s.omega = omega;
  s.alpha0 = omega * omega;
  s.alpha1 = omega * (omega + 2.0);
  s.alpha2 = 2.0 * omega + 1.0;
  return s;
}

ScalarModeRoots scalar_are_roots(double alpha, double sigma) {
  if (!(alpha > 0.0)) throw std::invalid_argument("scalar_are_roots: alpha must be positive");
  if (!(sigma > 0.0)) throw std::invalid_argument("scalar_are_roots: sigma must be positive");

  ScalarModeRoots r;
  r.sigma = sigma;
  r.damping = alpha;
  const double disc = alpha * alpha - 4.0 * sigma;
  if (std::abs(disc) <= kRegimeTol) {
    r.regime = DampingRegime::critically_damped;
    r.p_plus = r.p_minus = Complex(-alpha / 2.0, 0.0);
  } else if (disc > 0.0) {
    r.regime = DampingRegime::overdamped;
    const double s = std::sqrt(disc);
    r.p_plus = Complex((-alpha + s) / 2.0, 0.0);
    r.p_minus = Complex((-alpha - s) / 2.0, 0.0);
  } else {
    r.regime = DampingRegime::underdamped;
    const double s = std::sqrt(-disc);
    r.p_plus = Complex(-alpha / 2.0, s / 2.0);
    r.p_minus = Complex(-alpha / 2.0, -s / 2.0);
  }
  return r;
}

SlopeOperator stable_slope(const Matrix& H, double damping) {
  if ((H - H.transpose()).norm() > 1e-10)
    throw std::invalid_argument("stable_slope: H is not symmetric");
  if (!(damping > 0.0)) throw std::invalid_argument("stable_slope: damping must be positive");

  Eigen::SelfAdjointEigenSolver<Matrix> eig(H);
  const Vector sigma = eig.eigenvalues();
  if (sigma.minCoeff() <= 0.0)
    throw std::invalid_argument("stable_slope: H has a nonpositive eigenvalue");

  const int n = static_cast<int>(H.rows());
  ComplexVector p(n);
  for (int i = 0; i < n; ++i) p(i) = scalar_are_roots(damping, sigma(i)).p_plus;

  const Matrix& U = eig.eigenvectors();
  SlopeOperator P;
  P.matrix = U.cast<Complex>() * p.asDiagonal() * U.transpose().cast<Complex>();
  P.damping = damping;
  P.basis = U;
  return P;
}

double are_residual(const SlopeOperator& P, const Matrix& H) {
  if (P.matrix.rows() != H.rows() || P.matrix.cols() != H.cols())
    throw std::invalid_argument("are_residual: shape mismatch");
  ComplexMatrix R = P.matrix * P.matrix + P.damping * P.matrix + H.cast<Complex>();
  return R.norm();
}

ComplexVector tilt_error(const SlopeOperator& P, const Matrix& H, const Vector& x) {
  if (P.matrix.cols() != H.rows() || H.cols() != x.size())
    throw std::invalid_argument("tilt_error: shape mismatch");
  ComplexMatrix R = P.matrix * P.matrix + P.damping * P.matrix + H.cast<Complex>();
  return -(R * x.cast<Complex>());
}

DrePath integrate_dre(const SlopeOperator& P0,
                      const std::function<Matrix(double)>& hessian_path,
                      double step, double horizon, long record_stride) {
  if (!(step > 0.0)) throw std::invalid_argument("integrate_dre: step must be positive");
  if (!(horizon >= step)) throw std::invalid_argument("integrate_dre: horizon < step");
  if (record_stride < 1) record_stride = 1;

  const long nsteps = static_cast<long>(std::llround(horizon / step));
  const double lambda = P0.damping;
  auto rhs = [&](double t, const ComplexMatrix& P) {
    return ComplexMatrix(-hessian_path(t).cast<Complex>() - lambda * P - P * P);
  };

  DrePath path;
  ComplexMatrix P = P0.matrix;
  double t = 0.0;
  auto record = [&](double tt, const ComplexMatrix& PP) {
    path.samples.push_back({tt, SlopeOperator{PP, lambda, P0.basis}});
  };
  record(t, P);

  for (long k = 0; k < nsteps; ++k) {
    ComplexMatrix k1 = rhs(t, P);
    ComplexMatrix k2 = rhs(t + step / 2, P + (step / 2) * k1);
    ComplexMatrix k3 = rhs(t + step / 2, P + (step / 2) * k2);
    ComplexMatrix k4 = rhs(t + step, P + step * k3);
    P += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t = (k + 1) * step;
    if (!P.allFinite() || P.norm() > kBlowupGuard) {
      path.blew_up = true;
      path.blowup_time = t;
      record(t, P);
      break;
    }
    if ((k + 1) % record_stride == 0 || k + 1 == nsteps) record(t, P);
  }

  // Flag underdamped modes when the Hessian path is frozen.
  const Matrix H0 = hessian_path(0.0);
  if ((H0 - hessian_path(horizon)).norm() <= 1e-12 * (1.0 + H0.norm()) &&
      (H0 - H0.transpose()).norm() <= 1e-10) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(H0);
    for (int i = 0; i < H0.rows(); ++i)
      if (lambda * lambda - 4.0 * eig.eigenvalues()(i) < -kRegimeTol)
        path.oscillatory_modes.push_back(i);
  }
  return path;
}

std::vector<ModeContraction> resonance_report(const std::vector<double>& spectrum,
                                              double damping) {
  if (spectrum.empty()) throw std::invalid_argument("resonance_report: empty spectrum");
  if (!(damping > 0.0)) throw std::invalid_argument("resonance_report: damping must be positive");
  std::vector<ModeContraction> out;
  out.reserve(spectrum.size());
  for (double sigma : spectrum) {
    // rho = damping/2 - Re sqrt(damping^2/4 - sigma), which equals -Re(p_plus).
    const double rho = -scalar_are_roots(damping, sigma).p_plus.real();
    out.push_back({sigma, rho});
  }
  return out;
}

double optimal_damping(double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("optimal_damping: mu must be positive");
  return 2.0 * std::sqrt(mu);
}

std::pair<double, double> triple_invariance_residuals(const TripleMomentumState& s,
                                                      const Matrix& P1dot,
                                                      const Matrix& P2dot,
                                                      const Matrix& Q) {
  if (s.P1.rows() != Q.rows() || s.P2.rows() != Q.rows() ||
      P1dot.rows() != Q.rows() || P2dot.rows() != Q.rows())
    throw std::invalid_argument("triple_invariance_residuals: shape mismatch");
  const double r1 = (P1dot - (s.P2 - s.P1 * s.P1)).norm();
  const double r2 =
      (P2dot + s.alpha2 * s.P2 + s.alpha1 * s.P1 + s.alpha0 * Q + s.P2 * s.P1).norm();
  return {r1, r2};
}

std::pair<Matrix, Matrix> triple_factorize(const TripleMomentumState& s) {
  return {s.P1, Matrix(s.P2 - s.P1 * s.P1)};
}

}  // namespace naimlab

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace naimlab {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Smooth test function with analytic value/gradient/Hessian and declared
/// curvature bounds mu <= hess <= L.
struct Objective {
  int dim = 0;
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> grad;
  std::function<Matrix(const Vector&)> hess;
  double mu = 0.0;  // strong-convexity constant, 0 for merely convex
  double L = 1.0;   // smoothness constant
  std::optional<Vector> minimizer;
  std::optional<double> min_value;
  bool quadratic = false;
  std::string id;

  /// f(x) - f*; requires min_value.
  double gap(const Vector& x) const;
};

/// Curvature summary used by the fast-slow and Fenichel machinery.
struct SpectralBounds {
  double mu;
  double L;
  double kappa;    // L / mu
  double epsilon;  // sqrt(mu / L)

  SpectralBounds(double mu_, double L_)
      : mu(mu_), L(L_), kappa(L_ / mu_), epsilon(std::sqrt(mu_ / L_)) {}
};

/// Orthogonal matrix from the QR factorization of a seeded Gaussian matrix,
/// with the sign convention diag(R) > 0 so the result is reproducible.
Matrix seeded_orthogonal(int n, unsigned long seed);

/// f(x) = 1/2 x^T H x with H = U^T diag(eigenvalues) U.  U is the identity
/// when no rotation seed is given.
Objective make_quadratic(const std::vector<double>& eigenvalues,
                         std::optional<unsigned long> rotation_seed = std::nullopt);

/// f(x) = log sum_i exp(a_i^T x - b_i) + mu/2 |x|^2; L = mu + sigma_max(A)^2.
Objective make_logsumexp_ridge(const Matrix& A, const Vector& b, double mu);

/// f(x) = 1/2 |A x - b|^2 for rank-deficient A; mu = 0, L = sigma_max(A)^2.
/// min_value is set only when b lies in range(A) to 1e-10.
Objective make_rank_deficient_lsq(const Matrix& A, const Vector& b);

/// Central-difference check of grad/hess at x.  Returns the worst relative
/// error over gradient entries and Hessian-vector products; NaNs in the
/// objective propagate as a large failure value instead of throwing.
double check_gradient(const Objective& obj, const Vector& x, double h);

/// Identifiers of the built-in objective suite, e.g. "quad:k100".
std::vector<std::string> objective_ids();

/// Build a suite objective by identifier; throws on unknown ids.
Objective make_objective(const std::string& id);

}  // namespace naimlab

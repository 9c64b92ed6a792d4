#include "naimlab/objectives.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <stdexcept>

namespace naimlab {

double Objective::gap(const Vector& x) const {
  if (!min_value) throw std::logic_error("objective '" + id + "' has no known min_value");
  return value(x) - *min_value;
}

Matrix seeded_orthogonal(int n, unsigned long seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix G(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) G(i, j) = gauss(rng);
  Eigen::HouseholderQR<Matrix> qr(G);
  Matrix Q = qr.householderQ();
  Matrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (R(j, j) < 0) Q.col(j) *= -1.0;
  return Q;
}

Objective make_quadratic(const std::vector<double>& eigenvalues,
                         std::optional<unsigned long> rotation_seed) {
  if (eigenvalues.empty()) throw std::invalid_argument("make_quadratic: empty eigenvalue list");
  for (double ev : eigenvalues)
    if (!(ev > 0.0)) throw std::invalid_argument("make_quadratic: nonpositive eigenvalue");

  const int n = static_cast<int>(eigenvalues.size());
  Matrix H;
  if (rotation_seed) {
    Matrix U = seeded_orthogonal(n, *rotation_seed);
    Vector d = Eigen::Map<const Vector>(eigenvalues.data(), n);
    H = U.transpose() * d.asDiagonal() * U;
    H = 0.5 * (H + H.transpose());  // kill rounding asymmetry
  } else {
    H = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) H(i, i) = eigenvalues[i];
  }

  Objective obj;
  obj.dim = n;
  obj.mu = *std::min_element(eigenvalues.begin(), eigenvalues.end());
  obj.L = *std::max_element(eigenvalues.begin(), eigenvalues.end());
  obj.value = [H](const Vector& x) { return 0.5 * x.dot(H * x); };
  obj.grad = [H](const Vector& x) { return Vector(H * x); };
  obj.hess = [H](const Vector&) { return H; };
  obj.minimizer = Vector::Zero(n);
  obj.min_value = 0.0;
  obj.quadratic = true;
  obj.id = "quad";
  return obj;
}

Objective make_logsumexp_ridge(const Matrix& A, const Vector& b, double mu) {
  if (A.rows() < 1) throw std::invalid_argument("make_logsumexp_ridge: A needs at least one row");
  if (!(mu > 0.0)) throw std::invalid_argument("make_logsumexp_ridge: mu must be positive");
  if (A.rows() != b.size())
    throw std::invalid_argument("make_logsumexp_ridge: A and b dimensions mismatch");

  const int n = static_cast<int>(A.cols());
  auto softmax = [A, b](const Vector& x) {
    Vector z = A * x - b;
    const double m = z.maxCoeff();
    Vector s = (z.array() - m).exp();
    s /= s.sum();
    return s;
  };

  Objective obj;
  obj.dim = n;
  obj.mu = mu;
  const double smax = A.jacobiSvd().singularValues()(0);
  obj.L = mu + smax * smax;
  obj.value = [A, b, mu](const Vector& x) {
    Vector z = A * x - b;
    const double m = z.maxCoeff();
    return m + std::log((z.array() - m).exp().sum()) + 0.5 * mu * x.squaredNorm();
  };
  obj.grad = [A, softmax, mu](const Vector& x) {
    return Vector(A.transpose() * softmax(x) + mu * x);
  };
  obj.hess = [A, softmax, mu, n](const Vector& x) {
    Vector s = softmax(x);
    Matrix M = s.asDiagonal();
    M -= s * s.transpose();
    return Matrix(A.transpose() * M * A + mu * Matrix::Identity(n, n));
  };
  obj.quadratic = false;
  obj.id = "lse";
  return obj;
}

Objective make_rank_deficient_lsq(const Matrix& A, const Vector& b) {
  if (A.rows() != b.size())
    throw std::invalid_argument("make_rank_deficient_lsq: A and b dimensions mismatch");
  const int n = static_cast<int>(A.cols());

  Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double smax = svd.singularValues()(0);
  svd.setThreshold(1e-12);
  if (svd.rank() >= n)
    throw std::invalid_argument("make_rank_deficient_lsq: A has trivial nullspace");

  Objective obj;
  obj.dim = n;
  obj.mu = 0.0;
  obj.L = smax * smax;
  obj.value = [A, b](const Vector& x) { return 0.5 * (A * x - b).squaredNorm(); };
  obj.grad = [A, b](const Vector& x) { return Vector(A.transpose() * (A * x - b)); };
  Matrix H = A.transpose() * A;
  obj.hess = [H](const Vector&) { return H; };

  Vector x_ls = svd.solve(b);
  if ((A * x_ls - b).norm() <= 1e-10 * (1.0 + b.norm())) {
    obj.minimizer = x_ls;  // the least-norm solution
    obj.min_value = 0.0;
  }
  obj.quadratic = true;
  obj.id = "lsq";
  return obj;
}

double check_gradient(const Objective& obj, const Vector& x, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("check_gradient: h must be positive");
  constexpr double kFail = std::numeric_limits<double>::max();

  const Vector g = obj.grad(x);
  const Matrix H = obj.hess(x);
  double worst = 0.0;
  auto rel = [](double approx, double exact) {
    return std::abs(approx - exact) / (1.0 + std::abs(exact));
  };

  for (int i = 0; i < obj.dim; ++i) {
    Vector e = Vector::Zero(obj.dim);
    e(i) = h;
    const double fp = obj.value(x + e);
    const double fm = obj.value(x - e);
    if (!std::isfinite(fp) || !std::isfinite(fm)) return kFail;
    worst = std::max(worst, rel((fp - fm) / (2.0 * h), g(i)));

    const Vector gp = obj.grad(x + e);
    const Vector gm = obj.grad(x - e);
    if (!gp.allFinite() || !gm.allFinite()) return kFail;
    const Vector hv_fd = (gp - gm) / (2.0 * h);
    const Vector hv = H.col(i);
    for (int j = 0; j < obj.dim; ++j) worst = std::max(worst, rel(hv_fd(j), hv(j)));
  }
  return worst;
}

namespace {

std::vector<double> log_spaced(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i)
    out[i] = lo * std::pow(hi / lo, n == 1 ? 0.0 : double(i) / (n - 1));
  return out;
}

// Singular-value ladder with a nullspace block.  The geometric spread keeps
// the worst-case O(1/k^2) envelope active across the whole fit window instead
// of the k^-3 tail a single well-conditioned mode would show.
Objective ladder_lsq(double ratio, int levels, int null_dims,
                     std::optional<unsigned long> seed, const std::string& id) {
  const int n = levels + null_dims;
  Matrix D = Matrix::Zero(n, n);
  for (int j = 0; j < levels; ++j) D(j, j) = std::sqrt(std::pow(ratio, -j));
  Matrix A = D;
  Vector b = Vector::Zero(n);
  if (seed) {
    Matrix Q = seeded_orthogonal(n, *seed);
    A = D * Q.transpose();
    std::mt19937_64 rng(*seed + 1);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector x_sol(n);
    for (int i = 0; i < n; ++i) x_sol(i) = gauss(rng);
    b = A * x_sol;
  }
  Objective obj = make_rank_deficient_lsq(A, b);
  obj.id = id;
  return obj;
}

}  // namespace

std::vector<std::string> objective_ids() {
  return {"quad:1d", "quad:k4",       "quad:k25",    "quad:k100",
          "lse:ridge", "lsq:deficient", "lsq:rotated"};
}

Objective make_objective(const std::string& id) {
  Objective obj;
  if (id == "quad:1d") {
    obj = make_quadratic({1.0});
  } else if (id == "quad:k4") {
    obj = make_quadratic(log_spaced(1.0, 4.0, 8), 11ul);
  } else if (id == "quad:k25") {
    obj = make_quadratic(log_spaced(1.0, 25.0, 8), 12ul);
  } else if (id == "quad:k100") {
    obj = make_quadratic(log_spaced(1.0, 100.0, 10), 13ul);
  } else if (id == "lse:ridge") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix A(6, 4);
    Vector b(6);
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 4; ++j) A(i, j) = gauss(rng);
      b(i) = gauss(rng);
    }
    obj = make_logsumexp_ridge(A, b, 1.0);
  } else if (id == "lsq:deficient") {
    return ladder_lsq(4.0, 10, 2, std::nullopt, id);
  } else if (id == "lsq:rotated") {
    return ladder_lsq(3.0, 12, 3, 21ul, id);
  } else {
    throw std::invalid_argument("unknown objective id: " + id);
  }
  obj.id = id;
  return obj;
}

}  // namespace naimlab

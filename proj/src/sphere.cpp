#include "zonal/sphere.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace zonal {

double omega(int n) {
  if (n < 1) throw std::invalid_argument("omega: dimension must be >= 1");
  return 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
}

double kappa(int n) { return omega(n) / n; }

SphereDim::SphereDim(int n) : n_(n) {
  if (n < 2) throw std::invalid_argument("SphereDim: need n >= 2");
}

QuadratureRule gauss_jacobi_rule(double a, double b, int m) {
  if (m < 1) throw std::invalid_argument("gauss_jacobi_rule: need at least one node");
  if (a <= -1.0 || b <= -1.0) throw std::invalid_argument("gauss_jacobi_rule: exponents must exceed -1");

  // Golub-Welsch: nodes are eigenvalues of the Jacobi matrix built from the
  // three-term recurrence of the orthogonal polynomials, weights come from the
  // first eigenvector components scaled by the weight mass mu0.
  Eigen::VectorXd diag(m), sub(std::max(m - 1, 0));
  for (int j = 0; j < m; ++j) {
    if (j == 0) {
      diag(j) = (b - a) / (a + b + 2.0);
    } else {
      double s = 2.0 * j + a + b;
      diag(j) = (b * b - a * a) / (s * (s + 2.0));
    }
  }
  for (int j = 1; j < m; ++j) {
    double bj;
    if (j == 1) {
      bj = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b) * (2.0 + a + b) * (3.0 + a + b));
    } else {
      double s = 2.0 * j + a + b;
      bj = 4.0 * j * (j + a) * (j + b) * (j + a + b) / (s * s * (s + 1.0) * (s - 1.0));
    }
    sub(j - 1) = std::sqrt(bj);
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("gauss_jacobi_rule: eigensolver failed");

  double mu0 = std::pow(2.0, a + b + 1.0) *
               std::exp(std::lgamma(a + 1.0) + std::lgamma(b + 1.0) - std::lgamma(a + b + 2.0));

  QuadratureRule r;
  r.a = a;
  r.b = b;
  r.nodes.resize(m);
  r.weights.resize(m);
  for (int i = 0; i < m; ++i) {
    r.nodes[i] = es.eigenvalues()(i);
    double v = es.eigenvectors()(0, i);
    r.weights[i] = mu0 * v * v;
  }

  if (a == b) {
    // enforce exact symmetry so odd integrands cancel to rounding error
    for (int i = 0, j = m - 1; i < j; ++i, --j) {
      double t = 0.5 * (r.nodes[j] - r.nodes[i]);
      r.nodes[i] = -t;
      r.nodes[j] = t;
      double w = 0.5 * (r.weights[i] + r.weights[j]);
      r.weights[i] = r.weights[j] = w;
    }
    if (m % 2 == 1) r.nodes[m / 2] = 0.0;
  }
  return r;
}

QuadratureRule gauss_legendre_rule(int m) { return gauss_jacobi_rule(0.0, 0.0, m); }

QuadratureRule gauss_rule(int n, int N) {
  SphereDim dim(n);
  if (N < 1) throw std::invalid_argument("gauss_rule: band limit must be positive");
  double a = 0.5 * (n - 3);
  return gauss_jacobi_rule(a, a, N + 1);
}

Basis::Basis(int n_, int N_) : n(n_), N(N_), M(N_ + 1), rule(gauss_rule(n_, N_)) {
  omega_n = omega(n);
  omega_nm1 = omega(n - 1);

  const std::size_t rows = std::size_t(N) + 1;
  P_.resize(rows * M);
  Pd_.resize(rows * M);
  Pdd_.resize(rows * M);
  std::vector<double> p(rows), pd(rows), pdd(rows);
  for (int i = 0; i < M; ++i) {
    eval_all(rule.nodes[i], p.data(), pd.data(), pdd.data());
    for (int k = 0; k <= N; ++k) {
      P_[std::size_t(k) * M + i] = p[k];
      Pd_[std::size_t(k) * M + i] = pd[k];
      Pdd_[std::size_t(k) * M + i] = pdd[k];
    }
  }

  norm.assign(rows, 0.0);
  for (int k = 0; k <= N; ++k) {
    double s = 0.0;
    for (int i = 0; i < M; ++i) {
      double v = P_[std::size_t(k) * M + i];
      s += rule.weights[i] * v * v;
    }
    norm[k] = s;
  }
  nu.resize(rows);
  for (int k = 0; k <= N; ++k) nu[k] = omega_nm1 * norm[k];
}

void Basis::eval_all(double t, double* p, double* pd, double* pdd) const {
  // P_0 = 1, P_1 = t, (k+n-3) P_k = (2k+n-4) t P_{k-1} - (k-1) P_{k-2};
  // derivative rows follow by differentiating the recurrence.
  p[0] = 1.0;
  if (pd) pd[0] = 0.0;
  if (pdd) pdd[0] = 0.0;
  if (N == 0) return;
  p[1] = t;
  if (pd) pd[1] = 1.0;
  if (pdd) pdd[1] = 0.0;
  for (int k = 2; k <= N; ++k) {
    double A = (2.0 * k + n - 4.0) / (k + n - 3.0);
    double B = (k - 1.0) / (k + n - 3.0);
    p[k] = A * t * p[k - 1] - B * p[k - 2];
    if (pd) pd[k] = A * (p[k - 1] + t * pd[k - 1]) - B * pd[k - 2];
    if (pdd) pdd[k] = A * (2.0 * pd[k - 1] + t * pdd[k - 1]) - B * pdd[k - 2];
  }
}

BasisPtr basis_for(int n, int N) {
  static std::map<std::pair<int, int>, BasisPtr> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(n, N);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto b = std::make_shared<const Basis>(n, N);
  cache.emplace(key, b);
  return b;
}

}  // namespace zonal

#include "zonal/nnls.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace zonal {

namespace {

// least-squares solve restricted to the passive columns
Eigen::VectorXd passive_solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                              const std::vector<int>& passive) {
  const int p = int(passive.size());
  Eigen::MatrixXd Ap(A.rows(), p);
  for (int j = 0; j < p; ++j) Ap.col(j) = A.col(passive[j]);
  return Ap.colPivHouseholderQr().solve(b);
}

}  // namespace

NnlsResult nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double kkt_tol,
                int max_iter) {
  const int m = int(A.rows());
  const int ncols = int(A.cols());
  if (kkt_tol < 0) {
    double scale = A.cwiseAbs().maxCoeff() * b.cwiseAbs().maxCoeff();
    kkt_tol = 1e2 * std::numeric_limits<double>::epsilon() * std::max(1.0, scale) *
              std::max(m, ncols);
  }
  if (max_iter < 0) max_iter = 6 * ncols + 60;

  NnlsResult out;
  out.x = Eigen::VectorXd::Zero(ncols);
  std::vector<bool> in_passive(ncols, false);
  std::vector<int> passive;

  for (int it = 0; it < max_iter; ++it) {
    out.iterations = it;
    Eigen::VectorXd w = A.transpose() * (b - A * out.x);
    int best = -1;
    double best_w = kkt_tol;
    for (int j = 0; j < ncols; ++j) {
      if (!in_passive[j] && w[j] > best_w) {
        best_w = w[j];
        best = j;
      }
    }
    if (best < 0) {
      out.converged = true;
      break;
    }
    in_passive[best] = true;
    passive.push_back(best);

    // inner loop: restore feasibility of the passive-set solution
    for (;;) {
      Eigen::VectorXd z = passive_solve(A, b, passive);
      double zmin = z.size() ? z.minCoeff() : 1.0;
      if (zmin > 0.0) {
        out.x.setZero();
        for (std::size_t j = 0; j < passive.size(); ++j) out.x[passive[j]] = z[j];
        break;
      }
      double alpha = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < passive.size(); ++j) {
        if (z[j] <= 0.0) {
          double xj = out.x[passive[j]];
          alpha = std::min(alpha, xj / (xj - z[j]));
        }
      }
      for (std::size_t j = 0; j < passive.size(); ++j) {
        double xj = out.x[passive[j]];
        out.x[passive[j]] = xj + alpha * (z[j] - xj);
      }
      std::vector<int> next;
      for (int idx : passive) {
        if (out.x[idx] > 1e-14 * std::max(1.0, out.x.cwiseAbs().maxCoeff())) {
          next.push_back(idx);
        } else {
          out.x[idx] = 0.0;
          in_passive[idx] = false;
        }
      }
      passive.swap(next);
      if (passive.empty()) break;
    }
  }
  out.residual = (A * out.x - b).norm();
  return out;
}

}  // namespace zonal

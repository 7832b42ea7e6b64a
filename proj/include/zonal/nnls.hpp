#pragma once

#include <Eigen/Dense>

namespace zonal {

struct NnlsResult {
  Eigen::VectorXd x;       // argmin, componentwise >= 0
  double residual = 0.0;   // ||A x - b||_2
  int iterations = 0;
  bool converged = false;  // KKT satisfied within tolerance
};

// Nonnegative least squares min ||A x - b|| s.t. x >= 0 by the Lawson-Hanson
// active-set method. Deterministic; suitable for a few hundred columns.
// kkt_tol < 0 picks a scale-aware default.
NnlsResult nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double kkt_tol = -1.0,
                int max_iter = -1);

}  // namespace zonal

#pragma once

#include <memory>
#include <vector>

namespace zonal {

inline constexpr const char* kVersion = "0.1.0";

// Surface measure of the unit sphere S^{n-1} in R^n, omega_n = 2 pi^{n/2} / Gamma(n/2).
double omega(int n);

// Volume of the unit ball in R^n, kappa_n = omega_n / n.
double kappa(int n);

// Validated ambient dimension. Zonal analysis needs n >= 2; the counterexample
// constructions additionally require n >= 3 and check that at their own entry points.
class SphereDim {
 public:
  explicit SphereDim(int n);
  int value() const { return n_; }

 private:
  int n_;
};

// Gauss-Jacobi rule for the weight (1-t)^a (1+t)^b on [-1,1].
struct QuadratureRule {
  double a = 0.0;
  double b = 0.0;
  std::vector<double> nodes;    // ascending, open interval
  std::vector<double> weights;  // positive
};

QuadratureRule gauss_jacobi_rule(double a, double b, int m);
QuadratureRule gauss_legendre_rule(int m);

// Rule matched to zonal integration on S^{n-1}: weight (1-t^2)^{(n-3)/2},
// N+1 nodes, exact through polynomial degree 2N+1.
QuadratureRule gauss_rule(int n, int N);

// Gegenbauer-type basis P_k normalized by P_k(1) = 1 (Chebyshev for n = 2,
// Legendre for n = 3). Holds the quadrature rule and nodal tables for the
// basis and its first two derivatives, plus the L^2 normalizers.
class Basis {
 public:
  Basis(int n, int N);

  int n;  // ambient dimension
  int N;  // band limit (max degree)
  int M;  // node count, N + 1
  QuadratureRule rule;

  double p(int k, int i) const { return P_[std::size_t(k) * M + i]; }
  double pd(int k, int i) const { return Pd_[std::size_t(k) * M + i]; }
  double pdd(int k, int i) const { return Pdd_[std::size_t(k) * M + i]; }

  // norm[k] = discrete <P_k,P_k> with respect to the weight; nu[k] = omega_{n-1} * norm[k]
  // is the convolution multiplier of the density with associated function P_k.
  std::vector<double> norm;
  std::vector<double> nu;

  double omega_n;    // omega(n)
  double omega_nm1;  // omega(n-1)

  // Evaluate all P_k (and optionally derivatives) at one abscissa.
  void eval_all(double t, double* p, double* pd = nullptr, double* pdd = nullptr) const;

 private:
  std::vector<double> P_, Pd_, Pdd_;
};

using BasisPtr = std::shared_ptr<const Basis>;

// Shared, cached basis instances keyed by (n, N).
BasisPtr basis_for(int n, int N);

}  // namespace zonal

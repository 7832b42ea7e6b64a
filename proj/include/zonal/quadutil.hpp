#pragma once

#include <functional>

namespace zonal::detail {

// Integral over [a,b] of F(t) (1-t^2)^{(m-1)/2} dt with integer m >= 0, computed
// after the substitution t = cos(theta) as int F(cos th) sin^m th dth. The
// substitution absorbs the endpoint singularity of the half-integer weights.
double integrate_weighted(const std::function<double(double)>& F, double a, double b, int m,
                          double tol = 1e-12);

// Same integral by a fixed mapped Gauss-Legendre rule; right choice when F is
// smooth (band-limited data, polynomial factors) and the node count is sized
// to the degree.
double integrate_weighted_gl(const std::function<double(double)>& F, double a, double b, int m,
                             int nodes);

// Adaptive integral of G(theta) over [th_lo, th_hi]; used for integrands that
// are already expressed in the theta variable.
double integrate_theta(const std::function<double(double)>& G, double th_lo, double th_hi,
                       double tol = 1e-12);

// Bisection for a bracketed sign change of g on [lo, hi].
double bisect(const std::function<double(double)>& g, double lo, double hi, double tol = 1e-12);

}  // namespace zonal::detail

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "zonal/body.hpp"
#include "zonal/zonal_function.hpp"
#include "zonal/zonal_measure.hpp"

namespace zonal {

// Three-part test deciding whether a zonal profile is the density of the j-th
// area measure of a smooth body of revolution.
struct FireyReport {
  bool condition_i = false;    // profile continuous with finite endpoint limits
  bool condition_ii = false;   // tail integral F positive on (-1,1), F(-1) = 0
  bool condition_iii = false;  // s(t)(1-t^2)^{(n-1)/2} strictly dominates (n-1-j) F(t)
  double margins[3] = {0.0, 0.0, 0.0};  // worst-case slack of each condition
  bool accepted() const { return condition_i && condition_ii && condition_iii; }
};

FireyReport firey_check(const ZonalFunction& s, int j);

// Cap-concentration inequality: mass of the j-th area measure on the polar cap
// of opening alpha against the shape factor sin^{n-1-j}(alpha)/cos(alpha) |h|^j.
struct CapBound {
  double lhs;
  double rhs_shape;
  double ratio;  // empirical lower estimate of the universal constant
};

CapBound firey_cap_bound(const BodyRev& K, int j, double alpha);

// Positivity functional deciding whether an even zonal profile is the
// generating function of a convex body of revolution: the integral of rho~
// against psi_{alpha,beta}(t) dt over (-alpha, alpha), where
//   psi_{alpha,beta}(t) = (1 - t^2/a^2)^{(n-4)/2} *
//     [ omega_{n-2} (t/alpha)^2 beta^2 + omega_{n-2}/(n-2) (1-t^2/alpha^2)(1-beta^2) ].
// Equals alpha times the two-dimensional second-moment integral over the great
// subsphere orthogonal to a direction at latitude sqrt(1-alpha^2).
double weil_psi(const ZonalFunction& rho, double alpha, double beta);
// Same for an arbitrary even profile; breakpoints (in t) force subdivision.
double weil_psi_profile(int n, const std::function<double(double)>& rho, double alpha,
                        double beta, const std::vector<double>& breakpoints = {});

// psi_{alpha,beta}(t) dt as a zonal measure (one scaled segment).
ZonalMeasure weil_measure(BasisPtr basis, double alpha, double beta);

struct GeneratingCheck {
  bool accepted = false;
  double min_value = 0.0;   // minimum of the functional over the grid
  double arg_alpha = 0.0;   // grid point attaining the minimum
  double arg_beta = 0.0;
};

// Sweep the positivity functional over a clustered (alpha, beta) grid; accept
// iff the minimum is >= -1e-9.
GeneratingCheck is_generating_function(const ZonalFunction& rho, int grid_alpha = 64,
                                       int grid_beta = 64);

// Grid in (0,1) clustered toward both endpoints (Chebyshev spacing).
std::vector<double> clustered_grid(int m);

// Tail measure: d tau~ = xi (1-xi^2)^{(n-3)/2} d xi on (alpha, 1).
ZonalMeasure tau_alpha(BasisPtr basis, double alpha);
// Ring atom at beta of mass (1-beta^2)^{(n-1)/2} minus (n-2) tau_beta.
ZonalMeasure sigma_beta(BasisPtr basis, double beta);

// total variation / total mass; throws std::domain_error on nonpositive mass.
double tv_ratio(const ZonalMeasure& mu);

// Test function for discretized cone membership: an arbitrary profile with
// quadrature breakpoints, plus an optional band-limited representation that
// enables fast exact pairing.
struct TestFunction {
  std::function<double(double)> profile;
  std::vector<double> breakpoints;
  std::optional<ZonalFunction> band;

  static TestFunction from_function(const ZonalFunction& f);
  static TestFunction from_profile(std::function<double(double)> p,
                                   std::vector<double> breakpoints = {});
};

double pair_test(const ZonalMeasure& mu, const TestFunction& tf);

enum class ConeStatus { member, non_member, inconclusive };

struct ConeCertificate {
  ConeStatus status = ConeStatus::inconclusive;
  std::vector<double> coefficients;    // member: nonnegative weights over generators
  std::vector<double> separator;       // non-member: weights over the test functions
  double residual = 0.0;               // relative NNLS residual on the pairing matrix
  double target_pairing = 0.0;         // separator paired with the target
  double worst_generator_pairing = 0.0;  // minimum separator-generator pairing
  std::string detail;
};

// Decide membership of `target` in the cone generated by `generators`, tested
// against the pairing values on `tests`. Member certificates re-verify the
// reconstruction against fresh test functions; non-member certificates carry a
// separating test combination whose pairings are re-verified directly.
// Numerically ambiguous instances return `inconclusive` rather than a claim.
ConeCertificate cone_membership(const ZonalMeasure& target,
                                const std::vector<ZonalMeasure>& generators,
                                const std::vector<TestFunction>& tests, double tol = 1e-8);

}  // namespace zonal

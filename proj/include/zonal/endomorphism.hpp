#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zonal/body.hpp"
#include "zonal/zonal_measure.hpp"

namespace zonal {

// Minkowski endomorphism represented by its zonal generating measure. The
// degree-1 component is removed on construction, so generators always live in
// the centered class; removing it changes images only by a translation.
class Endomorphism {
 public:
  explicit Endomorphism(ZonalMeasure mu);

  const ZonalMeasure& measure() const { return mu_; }
  BasisPtr basis() const { return mu_.basis; }

  // Same measure data re-expressed on a refined basis of the same dimension.
  Endomorphism rebase(BasisPtr fine) const;

 private:
  ZonalMeasure mu_;
};

// The mean-width map: K -> (integral of h_K) B^n. Its generating function is
// the constant one function.
Endomorphism mean_width_map(BasisPtr basis);

// Image body h_{Phi K} = h_K * mu with the support-function margin attached.
// Throws std::runtime_error ("not an endomorphism on this input") when the
// curvature margin drops below -1e-6 relative to the image scale.
BodyRev apply(const Endomorphism& phi, const BodyRev& K);

// Decision for weak monotonicity: is mu + a L >= 0 for some real a, where L is
// the degree-1 zonal measure t d omega? The admissible a form an interval; the
// report either exhibits a feasible shift or the two locations whose sign
// requirements contradict each other.
struct MonotonicityReport {
  bool weakly_monotone = false;
  double shift = 0.0;    // feasible coefficient when weakly monotone
  double lower = 0.0;    // strongest constraint of the form a >= lower
  double upper = 0.0;    // strongest constraint of the form a <= upper
  double t_lower = 0.0;  // location enforcing the lower bound
  double t_upper = 0.0;  // location enforcing the upper bound
  bool atom_violation = false;  // a negative atom, unrepairable by any shift
  double atom_t = 0.0;
  std::string detail;
};

MonotonicityReport is_weakly_monotone(const Endomorphism& phi);

// Even nonnegative zonal bump of height C = g(pole), supported in the polar
// caps of angular radius alpha, glued with fourth-order contact: the rounding
// endomorphism. c_emp is the empirical curvature constant
//   sup over the validation suite of r_{Phi K}(pole) / sup|h_K| .
struct RoundingResult {
  Endomorphism phi;
  double C = 0.0;
  double alpha = 0.0;
  double c_emp = 0.0;
  double min_alpha = 0.0;  // smallest cap the basis can resolve
};

RoundingResult rounding_construct(BasisPtr basis, double C, double alpha,
                                  int validation_bodies = 60, unsigned seed = 11);

// Difference construction: generating function 1 - g with C > 1 and alpha
// shrunk until the empirical curvature constant of the bump part clears the
// mean-width lower bound 2 omega_{n-1}/(n-1) with 10% headroom. Validated on
// an origin-symmetric suite at the native and the doubled band limit.
struct NonmonotoneResult {
  Endomorphism phi;
  double C = 0.0;
  double alpha = 0.0;
  double c_emp = 0.0;
  double min_generating = 0.0;  // 1 - C, attained at the poles
  double worst_margin = 0.0;    // worst relative image margin over the suite
  int suite_size = 0;
};

NonmonotoneResult nonmonotone_construct(BasisPtr basis, int validation_bodies = 60,
                                        unsigned seed = 12);

// Monotonicity violation: Steiner-centered K contained in L (profile ordering
// checked on a dense grid) whose images reverse at some direction.
struct WitnessTriple {
  BodyRev K;
  BodyRev L;
  double u_t = 0.0;  // evaluation latitude of the reversal
  double gap = 0.0;  // h_{Phi K}(u) - h_{Phi L}(u) > 0
};

std::optional<WitnessTriple> monotonicity_witness(const Endomorphism& phi,
                                                  int trials = 200, unsigned seed = 13);

// Re-verify a witness with the measure and both bodies lifted to a basis
// refined by the given factor; returns the refreshed gap.
double witness_gap_refined(const Endomorphism& phi, const WitnessTriple& w, int factor);

// Empirical Lipschitz constant of the induced map on support functions,
// together with its total-variation upper bound and the mean width of the
// image of the unit ball (the comparison scale of the Lipschitz theorem).
struct LipschitzReport {
  double estimate = 0.0;
  double tv_bound = 0.0;
  double width_image_ball = 0.0;
};

LipschitzReport lipschitz_estimate(const Endomorphism& phi, int trials, unsigned seed = 14);

// min over the suite of int s_1(K) d mu; nonnegative for generating measures
// of Minkowski endomorphisms.
double first_area_positivity(const ZonalMeasure& mu, const std::vector<BodyRev>& suite);

// Deterministic validation suite cycling through the body classes, including
// the near-segment and near-cap extremes; optionally symmetrized (the even
// part of a support function is again a support function).
std::vector<BodyRev> validation_bodies(BasisPtr basis, int count, bool symmetric_only,
                                       unsigned seed);

}  // namespace zonal

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "zonal/sphere.hpp"
#include "zonal/zonal_function.hpp"

namespace zonal {

// Rotation-invariant atom: the uniform measure of total mass `mass` on the
// latitude ring {u : e.u = t} (a point mass at the pole when |t| = 1).
struct RingAtom {
  double t;
  double mass;
};

// Exact piecewise part of the associated 1-D measure:
//   d mu~ = q(t) (1 - (t/c)^2)^{(m-1)/2} dt  on [a, b] with -c <= a <= b <= c,
// with q given by coefficients in the P_k basis of the ambient dimension.
// Keeping these closed-form pieces out of the band-limited density is what
// makes total-variation and tail integrals exact instead of Gibbs-polluted.
// The scale c rescales the weight's support; quadrature substitutes t = c cos
// theta so the (m-1)/2 = -1/2 edge singularity at m = 0 is absorbed exactly.
struct SegmentDensity {
  double a;
  double b;
  int m;  // weight power, integer >= 0
  std::vector<double> q;
  double c = 1.0;
};

struct RadonPair;

// Zonal measure: band-limited spherical density + exact segments + ring atoms.
class ZonalMeasure {
 public:
  explicit ZonalMeasure(BasisPtr basis);

  static ZonalMeasure from_density(ZonalFunction density, bool allow_signed = false);
  static ZonalMeasure dirac(BasisPtr basis, double mass = 1.0);
  static ZonalMeasure ring(BasisPtr basis, double t, double mass);
  static ZonalMeasure uniform_prob(BasisPtr basis);

  BasisPtr basis;
  ZonalFunction density;
  std::vector<SegmentDensity> segments;
  std::vector<RingAtom> atoms;

  // int f d mu for band-limited f (coefficient pairing on the density part,
  // sized Gauss rules on segments, point evaluation on atoms).
  double pair(const ZonalFunction& f) const;
  // Same against an arbitrary profile, by adaptive quadrature. Breakpoints in
  // t force subdivision so narrowly supported profiles are never missed.
  double pair_profile(const std::function<double(double)>& f,
                      const std::vector<double>& breakpoints = {}) const;

  // m_k = int P_k d mu~ for k = 0..N; normalized so the Dirac at the pole is
  // identically one.
  std::vector<double> multipliers() const;

  double mass() const;
  double centroid() const;
  double total_variation() const;

  ZonalMeasure even_part() const;
  ZonalMeasure odd_part() const;
  // Remove the degree-1 component by adjusting the density only.
  ZonalMeasure project_o() const;

  RadonPair radon_decompose() const;

  ZonalMeasure operator+(const ZonalMeasure& o) const;
  ZonalMeasure operator*(double s) const;

  std::string serialize() const;
  static ZonalMeasure deserialize(const std::string& text);

  // Evaluate a segment's smooth factor q at t.
  static double segment_q(const Basis& basis, const SegmentDensity& s, double t);
};

// Jordan decomposition mu = pos - neg into nonnegative measures.
struct RadonPair {
  ZonalMeasure pos;
  ZonalMeasure neg;
};

// Same measure expressed over a finer band limit; exact for the segment and
// atom parts, band-limited refinement of the density part.
ZonalMeasure rebase_measure(const ZonalMeasure& mu, BasisPtr fine);

}  // namespace zonal

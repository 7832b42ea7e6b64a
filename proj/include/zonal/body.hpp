#pragma once

#include <functional>
#include <string>
#include <vector>

#include "zonal/sphere.hpp"
#include "zonal/zonal_function.hpp"
#include "zonal/zonal_measure.hpp"

namespace zonal {

// Convex body of revolution, described by its zonal support function.
struct BodyRev {
  ZonalFunction h;
  bool smooth;    // strict curvature positivity held at validation
  double margin;  // worst curvature margin found at validation
};

// Meridian radius of curvature and the (n-2)-fold parallel radius.
struct CurvatureProfile {
  ZonalFunction r_meridian;
  ZonalFunction r_parallel;
};

struct SupportCheck {
  bool ok;
  double margin;
};

// Decide whether h is a support function by the sign of both curvature radii;
// margin is the worst value over a dense grid including the endpoints.
SupportCheck is_support_function(const ZonalFunction& h, bool strict = true);

// Validate and wrap a support function. Throws std::invalid_argument when the
// curvature check fails.
BodyRev make_body(ZonalFunction h, bool strict = true);

BodyRev ball_body(BasisPtr basis, double r = 1.0);

CurvatureProfile curvature(const BodyRev& K);

// j-th normalized elementary symmetric function of the principal radii,
// returned exactly on a basis refined to hold the product degree.
ZonalFunction area_density(const BodyRev& K, int j);

// The j-th area measure of K as a zonal measure.
ZonalMeasure area_measure(const BodyRev& K, int j);

// Pole component of the Steiner point (the others vanish by symmetry).
double steiner_point(const BodyRev& K);

// Normalized mean width, equal to 2 for the unit ball.
double mean_width(const BodyRev& K);

// Plain integral of the support function over the sphere.
double support_integral(const BodyRev& K);

// L1 norm of the support function over the sphere.
double support_l1(const BodyRev& K);

// Minkowski algebra on support functions.
BodyRev add_bodies(const BodyRev& K, const BodyRev& L);
BodyRev scale_body(const BodyRev& K, double lambda);
BodyRev add_ball(const BodyRev& K, double r);

// Support profile of the double cone (convex hull of the poles and the
// equatorial unit disk).
double double_cone_support(double t);

// First-area-measure pairing of the double cone with a band-limited function:
// a ring atom at 1/sqrt(2) plus an equatorial-band density.
double double_cone_S1(const ZonalFunction& f);

// Same pairing against an arbitrary profile; breakpoints split the adaptive
// integration (used for sharply localized profiles).
double double_cone_S1_profile(int n, const std::function<double(double)>& f,
                              const std::vector<double>& breakpoints = {});

// The same object as a zonal measure.
ZonalMeasure S1_double_cone(BasisPtr basis);

// Support function of the double cone smoothed in the polar angle by a
// compactly supported quartic bump of half-width w (w in (0, pi/4)), plus
// `lift` times the unit ball. Smoothing acts on the meridian profile, so the
// kinks turn into nonnegative curvature bumps and convexity is preserved;
// the lift keeps the parallel radius strictly positive at the poles.
ZonalFunction mollified_cone_support(BasisPtr basis, double w, double lift);

enum class BodyClass { SmoothSymmetric, SmoothGeneral, NearSegment, NearCap };

// Deterministic random body passing the strict curvature test; throws
// std::runtime_error when shrinkage toward the ball cannot rescue the sample.
BodyRev sample_body(BasisPtr basis, unsigned seed, BodyClass cls);
BodyRev sample_body(BasisPtr basis, unsigned seed);

// CSV table of the body profiles: t, r_m, r_p, s_1..s_{n-1}.
std::string body_profile_csv(const BodyRev& K);

}  // namespace zonal

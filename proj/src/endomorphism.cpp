#include "zonal/endomorphism.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "zonal/harmonic.hpp"

namespace zonal {

namespace {

// P-basis coefficients of a low-degree polynomial given in monomials, by
// interpolation at Chebyshev nodes (well conditioned for these degrees).
std::vector<double> monomial_to_p(const Basis& B, const std::vector<double>& mono) {
  const int d = static_cast<int>(mono.size()) - 1;
  Eigen::MatrixXd A(d + 1, d + 1);
  Eigen::VectorXd y(d + 1);
  for (int i = 0; i <= d; ++i) {
    double t = std::cos(M_PI * (i + 0.5) / (d + 1));
    double val = 0.0;
    for (int j = d; j >= 0; --j) val = val * t + mono[j];
    y[i] = val;
    SegmentDensity probe{0.0, 0.0, 0, {}, 1.0};
    for (int j = 0; j <= d; ++j) {
      probe.q.assign(j + 1, 0.0);
      probe.q[j] = 1.0;
      A(i, j) = ZonalMeasure::segment_q(B, probe, t);
    }
  }
  Eigen::VectorXd p = A.colPivHouseholderQr().solve(y);
  return std::vector<double>(p.data(), p.data() + d + 1);
}

// Generating measure of the even quartic cap bump of height C and cap radius
// alpha: exact segments carrying g(t) omega_{n-1} (1-t^2)^{(n-3)/2} dt.
ZonalMeasure bump_measure(BasisPtr B, double C, double alpha) {
  const int n = B->n;
  const double a0 = std::cos(alpha);
  const double s = 1.0 / (1.0 - a0);
  // C ((t - a0)/(1 - a0))^4 expanded in monomials
  std::vector<double> up(5, 0.0);
  double binom[5] = {1, 4, 6, 4, 1};
  for (int i = 0; i <= 4; ++i)
    up[i] = C * std::pow(s, 4) * binom[i] * std::pow(-a0, 4 - i);
  std::vector<double> down = up;  // mirrored: t -> -t
  for (int i = 1; i <= 4; i += 2) down[i] = -down[i];
  const double w = omega(n - 1);
  for (auto& v : up) v *= w;
  for (auto& v : down) v *= w;

  ZonalMeasure mu(B);
  mu.segments.push_back(SegmentDensity{a0, 1.0, n - 2, monomial_to_p(*B, up), 1.0});
  mu.segments.push_back(SegmentDensity{-1.0, -a0, n - 2, monomial_to_p(*B, down), 1.0});
  return mu;
}

double relative_margin(const BodyRev& img) {
  return img.margin / std::max(1.0, img.h.sup_norm());
}

}  // namespace

Endomorphism::Endomorphism(ZonalMeasure mu) : mu_(mu.project_o()) {}

Endomorphism Endomorphism::rebase(BasisPtr fine) const {
  return Endomorphism(rebase_measure(mu_, fine));
}

Endomorphism mean_width_map(BasisPtr basis) {
  return Endomorphism(ZonalMeasure::from_density(ZonalFunction::constant(basis, 1.0)));
}

BodyRev apply(const Endomorphism& phi, const BodyRev& K) {
  ZonalFunction h = convolve(phi.measure(), K.h);
  SupportCheck chk = is_support_function(h, false);
  if (chk.margin < -1e-6 * std::max(1.0, h.sup_norm())) {
    std::ostringstream os;
    os << "not an endomorphism on this input: curvature margin " << chk.margin;
    throw std::runtime_error(os.str());
  }
  return BodyRev{h, chk.margin > 0.0, chk.margin};
}

MonotonicityReport is_weakly_monotone(const Endomorphism& phi) {
  const ZonalMeasure& mu = phi.measure();
  const Basis& B = *mu.basis;
  const int n = B.n;
  MonotonicityReport rep;

  const double tv = mu.total_variation();
  for (const RingAtom& at : mu.atoms) {
    if (at.mass < -1e-11 * (1.0 + tv)) {
      rep.atom_violation = true;
      rep.atom_t = at.t;
      rep.detail = "negative atom mass, unrepairable by a degree-1 shift";
      return rep;
    }
  }

  // scan the combined 1-D density D(t) against the degree-1 density
  // L(t) = t omega_{n-1} (1-t^2)^{(n-3)/2}: feasibility of D + a L >= 0
  auto sphere_weight = [&](double t) {
    return omega(n - 1) * std::pow(std::max(0.0, 1.0 - t * t), (n - 3) / 2.0);
  };
  auto density_at = [&](double t) {
    double d = mu.density(t) * sphere_weight(t);
    for (const SegmentDensity& s : mu.segments) {
      if (t < s.a || t > s.b) continue;
      double y = 1.0 - (t / s.c) * (t / s.c);
      if (y <= 0.0 && s.m == 0) continue;  // edge of a singular weight
      d += ZonalMeasure::segment_q(B, s, t) * std::pow(std::max(0.0, y), (s.m - 1) * 0.5);
    }
    return d;
  };

  std::vector<double> grid;
  const int M = std::max(1024, 8 * B.N);
  for (int i = 0; i < M; ++i) grid.push_back(std::cos(M_PI * (i + 0.5) / M));
  for (const SegmentDensity& s : mu.segments) {
    double lo = std::acos(std::clamp(s.b / s.c, -1.0, 1.0));
    double hi = std::acos(std::clamp(s.a / s.c, -1.0, 1.0));
    for (int i = 0; i < 512; ++i)
      grid.push_back(s.c * std::cos(lo + (hi - lo) * (i + 0.5) / 512.0));
  }

  double scale_d = 0.0;
  for (double t : grid) scale_d = std::max(scale_d, std::fabs(density_at(t)));
  const double dtol = 1e-11 * (1.0 + scale_d);
  const double inf = std::numeric_limits<double>::infinity();
  rep.lower = -inf;
  rep.upper = inf;

  for (double t : grid) {
    double D = density_at(t);
    if (std::fabs(D) <= dtol) continue;
    double L = t * sphere_weight(t);
    if (std::fabs(L) <= 1e-9) {
      if (D < -dtol) {  // no shift acts here
        rep.lower = inf;
        rep.upper = -inf;
        rep.t_lower = rep.t_upper = t;
        rep.detail = "negative density where the degree-1 density vanishes";
        return rep;
      }
      continue;
    }
    double bound = -D / L;
    if (L > 0.0) {
      if (bound > rep.lower) {
        rep.lower = bound;
        rep.t_lower = t;
      }
    } else if (bound < rep.upper) {
      rep.upper = bound;
      rep.t_upper = t;
    }
  }

  const double slack = 1e-9 * (1.0 + std::min(std::fabs(rep.lower), 1e300) +
                               std::min(std::fabs(rep.upper), 1e300));
  rep.weakly_monotone = rep.lower <= rep.upper + slack;
  if (rep.weakly_monotone) {
    if (rep.lower <= 0.0 && 0.0 <= rep.upper)
      rep.shift = 0.0;
    else if (std::isinf(rep.upper))
      rep.shift = rep.lower;
    else if (std::isinf(rep.lower))
      rep.shift = rep.upper;
    else
      rep.shift = 0.5 * (rep.lower + rep.upper);
    std::ostringstream os;
    os << "feasible shift " << rep.shift;
    rep.detail = os.str();
  } else {
    std::ostringstream os;
    os << "density at t=" << rep.t_lower << " requires a >= " << rep.lower
       << " while t=" << rep.t_upper << " requires a <= " << rep.upper;
    rep.detail = os.str();
  }
  return rep;
}

RoundingResult rounding_construct(BasisPtr basis, double C, double alpha,
                                  int validation_bodies_count, unsigned seed) {
  if (!(C > 0.0)) throw std::invalid_argument("rounding_construct: C must be positive");
  if (!(alpha > 0.0 && alpha < M_PI / 2))
    throw std::invalid_argument("rounding_construct: alpha must lie in (0, pi/2)");
  const double min_alpha = 3.0 * M_PI / basis->N;
  if (alpha < min_alpha) {
    std::ostringstream os;
    os << "rounding_construct: cap of radius " << alpha
       << " is unresolvable at this band limit; minimal resolvable alpha is " << min_alpha;
    throw std::invalid_argument(os.str());
  }

  RoundingResult out{Endomorphism(bump_measure(basis, C, alpha)), C, alpha, 0.0, min_alpha};
  std::vector<BodyRev> suite = validation_bodies(basis, validation_bodies_count, false, seed);
  for (const BodyRev& K : suite) {
    BodyRev img = apply(out.phi, K);
    double r_pole = curvature(img).r_parallel(1.0);
    out.c_emp = std::max(out.c_emp, r_pole / K.h.sup_norm());
  }
  return out;
}

NonmonotoneResult nonmonotone_construct(BasisPtr basis, int validation_bodies_count,
                                        unsigned seed) {
  const int n = basis->n;
  if (n < 3) throw std::invalid_argument("nonmonotone_construct: needs dimension >= 3");
  const double threshold = 2.0 * omega(n - 1) / (n - 1);
  const double C = 4.0;

  double alpha = 0.5;
  RoundingResult rounding{Endomorphism(ZonalMeasure(basis)), 0, 0, 0, 0};
  bool found = false;
  while (true) {
    rounding = rounding_construct(basis, C, alpha, validation_bodies_count, seed);
    if (rounding.c_emp <= 0.9 * threshold) {
      found = true;
      break;
    }
    alpha *= 0.8;
    if (alpha < rounding.min_alpha) break;
  }
  if (!found)
    throw std::runtime_error(
        "nonmonotone_construct: no admissible cap radius within this band limit");

  ZonalMeasure one = ZonalMeasure::from_density(ZonalFunction::constant(basis, 1.0));
  ZonalMeasure mu = one + bump_measure(basis, C, alpha) * -1.0;

  NonmonotoneResult out{Endomorphism(mu), C, alpha, rounding.c_emp, 1.0 - C,
                        std::numeric_limits<double>::infinity(), 0};

  // validate on origin-symmetric bodies at the native and doubled band limit
  auto run_suite = [&out](const Endomorphism& phi, BasisPtr B, int count, unsigned sd) {
    for (const BodyRev& K : validation_bodies(B, count, true, sd)) {
      out.worst_margin = std::min(out.worst_margin, relative_margin(apply(phi, K)));
      ++out.suite_size;
    }
  };
  run_suite(out.phi, basis, validation_bodies_count, seed + 1);
  BasisPtr fine = basis_for(n, 2 * basis->N);
  run_suite(out.phi.rebase(fine), fine, validation_bodies_count, seed + 2);
  return out;
}

std::optional<WitnessTriple> monotonicity_witness(const Endomorphism& phi, int trials,
                                                  unsigned seed) {
  BasisPtr B = phi.basis();
  const double mass = phi.measure().mass();
  std::mt19937_64 rng(seed);
  // bumps are placed in the polar angle so their width never drops below the
  // resolvable scale of the basis; narrower bumps only produce Gibbs ripple
  const double wmin = 3.0 * M_PI / B->N;
  std::uniform_real_distribution<double> uc(0.06, 1.2), uw(wmin, 2.3 * wmin);

  for (int trial = 0; trial < trials; ++trial) {
    const double wth = uw(rng);
    const double thc = uc(rng);  // bumps may cross the pole; they stay continuous
    auto moll = [](double y) {
      return std::fabs(y) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - y * y)) : 0.0;
    };
    auto bump = [&](double t) {
      double th = std::acos(std::clamp(t, -1.0, 1.0));
      return moll((th - thc) / wth) + moll((th - (M_PI - thc)) / wth);
    };
    ZonalFunction b = ZonalFunction::from_profile(B, bump);
    // measure the projection undershoot on a grid refining every grid the
    // containment will later be checked on
    double under = 0.0;
    for (int i = 0; i <= 4096; ++i)
      under = std::max(under, -b(std::cos(M_PI * i / 4096.0)));
    const double delta = 1.05 * under + 1e-9;
    ZonalFunction growth = convolve(phi.measure(), b);

    // d(t) = h_{Phi K}(t) - h_{Phi L}(t) for h_L - h_K = delta + b
    ZonalFunction d = (growth + ZonalFunction::constant(B, delta * mass)) * -1.0;
    double best = -std::numeric_limits<double>::infinity(), best_t = 1.0;
    const int G = 4 * B->N + 33;
    for (int i = 0; i <= G; ++i) {
      double t = std::cos(M_PI * i / G);
      if (d(t) > best) {
        best = d(t);
        best_t = t;
      }
    }
    if (best <= 1e-8) continue;

    // grow the base ball until the enlarged body is strictly convex
    double r0 = 1.0;
    ZonalFunction hl = ZonalFunction::constant(B, r0) + b;
    SupportCheck chk = is_support_function(hl, false);
    while (!(chk.margin > 1e-9 * r0) && r0 < 1e7) {
      r0 *= 2.0;
      hl = ZonalFunction::constant(B, r0) + b;
      chk = is_support_function(hl, false);
    }
    if (!(chk.margin > 0.0)) continue;

    // the gap is independent of r0: image differences see only delta + b
    return WitnessTriple{BodyRev{ZonalFunction::constant(B, r0 - delta), true, r0 - delta},
                         BodyRev{hl, true, chk.margin}, best_t, best};
  }
  return std::nullopt;
}

double witness_gap_refined(const Endomorphism& phi, const WitnessTriple& w, int factor) {
  BasisPtr fine = basis_for(phi.basis()->n, factor * phi.basis()->N);
  Endomorphism phi2 = phi.rebase(fine);
  ZonalFunction diff = w.K.h.refine(fine) - w.L.h.refine(fine);
  return convolve(phi2.measure(), diff)(w.u_t);
}

LipschitzReport lipschitz_estimate(const Endomorphism& phi, int trials, unsigned seed) {
  BasisPtr B = phi.basis();
  LipschitzReport rep;
  rep.tv_bound = phi.measure().total_variation();
  rep.width_image_ball = mean_width(apply(phi, ball_body(B)));
  std::vector<BodyRev> suite = validation_bodies(B, 2 * trials, false, seed);
  for (int i = 0; i + 1 < static_cast<int>(suite.size()); i += 2) {
    ZonalFunction diff = suite[i].h - suite[i + 1].h;
    double denom = diff.sup_norm();
    if (denom < 1e-12) continue;
    rep.estimate = std::max(rep.estimate, convolve(phi.measure(), diff).sup_norm() / denom);
  }
  return rep;
}

double first_area_positivity(const ZonalMeasure& mu, const std::vector<BodyRev>& suite) {
  double worst = std::numeric_limits<double>::infinity();
  for (const BodyRev& K : suite) {
    ZonalFunction s1 = area_density(K, 1);
    const ZonalMeasure& m =
        s1.basis()->N == mu.basis->N ? mu : rebase_measure(mu, s1.basis());
    worst = std::min(worst, m.pair(s1));
  }
  return worst;
}

std::vector<BodyRev> validation_bodies(BasisPtr basis, int count, bool symmetric_only,
                                       unsigned seed) {
  const BodyClass classes[4] = {BodyClass::SmoothSymmetric, BodyClass::SmoothGeneral,
                                BodyClass::NearSegment, BodyClass::NearCap};
  std::vector<BodyRev> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    BodyRev K = sample_body(basis, seed + 1000 * i + 1, classes[i % 4]);
    if (symmetric_only) {
      // the even part is the support function of (K + (-K))/2
      ZonalFunction h = K.h.even_part();
      SupportCheck chk = is_support_function(h, false);
      K = BodyRev{h, chk.margin > 0.0, chk.margin};
    }
    out.push_back(K);
  }
  return out;
}

}  // namespace zonal

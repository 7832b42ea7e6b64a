#include "zonal/body.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <stdexcept>

#include "zonal/quadutil.hpp"

namespace zonal {

namespace {

double binom(int a, int b) {
  if (b < 0 || b > a) return 0.0;
  double r = 1.0;
  for (int i = 0; i < b; ++i) r = r * (a - i) / (i + 1);
  return r;
}

double r_meridian_at(const ZonalFunction& h, double t) {
  return (1.0 - t * t) * h.deriv2(t) - t * h.deriv(t) + h(t);
}

double r_parallel_at(const ZonalFunction& h, double t) { return h(t) - t * h.deriv(t); }

}  // namespace

SupportCheck is_support_function(const ZonalFunction& h, bool strict) {
  const auto B = h.basis();
  double margin = std::min(r_parallel_at(h, 1.0), r_parallel_at(h, -1.0));
  const int G = 4 * B->N + 65;
  for (int i = 0; i <= G; ++i) {
    double t = std::cos(M_PI * i / G);
    margin = std::min(margin, std::min(r_meridian_at(h, t), r_parallel_at(h, t)));
  }
  bool ok = strict ? margin > 0.0 : margin >= -1e-9;
  return {ok, margin};
}

BodyRev make_body(ZonalFunction h, bool strict) {
  SupportCheck chk = is_support_function(h, strict);
  if (!chk.ok) throw std::invalid_argument("make_body: curvature check failed");
  return BodyRev{std::move(h), chk.margin > 0.0, chk.margin};
}

BodyRev ball_body(BasisPtr basis, double r) {
  if (r <= 0.0) throw std::invalid_argument("ball_body: radius must be positive");
  return make_body(ZonalFunction::constant(std::move(basis), r));
}

CurvatureProfile curvature(const BodyRev& K) {
  const auto B = K.h.basis();
  ZonalFunction rm = ZonalFunction::from_profile(B, [&](double t) { return r_meridian_at(K.h, t); });
  ZonalFunction rp = ZonalFunction::from_profile(B, [&](double t) { return r_parallel_at(K.h, t); });
  return {std::move(rm), std::move(rp)};
}

ZonalFunction area_density(const BodyRev& K, int j) {
  const auto B = K.h.basis();
  const int n = B->n;
  if (j < 1 || j > n - 1) throw std::invalid_argument("area_density: order out of range");
  if (!K.smooth) throw std::domain_error("area_density: body lacks strict curvature bounds");
  auto Bj = basis_for(n, std::max(B->N, j * B->N));
  double c1 = binom(n - 2, j) / binom(n - 1, j);
  double c2 = binom(n - 2, j - 1) / binom(n - 1, j);
  return ZonalFunction::from_profile(Bj, [&](double t) {
    double rp = r_parallel_at(K.h, t);
    double rm = r_meridian_at(K.h, t);
    return c1 * std::pow(rp, j) + c2 * rm * std::pow(rp, j - 1);
  });
}

ZonalMeasure area_measure(const BodyRev& K, int j) {
  return ZonalMeasure::from_density(area_density(K, j), true);
}

double steiner_point(const BodyRev& K) {
  const auto B = K.h.basis();
  double integral = detail::integrate_weighted_gl(
      [&](double t) { return t * K.h(t); }, -1.0, 1.0, B->n - 2, B->N + 24);
  return B->omega_nm1 * integral / kappa(B->n);
}

double mean_width(const BodyRev& K) {
  return 2.0 / omega(K.h.basis()->n) * sphere_integral(K.h);
}

double support_integral(const BodyRev& K) { return sphere_integral(K.h); }

double support_l1(const BodyRev& K) { return K.h.l1_norm_sphere(); }

BodyRev add_bodies(const BodyRev& K, const BodyRev& L) {
  return make_body(K.h + L.h, K.smooth && L.smooth);
}

BodyRev scale_body(const BodyRev& K, double lambda) {
  if (lambda <= 0.0) throw std::invalid_argument("scale_body: factor must be positive");
  return BodyRev{K.h * lambda, K.smooth, K.margin * lambda};
}

BodyRev add_ball(const BodyRev& K, double r) {
  if (r == 0.0) return K;
  std::vector<double> c{r};
  return make_body(K.h + ZonalFunction(K.h.basis(), c), K.smooth);
}

double double_cone_support(double t) {
  return std::max(std::fabs(t), std::sqrt(std::max(0.0, 1.0 - t * t)));
}

namespace {

// The measure is symmetric: the total ring mass 2^{-(n-5)/2} kappa_{n-1} is
// split between the two latitudes +-1/sqrt(2), and the equatorial band carries
// density (n-2) omega_{n-1}/(n-1) (1-t^2)^{(n-4)/2} on (-1/sqrt2, 1/sqrt2).
double cone_atom_mass(int n) { return std::pow(2.0, -(n - 5) / 2.0) * kappa(n - 1); }

double cone_band_coeff(int n) { return (n - 2) * omega(n - 1) / (n - 1.0); }

}  // namespace

double double_cone_S1(const ZonalFunction& f) {
  const int n = f.basis()->n;
  if (n < 3) throw std::invalid_argument("double_cone_S1: needs dimension at least 3");
  const double r = 1.0 / std::sqrt(2.0);
  double band = detail::integrate_weighted([&](double t) { return f(t); }, -r, r, n - 3, 1e-13);
  return 0.5 * cone_atom_mass(n) * (f(r) + f(-r)) + cone_band_coeff(n) * band;
}

double double_cone_S1_profile(int n, const std::function<double(double)>& f,
                              const std::vector<double>& breakpoints) {
  if (n < 3) throw std::invalid_argument("double_cone_S1_profile: needs dimension at least 3");
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<double> cuts{-r, r};
  for (double b : breakpoints)
    if (b > -r && b < r) cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  double band = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    band += detail::integrate_weighted(f, cuts[i], cuts[i + 1], n - 3, 1e-13);
  return 0.5 * cone_atom_mass(n) * (f(r) + f(-r)) + cone_band_coeff(n) * band;
}

ZonalMeasure S1_double_cone(BasisPtr basis) {
  const int n = basis->n;
  if (n < 3) throw std::invalid_argument("S1_double_cone: needs dimension at least 3");
  const double r = 1.0 / std::sqrt(2.0);
  ZonalMeasure mu(std::move(basis));
  mu.segments.push_back({-r, r, n - 3, {cone_band_coeff(n)}});
  mu.atoms.push_back({r, 0.5 * cone_atom_mass(n)});
  mu.atoms.push_back({-r, 0.5 * cone_atom_mass(n)});
  return mu;
}

ZonalFunction mollified_cone_support(BasisPtr basis, double w, double lift) {
  if (!(w > 0.0) || !(w < 0.25 * M_PI))
    throw std::invalid_argument("mollified_cone_support: half-width must lie in (0, pi/4)");
  if (lift < 0.0)
    throw std::invalid_argument("mollified_cone_support: lift must be nonnegative");
  // even reflection of the meridian profile across the poles
  auto hd = [](double s) {
    return std::max(std::fabs(std::cos(s)), std::fabs(std::sin(s)));
  };
  return ZonalFunction::from_profile(basis, [&](double t) {
    double th = std::acos(std::min(1.0, std::max(-1.0, t)));
    double num = detail::integrate_theta(
        [&](double s) {
          double y = (s - th) / w;
          double u = 1.0 - y * y;
          return hd(s) * u * u * u * u;
        },
        th - w, th + w, 1e-11);
    return (315.0 / 256.0) * num / w + lift;
  });
}

namespace {

ZonalFunction raw_sample(BasisPtr B, std::mt19937_64& rng, BodyClass cls) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> c(B->N + 1, 0.0);
  switch (cls) {
    case BodyClass::SmoothSymmetric: {
      c[0] = 1.0;
      double s = 0.35;
      for (int k = 2; k <= B->N; k += 2) {
        c[k] = u(rng) * s;
        s *= 0.45;
      }
      return ZonalFunction(B, c);
    }
    case BodyClass::SmoothGeneral: {
      c[0] = 1.0;
      double s = 0.3;
      for (int k = 1; k <= B->N; ++k) {
        c[k] = u(rng) * s;
        s *= 0.55;
      }
      return ZonalFunction(B, c);
    }
    case BodyClass::NearSegment: {
      ZonalFunction base = ZonalFunction::from_profile(
          B, [](double t) { return 0.35 + std::sqrt(t * t + 0.0225); });
      std::vector<double> p(B->N + 1, 0.0);
      double s = 0.02;
      for (int k = 2; k <= B->N; k += 2) {
        p[k] = u(rng) * s;
        s *= 0.7;
      }
      return base + ZonalFunction(B, p);
    }
    case BodyClass::NearCap: {
      ZonalFunction base = ZonalFunction::from_profile(B, [](double t) {
        double z = t - 0.3;
        return 0.55 + 0.5 * (std::sqrt(z * z + 0.04) + z);
      });
      std::vector<double> p(B->N + 1, 0.0);
      double s = 0.02;
      for (int k = 1; k <= B->N; ++k) {
        p[k] = u(rng) * s;
        s *= 0.7;
      }
      return base + ZonalFunction(B, p);
    }
  }
  throw std::logic_error("raw_sample: unknown class");
}

}  // namespace

BodyRev sample_body(BasisPtr basis, unsigned seed, BodyClass cls) {
  std::mt19937_64 rng(4ull * seed + unsigned(cls) + 0x9e3779b9ull);
  ZonalFunction raw = raw_sample(basis, rng, cls);
  double c0 = raw.coefficients()[0];
  ZonalFunction ball = ZonalFunction::constant(basis, c0);
  ZonalFunction bump = raw - ball;
  double lam = 1.0;
  for (int iter = 0; iter < 48; ++iter) {
    ZonalFunction h = ball + bump * lam;
    SupportCheck chk = is_support_function(h, true);
    if (chk.ok && chk.margin >= 1e-3 * c0) return BodyRev{h, true, chk.margin};
    lam *= 0.5;
  }
  throw std::runtime_error("sample_body: shrinkage failed to reach a valid body");
}

BodyRev sample_body(BasisPtr basis, unsigned seed) {
  static const BodyClass classes[4] = {BodyClass::SmoothSymmetric, BodyClass::SmoothGeneral,
                                       BodyClass::NearSegment, BodyClass::NearCap};
  return sample_body(std::move(basis), seed, classes[seed % 4]);
}

std::string body_profile_csv(const BodyRev& K) {
  const auto B = K.h.basis();
  const int n = B->n;
  std::ostringstream os;
  os << "t,r_m,r_p";
  for (int j = 1; j < n; ++j) os << ",s_" << j;
  os << "\n";
  std::vector<ZonalFunction> sj;
  for (int j = 1; j < n; ++j) sj.push_back(area_density(K, j));
  char buf[40];
  auto put = [&](double x, bool lead_comma) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    if (lead_comma) os << ",";
    os << buf;
  };
  for (int i = 0; i < B->M; ++i) {
    double t = B->rule.nodes[i];
    put(t, false);
    put(r_meridian_at(K.h, t), true);
    put(r_parallel_at(K.h, t), true);
    for (int j = 1; j < n; ++j) put(sj[j - 1](t), true);
    os << "\n";
  }
  return os.str();
}

}  // namespace zonal

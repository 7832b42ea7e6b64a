#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "zonal/body.hpp"
#include "zonal/quadutil.hpp"
#include "zonal/harmonic.hpp"
#include "zonal/sphere.hpp"
#include "zonal/zonal_function.hpp"
#include "zonal/zonal_measure.hpp"

using namespace zonal;

namespace {

ZonalFunction random_function(BasisPtr B, unsigned seed, double decay = 0.55) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> c(B->N + 1);
  double scale = 1.0;
  for (int k = 0; k <= B->N; ++k) {
    c[k] = u(rng) * scale;
    scale *= decay;
  }
  return ZonalFunction(B, c);
}

// Second directional derivative of the 1-homogeneous extension of h at the
// sphere point u along tangent v, by Richardson-extrapolated differences.
double fd_radius(const ZonalFunction& h, const std::vector<double>& u,
                 const std::vector<double>& v) {
  const int n = int(u.size());
  auto H = [&](double s) {
    double r2 = 0.0, zn = 0.0;
    for (int i = 0; i < n; ++i) {
      double xi = u[i] + s * v[i];
      r2 += xi * xi;
      if (i == n - 1) zn = xi;
    }
    double r = std::sqrt(r2);
    return r * h(zn / r);
  };
  auto fd2 = [&](double s) { return (H(s) - 2.0 * H(0.0) + H(-s)) / (s * s); };
  double c = fd2(2e-3), f = fd2(1e-3);
  return (4.0 * f - c) / 3.0;
}

// Stable profile of the smoothed double cone (the q-mean of the two support
// candidates); converges to max(|t|, sqrt(1-t^2)) as q grows.
double mollified_cone_profile(double t, int q) {
  double a = std::fabs(t), b = std::sqrt(std::max(0.0, 1.0 - t * t));
  double M = std::max(a, b), m = std::min(a, b);
  if (M == 0.0) return 0.0;
  double r = m / M;
  return M * std::exp(std::log1p(std::pow(r, q)) / q);
}

// First-area density of the mollified cone by finite differences on the exact
// profile (no band-limited representation anywhere).
double mollified_cone_s1(double t, int q, int n) {
  auto h = [&](double x) { return mollified_cone_profile(x, q); };
  auto d1 = [&](double s) { return (h(t + s) - h(t - s)) / (2.0 * s); };
  auto d2 = [&](double s) { return (h(t + s) - 2.0 * h(t) + h(t - s)) / (s * s); };
  double hp = (4.0 * d1(2e-6) - d1(4e-6)) / 3.0;
  double hpp = (4.0 * d2(2e-6) - d2(4e-6)) / 3.0;
  return ((1.0 - t * t) * hpp - (n - 1) * t * hp + (n - 1) * h(t)) / (n - 1);
}

}  // namespace

TEST_CASE("ball bodies have unit curvature and simple functionals") {
  for (int n : {3, 4, 6}) {
    auto B = basis_for(n, 16);
    BodyRev K = ball_body(B, 1.75);
    CHECK(K.smooth);
    CHECK(K.margin == doctest::Approx(1.75).epsilon(1e-12));
    CurvatureProfile c = curvature(K);
    CHECK(c.r_meridian.coefficients()[0] == doctest::Approx(1.75).epsilon(1e-13));
    CHECK(c.r_parallel.coefficients()[0] == doctest::Approx(1.75).epsilon(1e-13));
    for (int k = 1; k <= B->N; ++k) {
      CHECK(std::fabs(c.r_meridian.coefficients()[k]) <= 1e-12);
      CHECK(std::fabs(c.r_parallel.coefficients()[k]) <= 1e-12);
    }
    for (int j = 1; j < n; ++j) {
      ZonalFunction sj = area_density(K, j);
      CHECK(sj(0.3) == doctest::Approx(std::pow(1.75, j)).epsilon(1e-11));
      CHECK(sj(-0.9) == doctest::Approx(std::pow(1.75, j)).epsilon(1e-11));
    }
    CHECK(steiner_point(K) == doctest::Approx(0.0).scale(1.0).epsilon(1e-13));
    CHECK(mean_width(K) == doctest::Approx(3.5).epsilon(1e-12));
  }
}

TEST_CASE("degenerate and invalid support profiles") {
  auto B = basis_for(3, 12);
  // a single point: both radii vanish identically
  ZonalFunction point = ZonalFunction::basis_element(B, 1);
  SupportCheck strict = is_support_function(point, true);
  SupportCheck loose = is_support_function(point, false);
  CHECK_FALSE(strict.ok);
  CHECK(loose.ok);
  CHECK(std::fabs(loose.margin) <= 1e-12);
  BodyRev P = make_body(point, false);
  CHECK_FALSE(P.smooth);
  CurvatureProfile c = curvature(P);
  for (int k = 0; k <= B->N; ++k) {
    CHECK(std::fabs(c.r_meridian.coefficients()[k]) <= 1e-13);
    CHECK(std::fabs(c.r_parallel.coefficients()[k]) <= 1e-13);
  }
  // (e.u)^2 is not a support function: the parallel radius is -t^2
  ZonalFunction tsq = ZonalFunction::from_profile(B, [](double t) { return t * t; });
  SupportCheck bad = is_support_function(tsq, false);
  CHECK_FALSE(bad.ok);
  CHECK(bad.margin <= -0.9);
  CHECK_THROWS_AS((void)make_body(tsq), std::invalid_argument);
}

TEST_CASE("curvature formulas match the extension Hessian") {
  for (int n : {3, 4, 5}) {
    auto B = basis_for(n, 20);
    for (unsigned s = 0; s < 3; ++s) {
      BodyRev K = sample_body(B, 17u * n + s);
      CurvatureProfile c = curvature(K);
      for (double th : {0.2, 0.7, 1.3, 2.2, 2.9}) {
        std::vector<double> u(n, 0.0), vm(n, 0.0), vp(n, 0.0);
        u[0] = std::sin(th);
        u[n - 1] = std::cos(th);
        vm[0] = std::cos(th);
        vm[n - 1] = -std::sin(th);
        vp[1] = 1.0;
        double t = std::cos(th);
        CHECK(c.r_meridian(t) == doctest::Approx(fd_radius(K.h, u, vm)).epsilon(1e-6));
        CHECK(c.r_parallel(t) == doctest::Approx(fd_radius(K.h, u, vp)).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("first area density is the box image of the support function") {
  for (int n : {3, 4, 5}) {
    auto B = basis_for(n, 24);
    BodyRev K = sample_body(B, 400u + n);
    ZonalFunction s1 = area_density(K, 1);
    ZonalFunction want = box_n(K.h);
    for (int k = 0; k <= B->N; ++k)
      CHECK(s1.coefficients()[k] ==
            doctest::Approx(want.coefficients()[k]).epsilon(1e-8).scale(1.0));
    // and the stated combination of the two radii
    CurvatureProfile c = curvature(K);
    for (double t : {-0.85, -0.2, 0.4, 0.95})
      CHECK((c.r_meridian(t) + (n - 2) * c.r_parallel(t)) / (n - 1) ==
            doctest::Approx(want(t)).epsilon(1e-8));
    // area measures are centered: degree-1 multiplier vanishes
    CHECK(area_measure(K, 1).centroid() == doctest::Approx(0.0).scale(1.0).epsilon(1e-8));
  }
}

TEST_CASE("steiner-type expansion of the top area density") {
  for (int n : {3, 4}) {
    auto B = basis_for(n, 14);
    BodyRev K = sample_body(B, 71u + n);
    std::vector<ZonalFunction> s;
    ZonalFunction s0 = ZonalFunction::constant(basis_for(n, 14), 1.0);
    for (int j = 1; j < n; ++j) s.push_back(area_density(K, j));
    auto binom = [](int a, int b) {
      double r = 1.0;
      for (int i = 0; i < b; ++i) r = r * (a - i) / (i + 1);
      return r;
    };
    for (double r : {0.0, 0.25, 0.5, 1.0, 2.0}) {
      ZonalFunction top = area_density(add_ball(K, r), n - 1);
      for (double t : {-0.9, -0.35, 0.15, 0.65, 0.97}) {
        double want = binom(n - 1, 0) * std::pow(r, n - 1);  // j = 0 term: s_0 = 1
        for (int j = 1; j < n; ++j)
          want += binom(n - 1, j) * std::pow(r, n - 1 - j) * s[j - 1](t);
        CHECK(top(t) == doctest::Approx(want).epsilon(1e-7).scale(1.0));
      }
    }
  }
}

TEST_CASE("steiner point and mean width behave under translation and sums") {
  auto B = basis_for(4, 18);
  BodyRev K = sample_body(B, 909);
  // quadrature path equals the degree-1 coefficient identity
  CHECK(steiner_point(K) == doctest::Approx(K.h.coefficients()[1]).epsilon(1e-12).scale(1.0));
  std::vector<double> shift(2, 0.0);
  shift[1] = 0.37;
  BodyRev Kt = make_body(K.h + ZonalFunction(B, shift), K.smooth);
  CHECK(steiner_point(Kt) == doctest::Approx(steiner_point(K) + 0.37).epsilon(1e-12));
  CHECK(mean_width(Kt) == doctest::Approx(mean_width(K)).epsilon(1e-12));

  BodyRev L = sample_body(B, 910);
  CHECK(mean_width(add_bodies(K, L)) ==
        doctest::Approx(mean_width(K) + mean_width(L)).epsilon(1e-12));
  CHECK(mean_width(ball_body(B, 0.4)) == doctest::Approx(0.8).epsilon(1e-12));

  // a smoothed half-space-facing profile has positive pole component
  ZonalFunction hm = ZonalFunction::from_profile(
      B, [](double t) { return 1.0 + 0.3 * 0.5 * (std::sqrt(t * t + 0.25) + t); });
  BodyRev Km = make_body(hm);
  CHECK(steiner_point(Km) > 0.0);
  CHECK(steiner_point(Km) == doctest::Approx(Km.h.coefficients()[1]).epsilon(1e-12));
}

TEST_CASE("symmetric samples satisfy the L1 lower bound") {
  for (int n : {3, 4, 5}) {
    auto B = basis_for(n, 20);
    for (unsigned s = 0; s < 6; ++s) {
      BodyRev K = sample_body(B, 1000u + 7u * s + n, BodyClass::SmoothSymmetric);
      for (int k = 1; k <= B->N; k += 2) CHECK(std::fabs(K.h.coefficients()[k]) <= 1e-12);
      CHECK(support_l1(K) >=
            (2.0 * omega(n - 1) / (n - 1)) * K.h.sup_norm() - 1e-9);
    }
  }
}

TEST_CASE("double cone first-area measure: frozen masses and box adjointness") {
  {
    auto B = basis_for(3, 20);
    double mass = S1_double_cone(B).mass();
    CHECK(mass == doctest::Approx(2.0 * M_PI + M_PI * M_PI / 2.0).epsilon(1e-10));
    CHECK(double_cone_S1(ZonalFunction::constant(B, 1.0)) == doctest::Approx(mass).epsilon(1e-10));
  }
  {
    auto B = basis_for(4, 20);
    CHECK(S1_double_cone(B).mass() == doctest::Approx(4.0 * std::sqrt(2.0) * M_PI).epsilon(1e-10));
  }
  for (int n : {3, 4, 5}) {
    auto B = basis_for(n, 24);
    for (unsigned s = 0; s < 4; ++s) {
      ZonalFunction f = random_function(B, 60u + s);
      ZonalFunction bf = box_n(f);
      double direct = sphere_integral(
          *B, [&](double t) { return double_cone_support(t) * bf(t); },
          {-1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)});
      CHECK(double_cone_S1(f) == doctest::Approx(direct).epsilon(1e-9).scale(1.0));
      CHECK(S1_double_cone(B).pair(f) == doctest::Approx(direct).epsilon(1e-9).scale(1.0));
    }
  }
}

TEST_CASE("mollified double cones converge to the closed-form measure") {
  for (int n : {3, 4}) {
    auto B = basis_for(n, 16);
    for (unsigned s = 0; s < 2; ++s) {
      ZonalFunction f = random_function(B, 77u + s);
      double want = double_cone_S1(f);
      double err_coarse = 0.0, err_fine = 0.0;
      for (int q : {32, 512}) {
        double got = omega(n - 1) *
                     zonal::detail::integrate_weighted(
                         [&](double t) { return mollified_cone_s1(t, q, n) * f(t); }, -1.0, 1.0,
                         n - 2, 1e-10);
        double err = std::fabs(got - want) / std::max(1.0, std::fabs(want));
        (q == 32 ? err_coarse : err_fine) = err;
      }
      CHECK(err_fine <= 1e-3);
      CHECK(err_fine < err_coarse);
    }
  }
}

TEST_CASE("sampled bodies are valid, deterministic, and class-faithful") {
  auto B = basis_for(3, 24);
  for (BodyClass cls : {BodyClass::SmoothSymmetric, BodyClass::SmoothGeneral,
                        BodyClass::NearSegment, BodyClass::NearCap}) {
    BodyRev K = sample_body(B, 5, cls);
    CHECK(K.smooth);
    CHECK(K.margin > 0.0);
    BodyRev K2 = sample_body(B, 5, cls);
    for (int k = 0; k <= B->N; ++k)
      CHECK(K.h.coefficients()[k] == K2.h.coefficients()[k]);
  }
  BodyRev A = sample_body(B, 6);
  BodyRev C = sample_body(B, 7);
  bool differ = false;
  for (int k = 0; k <= B->N; ++k)
    if (A.h.coefficients()[k] != C.h.coefficients()[k]) differ = true;
  CHECK(differ);
}

TEST_CASE("area density rejects bad inputs and exports profiles") {
  auto B = basis_for(3, 12);
  BodyRev K = sample_body(B, 88);
  CHECK_THROWS_AS((void)area_density(K, 0), std::invalid_argument);
  CHECK_THROWS_AS((void)area_density(K, 3), std::invalid_argument);
  BodyRev P = make_body(ZonalFunction::basis_element(B, 1), false);
  CHECK_THROWS_AS((void)area_density(P, 1), std::domain_error);

  std::string csv = body_profile_csv(K);
  CHECK(csv.rfind("t,r_m,r_p,s_1,s_2\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == B->M + 1);
  CHECK(csv == body_profile_csv(K));
}

#include "doctest.h"
#include "zonal/sphere.hpp"
#include "zonal/zonal_function.hpp"
#include "zonal/zonal_measure.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace zonal;

namespace {

ZonalFunction random_function(BasisPtr B, unsigned seed, double decay = 0.35) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> c(B->N + 1);
  for (int k = 0; k <= B->N; ++k) c[k] = g(rng) * std::pow(1.0 + k, -2.0) * std::exp(-decay * k);
  return ZonalFunction(B, c);
}

}  // namespace

TEST_CASE("sample-coefficient round trips") {
  for (int n : {2, 3, 4, 5}) {
    auto B = basis_for(n, 48);
    for (unsigned s = 0; s < 4; ++s) {
      ZonalFunction f = random_function(B, 7 * n + s);
      ZonalFunction g = ZonalFunction::from_samples(B, f.samples());
      for (int k = 0; k <= B->N; ++k)
        CHECK(g.coefficients()[k] ==
              doctest::Approx(f.coefficients()[k]).epsilon(1e-11).scale(1.0));
      for (int i = 0; i < B->M; ++i)
        CHECK(f(B->rule.nodes[i]) == doctest::Approx(f.samples()[i]).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("sphere integral of band-limited data and kinked profiles") {
  for (int n = 2; n <= 8; ++n) {
    auto B = basis_for(n, 64);
    // int (e.u)^2 du = omega_n / n on band-limited data
    ZonalFunction tsq = ZonalFunction::from_profile(B, [](double t) { return t * t; });
    CHECK(sphere_integral(tsq) == doctest::Approx(omega(n) / n).epsilon(1e-12));
    // int |e.u| du = 2 omega_{n-1} / (n-1) via profile integration with a declared kink
    double v = sphere_integral(*B, [](double t) { return std::fabs(t); }, {0.0});
    CHECK(v == doctest::Approx(2.0 * omega(n - 1) / (n - 1)).epsilon(1e-12));
  }
}

TEST_CASE("measure pairing against adaptive oracle") {
  auto B = basis_for(3, 32);
  ZonalFunction dens = ZonalFunction::from_profile(
      *&B, [](double t) { return 1.1 + t * 0.4 + 0.3 * t * t; });
  ZonalMeasure mu = ZonalMeasure::from_density(dens);
  mu.atoms.push_back({0.25, 0.7});
  mu.segments.push_back({-0.5, 0.8, 1, {0.0, 1.0}});  // q(t) = t, weight power m=1

  ZonalFunction f = random_function(B, 42);
  double fast = mu.pair(f);
  // independent route: adaptive profile pairing
  double slow = mu.pair_profile([&](double t) { return f(t); });
  CHECK(fast == doctest::Approx(slow).epsilon(1e-10));
}

TEST_CASE("scaled segments: closed-form moments, pairing routes, round trip") {
  // d mu~ = (1 - (t/c)^2)^{-1/2} dt on (-c, c): mass = pi c, second moment =
  // pi c^3 / 2, odd moments vanish.
  auto B = basis_for(3, 24);
  const double c = 0.61;
  ZonalMeasure mu(B);
  mu.segments.push_back({-c, c, 0, {1.0}, c});
  CHECK(mu.mass() == doctest::Approx(M_PI * c).epsilon(1e-12));
  CHECK(mu.centroid() == doctest::Approx(0.0).scale(1.0).epsilon(1e-13));
  ZonalFunction tsq = ZonalFunction::from_profile(B, [](double t) { return t * t; });
  CHECK(mu.pair(tsq) == doctest::Approx(M_PI * c * c * c / 2.0).epsilon(1e-12));

  for (unsigned s = 0; s < 4; ++s) {
    ZonalFunction f = random_function(B, 300 + s);
    double fast = mu.pair(f);
    CHECK(fast == doctest::Approx(mu.pair_profile([&](double t) { return f(t); }))
                      .epsilon(1e-10)
                      .scale(1.0));
    auto m = mu.multipliers();
    // m_k must agree with pairing the k-th basis element
    CHECK(m[2] == doctest::Approx(mu.pair(ZonalFunction::basis_element(B, 2))).epsilon(1e-12));
    std::string text = mu.serialize();
    ZonalMeasure back = ZonalMeasure::deserialize(text);
    CHECK(back.pair(f) == doctest::Approx(fast).epsilon(1e-13));
    CHECK(back.serialize() == text);
  }
}

TEST_CASE("profile pairing with breakpoints resolves narrow bumps") {
  auto B = basis_for(4, 16);
  const double center = 1.0 / std::sqrt(2.0), eps = 2e-3;
  auto bump = [&](double t) {
    double y = (t - center) / eps;
    return std::fabs(y) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - y * y)) : 0.0;
  };
  ZonalMeasure mu(B);
  mu.segments.push_back({-0.9, 0.9, 1, {2.0, 1.0}});  // q(t) = 2 + t, flat weight
  mu.atoms.push_back({center, 3.0});

  // independent oracle: Simpson on the exact support window
  const int S = 20000;
  double h = 2.0 * eps / S, simpson = 0.0;
  for (int i = 0; i <= S; ++i) {
    double t = center - eps + i * h;
    double w = (i == 0 || i == S) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    simpson += w * bump(t) * (2.0 + t);
  }
  simpson = simpson * h / 3.0 + 3.0 * bump(center);

  double got = mu.pair_profile(bump, {center - eps, center + eps});
  CHECK(got == doctest::Approx(simpson).epsilon(1e-9));
}

TEST_CASE("canonical measures have canonical multipliers") {
  for (int n : {2, 3, 5}) {
    auto B = basis_for(n, 24);
    ZonalMeasure u = ZonalMeasure::uniform_prob(B);
    auto mu = u.multipliers();
    CHECK(mu[0] == doctest::Approx(1.0).epsilon(1e-13));
    for (int k = 1; k <= B->N; ++k) CHECK(mu[k] == doctest::Approx(0.0).scale(1.0).epsilon(1e-13));

    ZonalMeasure d = ZonalMeasure::dirac(B);
    auto md = d.multipliers();
    for (int k = 0; k <= B->N; ++k) CHECK(md[k] == doctest::Approx(1.0).epsilon(1e-14));

    ZonalMeasure ring = ZonalMeasure::ring(B, 0.37, 2.5);
    auto mr = ring.multipliers();
    std::vector<double> p(B->N + 1);
    B->eval_all(0.37, p.data());
    for (int k = 0; k <= B->N; ++k)
      CHECK(mr[k] == doctest::Approx(2.5 * p[k]).epsilon(1e-13).scale(1.0));
  }
}

TEST_CASE("even and odd parts recombine exactly") {
  auto B = basis_for(4, 20);
  ZonalMeasure mu = ZonalMeasure::from_density(random_function(B, 5), true);
  mu.atoms.push_back({0.6, 1.2});
  mu.atoms.push_back({-0.1, 0.4});
  mu.segments.push_back({0.2, 0.9, 2, {0.3, -0.5}});

  ZonalMeasure ev = mu.even_part();
  ZonalMeasure od = mu.odd_part();
  for (unsigned s = 0; s < 12; ++s) {
    ZonalFunction f = random_function(B, 100 + s);
    CHECK(ev.pair(f) + od.pair(f) == doctest::Approx(mu.pair(f)).epsilon(1e-12));
    // an even part pairs to zero against odd test data
    ZonalFunction fo = f.odd_part();
    CHECK(ev.pair(fo) == doctest::Approx(0.0).scale(std::max(1.0, std::fabs(mu.pair(f)))).epsilon(1e-12));
  }
}

TEST_CASE("project_o centers the measure and keeps atoms") {
  auto B = basis_for(3, 16);
  ZonalMeasure mu = ZonalMeasure::from_density(random_function(B, 9), true);
  mu.atoms.push_back({0.8, 2.0});
  ZonalMeasure c = mu.project_o();
  CHECK(c.centroid() == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(c.mass() == doctest::Approx(mu.mass()).epsilon(1e-12));
  REQUIRE(c.atoms.size() == 1);
  CHECK(c.atoms[0].t == 0.8);
  CHECK(c.atoms[0].mass == 2.0);
  ZonalMeasure cc = c.project_o();
  CHECK(cc.centroid() == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("total variation with sign change and frozen values") {
  // atom + tail density mimicking the sigma construction at n=3, beta=1/2:
  // TV = 0.75 + 0.375, mass = 0.375
  auto B = basis_for(3, 16);
  ZonalMeasure mu(B);
  mu.atoms.push_back({0.5, 0.75});
  mu.segments.push_back({0.5, 1.0, 1, {0.0, -1.0}});  // -(n-2) t dt on (1/2, 1)
  CHECK(mu.total_variation() == doctest::Approx(1.125).epsilon(1e-12));
  CHECK(mu.mass() == doctest::Approx(0.375).epsilon(1e-12));

  // overlapping band and segment cancel exactly on [0.2, 0.5]
  ZonalMeasure nu = ZonalMeasure::from_density(ZonalFunction::constant(B, 1.0));
  nu.segments.push_back({0.2, 0.5, 1, {-omega(2)}});
  CHECK(nu.total_variation() == doctest::Approx(1.7 * 2.0 * M_PI).epsilon(1e-10));
}

TEST_CASE("radon decomposition splits signs with disjoint supports") {
  auto B = basis_for(3, 12);
  ZonalFunction t1 = ZonalFunction::basis_element(B, 1);  // density t
  ZonalMeasure mu = ZonalMeasure::from_density(t1, true);
  mu.atoms.push_back({0.3, 1.5});
  mu.atoms.push_back({-0.4, -0.5});
  auto parts = mu.radon_decompose();
  CHECK(parts.pos.mass() == doctest::Approx(M_PI + 1.5).epsilon(1e-10));
  CHECK(parts.neg.mass() == doctest::Approx(M_PI + 0.5).epsilon(1e-10));
  CHECK(parts.pos.total_variation() == doctest::Approx(parts.pos.mass()).epsilon(1e-10));
  for (unsigned s = 0; s < 6; ++s) {
    ZonalFunction f = random_function(B, 300 + s);
    CHECK(parts.pos.pair(f) - parts.neg.pair(f) == doctest::Approx(mu.pair(f)).epsilon(1e-9));
  }
  CHECK(mu.total_variation() ==
        doctest::Approx(parts.pos.mass() + parts.neg.mass()).epsilon(1e-10));
}

TEST_CASE("measure serialization round trip") {
  auto B = basis_for(4, 8);
  ZonalMeasure mu = ZonalMeasure::from_density(random_function(B, 77), true);
  mu.segments.push_back({0.1, 0.9, 2, {0.25, 0.125}});
  mu.atoms.push_back({1.0 / std::sqrt(2.0), 3.75});
  std::string text = mu.serialize();
  ZonalMeasure back = ZonalMeasure::deserialize(text);
  CHECK(back.serialize() == text);
  for (unsigned s = 0; s < 6; ++s) {
    ZonalFunction f = random_function(B, 400 + s);
    CHECK(back.pair(f) == doctest::Approx(mu.pair(f)).epsilon(1e-14));
  }
}

TEST_CASE("density sign validation") {
  auto B = basis_for(3, 8);
  ZonalFunction bad = ZonalFunction::from_profile(B, [](double t) { return t; });
  CHECK_THROWS(ZonalMeasure::from_density(bad));
  CHECK_NOTHROW(ZonalMeasure::from_density(bad, true));
  ZonalFunction ok = ZonalFunction::constant(B, 0.2);
  CHECK_NOTHROW(ZonalMeasure::from_density(ok));
}

TEST_CASE("function norms and refinement") {
  auto B = basis_for(3, 24);
  ZonalFunction f = ZonalFunction::from_profile(B, [](double t) { return 1.0 + 0.5 * t; });
  CHECK(f.sup_norm() == doctest::Approx(1.5).epsilon(1e-12));
  // L1 sphere norm of t on S^2: 2 pi * int |t| dt = 2 pi
  ZonalFunction g = ZonalFunction::basis_element(B, 1);
  CHECK(g.l1_norm_sphere() == doctest::Approx(2.0 * M_PI).epsilon(1e-10));

  auto B2 = basis_for(3, 48);
  ZonalFunction fr = f.refine(B2);
  CHECK(fr.band_limit() == 48);
  for (double t : {-0.7, 0.0, 0.31}) CHECK(fr(t) == doctest::Approx(f(t)).epsilon(1e-13));
}

#include "doctest.h"
#include "zonal/body.hpp"
#include "zonal/cones.hpp"
#include "zonal/harmonic.hpp"
#include "zonal/nnls.hpp"
#include "zonal/quadutil.hpp"
#include "zonal/sphere.hpp"

#include <array>
#include <cmath>
#include <random>
#include <vector>

using namespace zonal;

namespace {

ZonalFunction random_even(BasisPtr B, unsigned seed, double decay = 0.4) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> c(B->N + 1, 0.0);
  for (int k = 0; k <= B->N; k += 2)
    c[k] = g(rng) * std::pow(1.0 + k, -2.0) * std::exp(-decay * k);
  return ZonalFunction(B, c);
}

ZonalFunction random_function(BasisPtr B, unsigned seed, double decay = 0.4) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> c(B->N + 1);
  for (int k = 0; k <= B->N; ++k) c[k] = g(rng) * std::pow(1.0 + k, -2.0) * std::exp(-decay * k);
  return ZonalFunction(B, c);
}

// smooth bump of unit height supported on (center-eps, center+eps)
double bump_profile(double t, double center, double eps) {
  double y = (t - center) / eps;
  return std::fabs(y) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - y * y)) : 0.0;
}

// even pair of bumps at +-center, unit sup norm
double even_bump(double t, double center, double eps) {
  return bump_profile(t, center, eps) + bump_profile(t, -center, eps);
}

}  // namespace

// ---------------------------------------------------------------------------
// nonnegative least squares
// ---------------------------------------------------------------------------

TEST_CASE("nnls agrees with the combinatorial active-set oracle") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int inst = 0; inst < 30; ++inst) {
    const int m = 7, nc = 5;
    Eigen::MatrixXd A(m, nc);
    Eigen::VectorXd b(m);
    for (int i = 0; i < m; ++i) {
      b[i] = u(rng);
      for (int j = 0; j < nc; ++j) A(i, j) = u(rng);
    }
    NnlsResult r = nnls(A, b);
    CHECK(r.converged);
    for (int j = 0; j < nc; ++j) CHECK(r.x[j] >= 0.0);
    // KKT: gradient of 1/2||Ax-b||^2 is nonnegative, zero on the support
    Eigen::VectorXd g = A.transpose() * (A * r.x - b);
    for (int j = 0; j < nc; ++j) {
      CHECK(g[j] >= -1e-10);
      if (r.x[j] > 1e-12) CHECK(std::fabs(g[j]) <= 1e-10);
    }
    // brute force over all supports
    double best = b.norm();
    for (int mask = 1; mask < (1 << nc); ++mask) {
      std::vector<int> idx;
      for (int j = 0; j < nc; ++j)
        if (mask & (1 << j)) idx.push_back(j);
      Eigen::MatrixXd As(m, idx.size());
      for (std::size_t j = 0; j < idx.size(); ++j) As.col(j) = A.col(idx[j]);
      Eigen::VectorXd xs = As.colPivHouseholderQr().solve(b);
      if (xs.minCoeff() < -1e-10) continue;
      best = std::min(best, (As * xs - b).norm());
    }
    CHECK(r.residual == doctest::Approx(best).epsilon(1e-9));
  }
}

TEST_CASE("nnls reproduces an exactly representable target") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::MatrixXd A(12, 6);
  Eigen::VectorXd x0(6);
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 6; ++j) A(i, j) = 2.0 * u(rng) - 1.0;
  for (int j = 0; j < 6; ++j) x0[j] = u(rng);
  Eigen::VectorXd b = A * x0;
  NnlsResult r = nnls(A, b);
  CHECK(r.converged);
  CHECK(r.residual <= 1e-12 * b.norm());
  for (int j = 0; j < 6; ++j) CHECK(r.x[j] == doctest::Approx(x0[j]).epsilon(1e-8));
}

// ---------------------------------------------------------------------------
// tau / sigma generators and total variation
// ---------------------------------------------------------------------------

TEST_CASE("tau and sigma have their closed-form masses and pairings") {
  for (int n : {2, 3, 4, 5}) {
    auto B = basis_for(n, 16);
    ZonalFunction one = ZonalFunction::constant(B, 1.0);
    for (double a : {-0.7, -0.2, 0.0, 0.35, 0.9}) {
      ZonalMeasure tau = tau_alpha(B, a);
      double want = std::pow(1.0 - a * a, (n - 1) / 2.0) / (n - 1);
      CHECK(tau.mass() == doctest::Approx(want).epsilon(1e-12));
      CHECK(tau.pair(one) == doctest::Approx(want).epsilon(1e-12));

      ZonalMeasure sig = sigma_beta(B, a);
      CHECK(sig.mass() == doctest::Approx(want).epsilon(1e-12));
      CHECK(sig.pair(one) > 0.0);
    }
  }
}

TEST_CASE("tv_ratio of sigma equals 2n-3 and tau obeys its signed closed form") {
  for (int n : {3, 4, 5}) {
    auto B = basis_for(n, 8);
    for (double b : clustered_grid(12)) {
      double beta = 0.97 * b;  // in (0,1)
      CHECK(tv_ratio(sigma_beta(B, beta)) == doctest::Approx(2.0 * n - 3.0).epsilon(1e-9));
    }
    // alpha < 0: the tail density xi (1-xi^2)^{(n-3)/2} changes sign at 0, so
    // TV = (2 - (1-a^2)^{(n-1)/2})/(n-1) while the mass keeps its closed form
    for (double a : {-0.3, -0.8}) {
      double p = std::pow(1.0 - a * a, (n - 1) / 2.0);
      CHECK(tv_ratio(tau_alpha(B, a)) == doctest::Approx((2.0 - p) / p).epsilon(1e-9));
    }
    CHECK(tv_ratio(tau_alpha(B, 0.4)) == doctest::Approx(1.0).epsilon(1e-11));
  }
  auto B3 = basis_for(3, 8);
  CHECK_THROWS_AS(tv_ratio(ZonalMeasure::ring(B3, 0.5, -1.0)), std::domain_error);
}

TEST_CASE("centered conic combinations keep bounded tv ratio") {
  auto B = basis_for(3, 12);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (int rep = 0; rep < 20; ++rep) {
    ZonalMeasure mu(B);
    for (int i = 0; i < 4; ++i) {
      double w = u(rng);
      mu = mu + sigma_beta(B, u(rng)).project_o() * w;
      mu = mu + tau_alpha(B, 2.0 * u(rng) - 1.0).project_o() * w;
    }
    double r = tv_ratio(mu);
    CHECK(r >= 1.0 - 1e-12);
    CHECK(r <= 2.0 * 3 - 3.0 + 1e-9);  // extreme ratio among the generators
  }
}

// ---------------------------------------------------------------------------
// positivity functional for generating functions
// ---------------------------------------------------------------------------

TEST_CASE("positivity functional of the constant profile is alpha-linear") {
  // rotation invariance of the subsphere second moment forces the value
  // alpha * omega_{n-1}/(n-1) independently of beta
  for (int n : {3, 4, 5, 6}) {
    auto B = basis_for(n, 8);
    ZonalFunction one = ZonalFunction::constant(B, 1.0);
    for (double a : {0.15, 0.5, 0.92}) {
      for (double b : {0.1, 0.5, 0.99}) {
        CHECK(weil_psi(one, a, b) ==
              doctest::Approx(a * omega(n - 1) / (n - 1)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("positivity functional matches the direct subsphere quadrature in 3d") {
  auto B = basis_for(3, 20);
  for (unsigned s = 0; s < 6; ++s) {
    ZonalFunction rho = random_even(B, 500 + s);
    for (double alpha : {0.3, 0.77}) {
      for (double beta : {0.25, 0.8}) {
        // explicit vectors: e = e3, w at polar distance with |e|w^perp| = alpha
        std::array<double, 3> e{0, 0, 1};
        std::array<double, 3> w{alpha, 0, std::sqrt(1 - alpha * alpha)};
        double edw = e[0] * w[0] + e[1] * w[1] + e[2] * w[2];
        std::array<double, 3> ew{};  // normalized projection of e onto w^perp
        for (int i = 0; i < 3; ++i) ew[i] = (e[i] - edw * w[i]) / alpha;
        std::array<double, 3> v{w[1] * ew[2] - w[2] * ew[1], w[2] * ew[0] - w[0] * ew[2],
                                w[0] * ew[1] - w[1] * ew[0]};
        std::array<double, 3> wt{};
        for (int i = 0; i < 3; ++i) wt[i] = beta * ew[i] + std::sqrt(1 - beta * beta) * v[i];
        const int M = 4096;
        double direct = 0.0;
        for (int i = 0; i < M; ++i) {
          double phi = 2.0 * M_PI * i / M;
          std::array<double, 3> u{};
          for (int k = 0; k < 3; ++k) u[k] = std::cos(phi) * ew[k] + std::sin(phi) * v[k];
          double udw = u[0] * wt[0] + u[1] * wt[1] + u[2] * wt[2];
          double ude = u[0] * e[0] + u[1] * e[1] + u[2] * e[2];
          direct += udw * udw * rho(ude);
        }
        direct *= 2.0 * M_PI / M;
        CHECK(weil_psi(rho, alpha, beta) == doctest::Approx(alpha * direct).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("positivity functional matches the direct subsphere quadrature in 4d") {
  auto B = basis_for(4, 16);
  for (unsigned s = 0; s < 4; ++s) {
    ZonalFunction rho = random_even(B, 700 + s);
    for (double alpha : {0.4, 0.85}) {
      for (double beta : {0.3, 0.7}) {
        std::array<double, 4> ew{-std::sqrt(1 - alpha * alpha), 0, 0, alpha};
        std::array<double, 4> v1{0, 1, 0, 0}, v2{0, 0, 1, 0};
        std::array<double, 4> wt{};
        for (int i = 0; i < 4; ++i) wt[i] = beta * ew[i] + std::sqrt(1 - beta * beta) * v1[i];
        const int M = 256;
        // area element of S^2 in w^perp: du = dx dpsi with u = x ew + sqrt(1-x^2)(...)
        double direct = detail::integrate_weighted(
            [&](double x) {
              double sx = std::sqrt(std::max(0.0, 1.0 - x * x));
              double inner = 0.0;
              for (int i = 0; i < M; ++i) {
                double psi = 2.0 * M_PI * i / M;
                std::array<double, 4> u{};
                for (int k = 0; k < 4; ++k)
                  u[k] = x * ew[k] + sx * (std::cos(psi) * v1[k] + std::sin(psi) * v2[k]);
                double udw = 0.0, ude = u[3];
                for (int k = 0; k < 4; ++k) udw += u[k] * wt[k];
                inner += udw * udw * rho(ude);
              }
              return inner * 2.0 * M_PI / M;
            },
            -1.0, 1.0, 1, 1e-11);
        CHECK(weil_psi(rho, alpha, beta) == doctest::Approx(alpha * direct).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("positivity measure, profile route and function route agree") {
  for (int n : {3, 4, 5}) {
    auto B = basis_for(n, 18);
    ZonalFunction rho = random_even(B, 41 + n);
    for (double alpha : {0.2, 0.66, 0.94}) {
      for (double beta : {0.15, 0.5, 0.88}) {
        double direct = weil_psi(rho, alpha, beta);
        CHECK(weil_measure(B, alpha, beta).pair(rho) ==
              doctest::Approx(direct).epsilon(1e-10).scale(1.0));
        CHECK(weil_psi_profile(n, [&](double t) { return rho(t); }, alpha, beta) ==
              doctest::Approx(direct).epsilon(1e-10).scale(1.0));
      }
    }
  }
}

TEST_CASE("generating functions of smooth symmetric bodies are accepted") {
  for (int n : {3, 4}) {
    auto B = basis_for(n, 16);
    for (unsigned s = 0; s < 3; ++s) {
      BodyRev K = sample_body(B, 30 + s, BodyClass::SmoothSymmetric);
      ZonalFunction rho = inverse_cosine_even(K.h);
      GeneratingCheck chk = is_generating_function(rho, 32, 32);
      CHECK(chk.accepted);
      CHECK(chk.min_value >= -1e-9);

      // a large high-degree even perturbation must be rejected
      double spike = 4.0 * std::max(1.0, rho.sup_norm());
      bool rejected = false;
      for (int trial = 0; trial < 8 && !rejected; ++trial, spike *= 2.0) {
        ZonalFunction bad = rho - ZonalFunction::basis_element(B, 16) * spike;
        GeneratingCheck c2 = is_generating_function(bad, 32, 32);
        rejected = !c2.accepted && c2.min_value < -1e-6;
      }
      CHECK(rejected);
    }
  }
}

// ---------------------------------------------------------------------------
// density criterion for area measures
// ---------------------------------------------------------------------------

TEST_CASE("the ball density passes the area-measure criterion for every order") {
  for (int n : {3, 4, 5}) {
    auto B = basis_for(n, 16);
    ZonalFunction one = ZonalFunction::constant(B, 1.0);
    for (int j = 1; j < n; ++j) {
      FireyReport rep = firey_check(one, j);
      CHECK(rep.accepted());
      CHECK(rep.condition_i);
      CHECK(rep.condition_ii);
      CHECK(rep.condition_iii);
      CHECK(rep.margins[1] > 0.0);
      CHECK(rep.margins[2] > 0.0);
    }
    CHECK_THROWS_AS(firey_check(one, 0), std::invalid_argument);
    CHECK_THROWS_AS(firey_check(one, n), std::invalid_argument);
  }
}

TEST_CASE("sampled body densities are accepted, corrupted ones rejected") {
  for (int n : {3, 4, 5}) {
    auto B = basis_for(n, 14);
    for (unsigned s = 0; s < 4; ++s) {
      BodyRev K = sample_body(B, 60 + s);
      for (int j = 1; j < n; ++j) {
        ZonalFunction sj = area_density(K, j);
        FireyReport rep = firey_check(sj, j);
        CHECK(rep.accepted());
      }
      // corrupt with a negative localized dip until the pointwise domination
      // fails; rejection must come with a negative margin
      ZonalFunction s1 = area_density(K, 1);
      auto Br = s1.basis();
      ZonalFunction dip = ZonalFunction::from_profile(
          Br, [](double t) { return std::exp(-std::pow((t - 0.9) / 0.12, 2.0)); });
      double c = s1.sup_norm();
      bool rejected = false;
      for (int trial = 0; trial < 10 && !rejected; ++trial, c *= 2.0) {
        FireyReport rep = firey_check(s1 - dip * c, 1);
        rejected = !rep.accepted() && rep.margins[2] < 0.0;
      }
      CHECK(rejected);
    }
  }
}

TEST_CASE("cap bound: frozen ball value, invariance, boundedness") {
  auto B = basis_for(3, 12);
  BodyRev ball = ball_body(B, 1.0);
  for (int j : {1, 2}) {
    for (double alpha : {0.3, M_PI / 4, 1.2}) {
      CapBound cb = firey_cap_bound(ball, j, alpha);
      CHECK(cb.lhs == doctest::Approx(2.0 * M_PI * (1.0 - std::cos(alpha))).epsilon(1e-12));
      CHECK(cb.ratio > 0.0);
      CHECK(cb.ratio == doctest::Approx(cb.lhs / cb.rhs_shape).epsilon(1e-15));
    }
  }
  for (int n : {3, 4}) {
    auto Bn = basis_for(n, 12);
    for (unsigned s = 0; s < 3; ++s) {
      BodyRev K = sample_body(Bn, 80 + s);
      BodyRev K2 = scale_body(K, 2.0);
      for (int j = 1; j < n; ++j) {
        for (double alpha : {0.2, 0.8, 1.4}) {
          CapBound a = firey_cap_bound(K, j, alpha);
          CapBound b = firey_cap_bound(K2, j, alpha);
          CHECK(b.ratio == doctest::Approx(a.ratio).epsilon(1e-10));
          CHECK(b.lhs == doctest::Approx(std::pow(2.0, j) * a.lhs).epsilon(1e-10));
        }
      }
    }
  }
  CHECK_THROWS_AS(firey_cap_bound(ball, 1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(firey_cap_bound(ball, 1, M_PI / 2), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// cone membership certificates
// ---------------------------------------------------------------------------

namespace {

std::vector<ZonalMeasure> tau_sigma_generators(BasisPtr B, int m) {
  std::vector<ZonalMeasure> gens;
  for (double x : clustered_grid(m)) {
    double y = 2.0 * x - 1.0;  // clustered grid on (-1,1)
    gens.push_back(tau_alpha(B, y).project_o());
    gens.push_back(sigma_beta(B, y).project_o());
  }
  return gens;
}

}  // namespace

TEST_CASE("cone membership: a generator is a member of its own cone") {
  auto B = basis_for(3, 20);
  std::vector<ZonalMeasure> gens = tau_sigma_generators(B, 24);
  std::vector<TestFunction> tests;
  for (unsigned s = 0; s < 50; ++s)
    tests.push_back(TestFunction::from_function(random_function(B, 900 + s)));
  ConeCertificate cert = cone_membership(gens[13], gens, tests, 1e-8);
  CHECK(cert.status == ConeStatus::member);
  CHECK(cert.residual <= 1e-8);
}

TEST_CASE("cone membership: first-area measures lie in the tau/sigma cone") {
  auto B = basis_for(3, 16);
  std::vector<ZonalMeasure> gens = tau_sigma_generators(B, 40);
  std::vector<TestFunction> tests;
  for (unsigned s = 0; s < 60; ++s)
    tests.push_back(TestFunction::from_function(random_function(B, 1300 + s)));
  for (unsigned s = 0; s < 2; ++s) {
    BodyRev K = sample_body(B, 21 + s);
    ZonalMeasure target = area_measure(K, 1);
    ConeCertificate cert = cone_membership(target, gens, tests, 1e-6);
    CHECK(cert.status == ConeStatus::member);
    bool nonneg = true;
    for (double c : cert.coefficients) nonneg = nonneg && c >= 0.0;
    CHECK(nonneg);
  }
}

TEST_CASE("cone membership: the double-cone area measure is separated") {
  auto B = basis_for(3, 16);
  std::vector<ZonalMeasure> gens;
  for (double a : clustered_grid(12))
    for (double b : clustered_grid(12)) gens.push_back(weil_measure(B, a, b));

  std::vector<TestFunction> tests;
  for (unsigned s = 0; s < 30; ++s)
    tests.push_back(TestFunction::from_function(random_even(B, 2100 + s)));
  const double r = 1.0 / std::sqrt(2.0);
  for (double eps : {3e-2, 1e-2}) {
    tests.push_back(TestFunction::from_profile(
        [=](double t) { return even_bump(t, r, eps); },
        {-r - eps, -r + eps, r - eps, r + eps}));
  }

  ZonalMeasure target = S1_double_cone(B);
  ConeCertificate cert = cone_membership(target, gens, tests, 1e-8);
  CHECK(cert.status == ConeStatus::non_member);
  CHECK(cert.target_pairing < 0.0);
  CHECK(cert.worst_generator_pairing >=
        -1e-7 * std::fabs(cert.target_pairing));
  CHECK(cert.separator.size() == tests.size());
}

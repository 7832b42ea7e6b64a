#include "zonal/cones.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "zonal/nnls.hpp"
#include "zonal/quadutil.hpp"

namespace zonal {

FireyReport firey_check(const ZonalFunction& s, int j) {
  const int n = s.basis()->n;
  if (j < 1 || j >= n) throw std::invalid_argument("firey_check: j must lie in 1..n-1");
  const int N = s.band_limit();
  const double scale = std::max(1.0, s.sup_norm());
  FireyReport rep;

  // (i) band-limited data is a polynomial, hence continuous on (-1,1); the
  // endpoint limits exist whenever the stored values are finite numbers
  bool finite = std::isfinite(s(1.0)) && std::isfinite(s(-1.0));
  for (int k = 0; k <= N && finite; ++k) finite = std::isfinite(s.coefficients()[k]);
  rep.margins[0] = finite ? 0.0 : -std::numeric_limits<double>::infinity();
  rep.condition_i = finite;

  // cumulative tail integral F(t) = int_t^1 xi s(xi) (1-xi^2)^{(n-3)/2} d xi
  // on a theta-uniform grid, each cell integrated by a sized Gauss rule
  const int G = std::max(256, 4 * N + 64);
  std::vector<double> ts(G + 2), F(G + 2, 0.0);
  ts[0] = 1.0;
  ts[G + 1] = -1.0;
  for (int i = 1; i <= G; ++i) ts[i] = std::cos(M_PI * i / (G + 1.0));
  auto xs = [&](double xi) { return xi * s(xi); };
  const int nodes = std::max(12, N / 2 + 6);
  for (int i = 1; i <= G + 1; ++i)
    F[i] = F[i - 1] + detail::integrate_weighted_gl(xs, ts[i], ts[i - 1], n - 2, nodes);

  double min_F = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= G; ++i) min_F = std::min(min_F, F[i]);
  const double end_tol = 1e-9 * scale;
  rep.margins[1] = std::min(min_F, end_tol - std::fabs(F[G + 1]));
  rep.condition_ii = min_F > 0.0 && std::fabs(F[G + 1]) <= end_tol;

  double min_G = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= G; ++i) {
    double w = std::pow(1.0 - ts[i] * ts[i], (n - 1) / 2.0);
    min_G = std::min(min_G, s(ts[i]) * w - (n - 1.0 - j) * F[i]);
  }
  rep.margins[2] = min_G;
  rep.condition_iii = min_G > 0.0;
  return rep;
}

CapBound firey_cap_bound(const BodyRev& K, int j, double alpha) {
  const int n = K.h.basis()->n;
  if (!(alpha > 0.0 && alpha < M_PI / 2))
    throw std::invalid_argument("firey_cap_bound: alpha must lie in (0, pi/2)");
  ZonalFunction sj = area_density(K, j);
  double lhs = omega(n - 1) * detail::integrate_weighted([&](double t) { return sj(t); },
                                                         std::cos(alpha), 1.0, n - 2, 1e-12);
  double rhs = std::pow(std::sin(alpha), n - 1 - j) / std::cos(alpha) *
               std::pow(K.h.sup_norm(), j);
  return {lhs, rhs, lhs / rhs};
}

namespace {

void weil_validate(int n, double alpha, double beta) {
  if (n < 3) throw std::invalid_argument("weil: dimension must be at least 3");
  if (!(alpha > 0.0 && alpha < 1.0 && beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("weil: alpha and beta must lie in (0,1)");
}

// Bracket of the positivity kernel at local coordinate t (the integration
// variable before rescaling by alpha): B(t) = C0 + C2loc t^2 with
//   C0 = omega_{n-2} (1-beta^2)/(n-2),  C2loc = omega_{n-2} (beta^2 - (1-beta^2)/(n-2)).
// These are the exact moments of (. , w~)^2 over the inner (n-3)-sphere; with
// them the functional at rho == 1 is alpha omega_{n-1}/(n-1) for every beta,
// as rotation invariance of the second-moment integral demands.
struct WeilKernel {
  double C0;
  double C2loc;
};

WeilKernel weil_kernel(int n, double beta) {
  double b2 = beta * beta;
  return {omega(n - 2) / (n - 2.0) * (1.0 - b2), omega(n - 2) * (b2 - (1.0 - b2) / (n - 2.0))};
}

}  // namespace

double weil_psi(const ZonalFunction& rho, double alpha, double beta) {
  const int n = rho.basis()->n;
  weil_validate(n, alpha, beta);
  WeilKernel ker = weil_kernel(n, beta);
  auto g = [&](double th) {
    double ct = std::cos(th);
    return rho(alpha * ct) * (ker.C0 + ker.C2loc * ct * ct) * std::pow(std::sin(th), n - 3);
  };
  return alpha * detail::integrate_theta(g, 0.0, M_PI, 1e-13);
}

double weil_psi_profile(int n, const std::function<double(double)>& rho, double alpha,
                        double beta, const std::vector<double>& breakpoints) {
  weil_validate(n, alpha, beta);
  WeilKernel ker = weil_kernel(n, beta);
  auto g = [&](double th) {
    double ct = std::cos(th);
    return rho(alpha * ct) * (ker.C0 + ker.C2loc * ct * ct) * std::pow(std::sin(th), n - 3);
  };
  std::vector<double> cuts{0.0, M_PI};
  for (double b : breakpoints)
    if (b > -alpha && b < alpha) cuts.push_back(std::acos(b / alpha));
  std::sort(cuts.begin(), cuts.end());
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    if (cuts[i + 1] - cuts[i] > 1e-15) acc += detail::integrate_theta(g, cuts[i], cuts[i + 1], 1e-13);
  return alpha * acc;
}

ZonalMeasure weil_measure(BasisPtr basis, double alpha, double beta) {
  const int n = basis->n;
  weil_validate(n, alpha, beta);
  WeilKernel ker = weil_kernel(n, beta);
  double C2 = ker.C2loc / (alpha * alpha);  // bracket in the global variable t
  ZonalMeasure mu(basis);
  // t^2 = ((n-1) P_2(t) + 1)/n converts the bracket to the P basis
  mu.segments.push_back(
      {-alpha, alpha, n - 3, {ker.C0 + C2 / n, 0.0, C2 * (n - 1.0) / n}, alpha});
  return mu;
}

std::vector<double> clustered_grid(int m) {
  std::vector<double> g(m);
  for (int i = 0; i < m; ++i) g[i] = 0.5 * (1.0 - std::cos(M_PI * (i + 0.5) / m));
  return g;
}

GeneratingCheck is_generating_function(const ZonalFunction& rho, int grid_alpha,
                                       int grid_beta) {
  GeneratingCheck out;
  out.min_value = std::numeric_limits<double>::infinity();
  for (double a : clustered_grid(grid_alpha)) {
    for (double b : clustered_grid(grid_beta)) {
      double v = weil_psi(rho, a, b);
      if (v < out.min_value) {
        out.min_value = v;
        out.arg_alpha = a;
        out.arg_beta = b;
      }
    }
  }
  out.accepted = out.min_value >= -1e-9;
  return out;
}

ZonalMeasure tau_alpha(BasisPtr basis, double alpha) {
  if (!(alpha > -1.0 && alpha < 1.0))
    throw std::invalid_argument("tau_alpha: alpha must lie in (-1,1)");
  ZonalMeasure mu(basis);
  mu.segments.push_back({alpha, 1.0, basis->n - 2, {0.0, 1.0}});
  return mu;
}

ZonalMeasure sigma_beta(BasisPtr basis, double beta) {
  if (!(beta > -1.0 && beta < 1.0))
    throw std::invalid_argument("sigma_beta: beta must lie in (-1,1)");
  const int n = basis->n;
  ZonalMeasure mu(basis);
  mu.atoms.push_back({beta, std::pow(1.0 - beta * beta, (n - 1) / 2.0)});
  if (n > 2) mu.segments.push_back({beta, 1.0, n - 2, {0.0, -(n - 2.0)}});
  return mu;
}

double tv_ratio(const ZonalMeasure& mu) {
  double m = mu.mass();
  if (!(m > 0.0)) throw std::domain_error("tv_ratio: total mass must be positive");
  return mu.total_variation() / m;
}

TestFunction TestFunction::from_function(const ZonalFunction& f) {
  TestFunction tf;
  tf.band = f;
  tf.profile = [f](double t) { return f(t); };
  return tf;
}

TestFunction TestFunction::from_profile(std::function<double(double)> p,
                                        std::vector<double> breakpoints) {
  TestFunction tf;
  tf.profile = std::move(p);
  tf.breakpoints = std::move(breakpoints);
  return tf;
}

double pair_test(const ZonalMeasure& mu, const TestFunction& tf) {
  if (tf.band) return mu.pair(*tf.band);
  return mu.pair_profile(tf.profile, tf.breakpoints);
}

ConeCertificate cone_membership(const ZonalMeasure& target,
                                const std::vector<ZonalMeasure>& generators,
                                const std::vector<TestFunction>& tests, double tol) {
  ConeCertificate cert;
  const int T = int(tests.size());
  const int G = int(generators.size());
  if (T == 0 || G == 0) {
    cert.detail = "empty pairing problem";
    return cert;
  }

  Eigen::MatrixXd A(T, G);
  Eigen::VectorXd b(T);
  for (int t = 0; t < T; ++t) {
    b[t] = pair_test(target, tests[t]);
    for (int i = 0; i < G; ++i) A(t, i) = pair_test(generators[i], tests[t]);
  }

  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    cert.status = ConeStatus::member;
    cert.coefficients.assign(G, 0.0);
    cert.detail = "target pairs to zero on every test function";
    return cert;
  }

  NnlsResult fit = nnls(A, b);
  cert.residual = fit.residual / bnorm;
  if (!fit.converged) {
    cert.detail = "least-squares iteration did not converge";
    return cert;
  }

  if (cert.residual <= tol) {
    // candidate member: re-verify the reconstruction on fresh test functions
    cert.coefficients.assign(fit.x.data(), fit.x.data() + G);
    std::mt19937_64 rng(0x5eedc0de);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto B = target.basis;
    double worst = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
      std::vector<double> c(B->N + 1);
      for (int k = 0; k <= B->N; ++k)
        c[k] = gauss(rng) * std::pow(1.0 + k, -2.0) * std::exp(-0.3 * k);
      ZonalFunction f(B, c);
      f = f * (1.0 / std::max(1e-12, f.sup_norm()));
      double lhs = 0.0;
      for (int i = 0; i < G; ++i)
        if (fit.x[i] != 0.0) lhs += fit.x[i] * generators[i].pair(f);
      double rhs = target.pair(f);
      double err = std::fabs(lhs - rhs) / std::max(1.0, std::fabs(rhs));
      worst = std::max(worst, err);
    }
    std::ostringstream os;
    os << "fresh re-pairing worst relative error " << worst;
    cert.detail = os.str();
    if (worst <= 1e-6) {
      cert.status = ConeStatus::member;
    } else {
      cert.status = ConeStatus::inconclusive;
      cert.detail += " exceeds 1e-6";
    }
    return cert;
  }

  if (cert.residual < 50.0 * tol) {
    cert.detail = "residual in the numerical duality-gap band";
    return cert;
  }

  // candidate non-member: the residual direction separates by optimality
  Eigen::VectorXd res = A * fit.x - b;
  Eigen::VectorXd gen_pair = A.transpose() * res;
  cert.separator.assign(res.data(), res.data() + T);
  cert.target_pairing = b.dot(res);
  cert.worst_generator_pairing = gen_pair.minCoeff();

  // direct re-verification by quadrature: the combined separator profile is
  // re-paired against the target and the most binding generators
  std::vector<double> all_bp;
  for (const auto& tf : tests)
    all_bp.insert(all_bp.end(), tf.breakpoints.begin(), tf.breakpoints.end());
  auto sep = [&](double t) {
    double v = 0.0;
    for (int i = 0; i < T; ++i) v += res[i] * tests[i].profile(t);
    return v;
  };
  double tgt_direct = target.pair_profile(sep, all_bp);

  std::vector<int> order(G);
  for (int i = 0; i < G; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return gen_pair[x] < gen_pair[y]; });
  const double sep_scale =
      std::max(std::fabs(cert.target_pairing), gen_pair.cwiseAbs().maxCoeff());
  double worst_direct = 0.0;
  for (int k = 0; k < std::min(G, 8); ++k)
    worst_direct = std::min(worst_direct, generators[order[k]].pair_profile(sep, all_bp));

  bool ok = cert.target_pairing < 0.0 && tgt_direct < 0.0 &&
            std::fabs(tgt_direct - cert.target_pairing) <=
                1e-6 * std::max(1.0, std::fabs(cert.target_pairing)) &&
            cert.worst_generator_pairing >= -1e-7 * sep_scale &&
            worst_direct >= -1e-7 * sep_scale;
  std::ostringstream os;
  os << "separator: target pairing " << cert.target_pairing << " (direct " << tgt_direct
     << "), worst generator pairing " << cert.worst_generator_pairing << " (direct "
     << worst_direct << ")";
  cert.detail = os.str();
  if (ok) {
    cert.status = ConeStatus::non_member;
  } else {
    cert.status = ConeStatus::inconclusive;
    cert.detail += "; separator verification failed";
  }
  return cert;
}

}  // namespace zonal

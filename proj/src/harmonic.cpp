#include "zonal/harmonic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

#include "zonal/quadutil.hpp"

namespace zonal {

std::vector<double> multiplier_of(const ZonalMeasure& mu) { return mu.multipliers(); }

ZonalFunction apply_multipliers(const ZonalFunction& g, const std::vector<double>& m) {
  const auto B = g.basis();
  std::vector<double> c = g.coefficients();
  const int K = std::min(int(m.size()) - 1, B->N);
  for (int k = 0; k <= K; ++k) c[k] *= m[k];
  for (int k = K + 1; k <= B->N; ++k) c[k] = 0.0;
  return ZonalFunction(B, c);
}

ZonalFunction convolve(const ZonalMeasure& mu, const ZonalFunction& g) {
  if (mu.basis->n != g.basis()->n) throw std::invalid_argument("convolve: dimension mismatch");
  return apply_multipliers(g, mu.multipliers());
}

ZonalFunction convolve(const ZonalFunction& f, const ZonalFunction& g) {
  if (f.basis()->n != g.basis()->n) throw std::invalid_argument("convolve: dimension mismatch");
  const auto B = g.basis();
  std::vector<double> c = g.coefficients();
  const int K = std::min(f.basis()->N, B->N);
  for (int k = 0; k <= K; ++k) c[k] *= f.coefficients()[k] * f.basis()->nu[k];
  for (int k = K + 1; k <= B->N; ++k) c[k] = 0.0;
  return ZonalFunction(B, c);
}

ZonalMeasure convolve_measures(const ZonalMeasure& mu, const ZonalMeasure& nu) {
  if (mu.basis->n != nu.basis->n)
    throw std::invalid_argument("convolve_measures: dimension mismatch");
  const auto B = mu.basis->N >= nu.basis->N ? mu.basis : nu.basis;
  std::vector<double> mm = mu.multipliers(), nm = nu.multipliers();
  std::vector<double> c(B->N + 1, 0.0);
  const int K = std::min(int(mm.size()), int(nm.size())) - 1;
  for (int k = 0; k <= std::min(K, B->N); ++k) c[k] = mm[k] * nm[k] / B->nu[k];
  return ZonalMeasure::from_density(ZonalFunction(B, c), true);
}

std::vector<double> cosine_multipliers(const Basis& basis) {
  // the multipliers depend only on (n, N); cache them across calls, since
  // inversion-heavy experiments request the same sequence thousands of times
  static std::mutex cache_mutex;
  static std::map<std::pair<int, int>, std::vector<double>> cache;
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find({basis.n, basis.N});
    if (it != cache.end()) return it->second;
  }
  // one Gauss-Legendre sweep per smooth half of |t|, all degrees at once
  std::vector<double> m(basis.N + 1, 0.0);
  std::vector<double> p(basis.N + 1);
  QuadratureRule rule = gauss_legendre_rule(basis.N + 64);
  for (int half = 0; half < 2; ++half) {
    double lo = half == 0 ? 0.0 : 0.5 * M_PI;
    double mid = lo + 0.25 * M_PI, scale = 0.25 * M_PI;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      double th = mid + scale * rule.nodes[i];
      double t = std::cos(th);
      basis.eval_all(t, p.data());
      double w = scale * rule.weights[i] * std::fabs(t) *
                 std::pow(std::sin(th), basis.n - 2);
      for (int k = 0; k <= basis.N; ++k) m[k] += w * p[k];
    }
  }
  // profile coefficient of |t| times nu_k
  for (int k = 0; k <= basis.N; ++k) m[k] *= basis.omega_nm1;
  std::lock_guard<std::mutex> lock(cache_mutex);
  return cache.emplace(std::make_pair(basis.n, basis.N), std::move(m))
      .first->second;
}

ZonalFunction cosine_transform(const ZonalFunction& f) {
  return apply_multipliers(f, cosine_multipliers(*f.basis()));
}

ZonalFunction inverse_cosine_even(const ZonalFunction& f, double odd_tol) {
  const auto B = f.basis();
  double scale = std::max(1.0, f.sup_norm());
  for (int k = 1; k <= B->N; k += 2)
    if (std::fabs(f.coefficients()[k]) > odd_tol * scale)
      throw std::domain_error("inverse_cosine_even: input carries odd content");
  std::vector<double> m = cosine_multipliers(*B);
  std::vector<double> c(B->N + 1, 0.0);
  for (int k = 0; k <= B->N; k += 2) c[k] = f.coefficients()[k] / m[k];
  return ZonalFunction(B, c);
}

double box_multiplier(int n, int k) {
  return (1.0 - k) * (k + n - 1.0) / (n - 1.0);
}

ZonalFunction box_n(const ZonalFunction& f) {
  const auto B = f.basis();
  std::vector<double> c = f.coefficients();
  for (int k = 0; k <= B->N; ++k) c[k] *= box_multiplier(B->n, k);
  return ZonalFunction(B, c);
}

ZonalFunction box_n_nodal(const ZonalFunction& f) {
  const auto B = f.basis();
  const int n = B->n;
  return ZonalFunction::from_profile(B, [&](double t) {
    return ((1.0 - t * t) * f.deriv2(t) - (n - 1.0) * t * f.deriv(t) + (n - 1.0) * f(t)) /
           (n - 1.0);
  });
}

ZonalFunction berg_function(BasisPtr basis) {
  std::vector<double> c(basis->N + 1, 0.0);
  for (int k = 0; k <= basis->N; ++k) {
    if (k == 1) continue;
    c[k] = 1.0 / (box_multiplier(basis->n, k) * basis->nu[k]);
  }
  return ZonalFunction(basis, c);
}

ZonalFunction berg_apply(const ZonalFunction& s) {
  return convolve(berg_function(s.basis()), s);
}

}  // namespace zonal

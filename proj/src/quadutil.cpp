#include "zonal/quadutil.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <stdexcept>

#include "zonal/sphere.hpp"

namespace zonal::detail {

namespace {

double clamp_unit(double t) { return t < -1.0 ? -1.0 : (t > 1.0 ? 1.0 : t); }

}  // namespace

double integrate_weighted(const std::function<double(double)>& F, double a, double b, int m,
                          double tol) {
  if (b <= a) return 0.0;
  double th_hi = std::acos(clamp_unit(a));
  double th_lo = std::acos(clamp_unit(b));
  auto g = [&](double th) {
    double s = std::sin(th);
    return F(std::cos(th)) * std::pow(s, m);
  };
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, th_lo, th_hi, 14, tol);
}

double integrate_weighted_gl(const std::function<double(double)>& F, double a, double b, int m,
                             int nodes) {
  if (b <= a) return 0.0;
  double th_hi = std::acos(clamp_unit(a));
  double th_lo = std::acos(clamp_unit(b));
  static thread_local int cached_n = -1;
  static thread_local QuadratureRule cached;
  if (cached_n != nodes) {
    cached = gauss_legendre_rule(nodes);
    cached_n = nodes;
  }
  double mid = 0.5 * (th_lo + th_hi);
  double half = 0.5 * (th_hi - th_lo);
  double acc = 0.0;
  for (int i = 0; i < nodes; ++i) {
    double th = mid + half * cached.nodes[i];
    double s = std::sin(th);
    acc += cached.weights[i] * F(std::cos(th)) * std::pow(s, m);
  }
  return acc * half;
}

double integrate_theta(const std::function<double(double)>& G, double th_lo, double th_hi,
                       double tol) {
  if (th_hi <= th_lo) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(G, th_lo, th_hi, 14, tol);
}

double bisect(const std::function<double(double)>& g, double lo, double hi, double tol) {
  double flo = g(lo);
  double fhi = g(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0) == (fhi > 0)) throw std::invalid_argument("bisect: endpoints do not bracket a root");
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    double fm = g(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace zonal::detail

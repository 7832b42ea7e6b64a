#include "zonal/valuation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "zonal/harmonic.hpp"
#include "zonal/quadutil.hpp"

namespace zonal {

namespace {

double binom_int(int n, int k) {
  double v = 1.0;
  for (int i = 1; i <= k; ++i) v *= double(n - k + i) / double(i);
  return v;
}

void require_even(const ZonalFunction& f, const char* what) {
  const double scale = std::max(1.0, f.sup_norm());
  for (int k = 1; k <= f.basis()->N; k += 2)
    if (std::fabs(f.coefficients()[k]) > 1e-9 * scale)
      throw std::invalid_argument(std::string("psi_zonal: ") + what +
                                  " carries odd content");
}

}  // namespace

HomValuation valuation_of_endomorphism(const Endomorphism& phi) {
  ZonalFunction nu = convolve(phi.measure(), berg_function(phi.basis()));
  return HomValuation{1, ZonalMeasure::from_density(nu, true)};
}

ValuationOutput apply_valuation(const HomValuation& V, const BodyRev& K) {
  const auto B = K.h.basis();
  if (V.f.basis->n != B->n)
    throw std::invalid_argument("apply_valuation: dimension mismatch");
  if (V.j < 1 || V.j >= B->n)
    throw std::invalid_argument("apply_valuation: degree out of range");
  ZonalMeasure sj = area_measure(K, V.j);
  const ZonalMeasure& fr =
      V.f.basis->N == sj.basis->N ? V.f : rebase_measure(V.f, sj.basis);
  ZonalFunction h = convolve_measures(sj, fr).density;
  return {h, is_support_function(h, false).margin};
}

ZonalFunction derivation_lambda(const HomValuation& V, const BodyRev& K,
                                const std::vector<double>& steps, int power) {
  const auto B = K.h.basis();
  if (power < 1) throw std::invalid_argument("derivation_lambda: power < 1");
  if (steps.empty())
    throw std::invalid_argument("derivation_lambda: no steps given");
  for (double s : steps)
    if (!(s > 1e-5))
      throw std::domain_error("derivation_lambda: step underflow");
  const int m = power;
  double hmax = *std::max_element(steps.begin(), steps.end());
  if (K.margin <= 0.5 * m * hmax)
    throw std::domain_error(
        "derivation_lambda: step exceeds the curvature margin");

  auto parallel_body = [&](double t) {
    return BodyRev{K.h + ZonalFunction::constant(B, t), K.smooth,
                   K.margin + t};
  };

  // order-m central stencil at each step, then polynomial extrapolation in
  // the squared step (the even error expansion of symmetric stencils)
  std::vector<std::vector<double>> tab;
  std::vector<double> x;
  for (double h : steps) {
    std::vector<double> fd;
    for (int i = 0; i <= m; ++i) {
      double off = (0.5 * m - i) * h;
      ZonalFunction val = apply_valuation(V, parallel_body(off)).h;
      double w = binom_int(m, i) * (i % 2 ? -1.0 : 1.0) / std::pow(h, m);
      if (fd.empty()) fd.assign(val.coefficients().size(), 0.0);
      for (std::size_t c = 0; c < fd.size(); ++c)
        fd[c] += w * val.coefficients()[c];
    }
    tab.push_back(std::move(fd));
    x.push_back(h * h);
  }
  const int s = int(tab.size());
  for (int k = 1; k < s; ++k)
    for (int i = 0; i + k < s; ++i)
      for (std::size_t c = 0; c < tab[i].size(); ++c)
        tab[i][c] = (x[i] * tab[i + 1][c] - x[i + k] * tab[i][c]) /
                    (x[i] - x[i + k]);
  auto Bj = basis_for(B->n, int(tab[0].size()) - 1);
  return ZonalFunction(Bj, tab[0]);
}

PsiResult psi_zonal(const BodyRev& K, const BodyRev& L,
                    const ZonalFunction& g) {
  require_even(K.h, "the first body");
  require_even(L.h, "the second body");
  require_even(g, "the kernel");
  ZonalFunction w = convolve(K.h, convolve(L.h, g));
  ZonalFunction psi = inverse_cosine_even(w, 1e-8);
  const int N = psi.basis()->N;
  double margin = is_support_function(psi, false).margin;
  double tail = 0.0, total = 0.0;
  for (int k = 0; k <= N; ++k) {
    double a = std::fabs(psi.coefficients()[k]);
    total += a;
    if (k > N - std::max(1, N / 8)) tail += a;
  }
  const double scale = std::max(psi.sup_norm(), 1e-12);
  bool inconclusive = tail > 0.25 * total ||
                      tail > 0.5 * std::max(std::fabs(margin), 1e-6 * scale);
  std::ostringstream os;
  os << "margin " << margin << ", top-band l1 " << tail << ", sup " << scale;
  return {psi, margin, inconclusive, tail, os.str()};
}

ZonalFunction decomposition_kernel(BasisPtr basis, double eps) {
  if (!(eps > 0.0) || !(eps < 1.0))
    throw std::invalid_argument("decomposition_kernel: eps outside (0,1)");
  const int n = basis->n;
  double side = basis->omega_nm1 *
                detail::integrate_weighted(
                    [&](double t) {
                      double u = (t - (1.0 - eps)) / eps;
                      return u * u * u * u;
                    },
                    1.0 - eps, 1.0, n - 2, 1e-13);
  const double c = 0.5 / side;
  // coefficient integrals restricted to the support [1-eps, 1]: a fixed-node
  // projection would smear the kink at 1-eps into the normalization.  One
  // Gauss-Legendre sweep in the polar angle covers every degree at once.
  std::vector<double> coef(basis->N + 1, 0.0);
  std::vector<double> p(basis->N + 1);
  QuadratureRule rule = gauss_legendre_rule(basis->N + 64);
  const double th_hi = std::acos(1.0 - eps);
  const double mid = 0.5 * th_hi, scale = 0.5 * th_hi;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    double th = mid + scale * rule.nodes[i];
    double t = std::cos(th);
    double u = (t - (1.0 - eps)) / eps;
    basis->eval_all(t, p.data());
    double w = scale * rule.weights[i] * c * u * u * u * u *
               std::pow(std::sin(th), n - 2);
    for (int k = 0; k <= basis->N; k += 2) coef[k] += w * p[k];
  }
  for (int k = 0; k <= basis->N; k += 2)
    coef[k] *= 2.0 * basis->omega_nm1 / basis->nu[k];
  return ZonalFunction(basis, coef);
}

DecompositionReport decomposition_experiment(
    BasisPtr basis, const std::vector<double>& eps_grid,
    const std::vector<BodyRev>& suite, double margin_threshold) {
  DecompositionReport rep{{}, std::numeric_limits<double>::quiet_NaN(), false};
  auto fine = basis_for(basis->n, 2 * basis->N);
  const BodyRev ball = ball_body(basis);
  const BodyRev ball_fine = ball_body(fine);
  const int S = int(suite.size());

  for (double eps : eps_grid) {
    ZonalFunction g = decomposition_kernel(basis, eps);
    ZonalFunction gf = decomposition_kernel(fine, eps);
    DecompositionEntry entry{eps, false, 0.0, 0,
                             DecompositionWitness{eps, -1, -1, 0.0, 0.0}};
    double minm = std::numeric_limits<double>::infinity();
    for (int i = 0; i < S; ++i) {
      for (int l = i; l <= S; ++l) {  // l == S plays the unit ball as L
        const BodyRev& L = l < S ? suite[l] : ball;
        PsiResult r = psi_zonal(suite[i], L, g);
        if (r.inconclusive) {
          ++entry.inconclusive_pairs;
          continue;
        }
        minm = std::min(minm, r.margin);
        if (r.margin >= margin_threshold) continue;
        BodyRev Kf{suite[i].h.refine(fine), suite[i].smooth, suite[i].margin};
        BodyRev Lf = l < S ? BodyRev{L.h.refine(fine), L.smooth, L.margin}
                           : ball_fine;
        PsiResult rf = psi_zonal(Kf, Lf, gf);
        if (rf.inconclusive || rf.margin >= margin_threshold) continue;
        if (l == S) {
          rep.ball_ever_witness = true;
          continue;
        }
        if (!entry.witness_found || r.margin < entry.best.margin)
          entry.best = DecompositionWitness{eps, i, l, r.margin, rf.margin};
        entry.witness_found = true;
      }
    }
    entry.min_margin = std::isfinite(minm) ? minm : 0.0;
    rep.entries.push_back(entry);
  }
  for (const auto& e : rep.entries)
    if (e.witness_found &&
        (std::isnan(rep.eps_threshold) || e.eps > rep.eps_threshold))
      rep.eps_threshold = e.eps;
  return rep;
}

}  // namespace zonal

#include "zonal/zonal_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "zonal/quadutil.hpp"

namespace zonal {

ZonalFunction::ZonalFunction(BasisPtr basis, std::vector<double> coeffs)
    : basis_(std::move(basis)), coeffs_(std::move(coeffs)) {
  if (!basis_) throw std::invalid_argument("ZonalFunction: null basis");
  if (int(coeffs_.size()) > basis_->N + 1)
    throw std::invalid_argument("ZonalFunction: more coefficients than the band limit allows");
  coeffs_.resize(basis_->N + 1, 0.0);
  samples_.assign(basis_->M, 0.0);
  for (int k = 0; k <= basis_->N; ++k) {
    double c = coeffs_[k];
    if (c == 0.0) continue;
    for (int i = 0; i < basis_->M; ++i) samples_[i] += c * basis_->p(k, i);
  }
}

ZonalFunction ZonalFunction::from_samples(BasisPtr basis, const std::vector<double>& nodal) {
  if (!basis) throw std::invalid_argument("ZonalFunction: null basis");
  if (int(nodal.size()) != basis->M)
    throw std::invalid_argument("ZonalFunction: sample count must match the rule nodes");
  std::vector<double> c(basis->N + 1, 0.0);
  for (int k = 0; k <= basis->N; ++k) {
    double s = 0.0;
    for (int i = 0; i < basis->M; ++i) s += basis->rule.weights[i] * nodal[i] * basis->p(k, i);
    c[k] = s / basis->norm[k];
  }
  return ZonalFunction(std::move(basis), std::move(c));
}

ZonalFunction ZonalFunction::from_profile(BasisPtr basis, const std::function<double(double)>& f) {
  if (!basis) throw std::invalid_argument("ZonalFunction: null basis");
  std::vector<double> s(basis->M);
  for (int i = 0; i < basis->M; ++i) s[i] = f(basis->rule.nodes[i]);
  return from_samples(std::move(basis), s);
}

ZonalFunction ZonalFunction::constant(BasisPtr basis, double c) {
  std::vector<double> v{c};
  return ZonalFunction(std::move(basis), std::move(v));
}

ZonalFunction ZonalFunction::basis_element(BasisPtr basis, int k) {
  if (!basis || k < 0 || k > basis->N)
    throw std::invalid_argument("ZonalFunction: basis element out of range");
  std::vector<double> v(k + 1, 0.0);
  v[k] = 1.0;
  return ZonalFunction(std::move(basis), std::move(v));
}

double ZonalFunction::operator()(double t) const {
  std::vector<double> p(basis_->N + 1);
  basis_->eval_all(t, p.data());
  double s = 0.0;
  for (int k = 0; k <= basis_->N; ++k) s += coeffs_[k] * p[k];
  return s;
}

double ZonalFunction::deriv(double t) const {
  std::vector<double> p(basis_->N + 1), pd(basis_->N + 1);
  basis_->eval_all(t, p.data(), pd.data());
  double s = 0.0;
  for (int k = 1; k <= basis_->N; ++k) s += coeffs_[k] * pd[k];
  return s;
}

double ZonalFunction::deriv2(double t) const {
  std::vector<double> p(basis_->N + 1), pd(basis_->N + 1), pdd(basis_->N + 1);
  basis_->eval_all(t, p.data(), pd.data(), pdd.data());
  double s = 0.0;
  for (int k = 2; k <= basis_->N; ++k) s += coeffs_[k] * pdd[k];
  return s;
}

ZonalFunction ZonalFunction::refine(BasisPtr finer) const {
  if (!finer || finer->n != basis_->n)
    throw std::invalid_argument("refine: dimension mismatch");
  if (finer->N < basis_->N) throw std::invalid_argument("refine: band limit must not shrink");
  return ZonalFunction(std::move(finer), coeffs_);
}

ZonalFunction ZonalFunction::operator+(const ZonalFunction& o) const {
  if (basis_.get() != o.basis_.get()) throw std::invalid_argument("ZonalFunction: basis mismatch");
  std::vector<double> c(coeffs_);
  for (std::size_t k = 0; k < c.size(); ++k) c[k] += o.coeffs_[k];
  return ZonalFunction(basis_, std::move(c));
}

ZonalFunction ZonalFunction::operator-(const ZonalFunction& o) const {
  if (basis_.get() != o.basis_.get()) throw std::invalid_argument("ZonalFunction: basis mismatch");
  std::vector<double> c(coeffs_);
  for (std::size_t k = 0; k < c.size(); ++k) c[k] -= o.coeffs_[k];
  return ZonalFunction(basis_, std::move(c));
}

ZonalFunction ZonalFunction::operator*(double s) const {
  std::vector<double> c(coeffs_);
  for (double& x : c) x *= s;
  return ZonalFunction(basis_, std::move(c));
}

ZonalFunction ZonalFunction::even_part() const {
  std::vector<double> c(coeffs_);
  for (std::size_t k = 1; k < c.size(); k += 2) c[k] = 0.0;
  return ZonalFunction(basis_, std::move(c));
}

ZonalFunction ZonalFunction::odd_part() const {
  std::vector<double> c(coeffs_);
  for (std::size_t k = 0; k < c.size(); k += 2) c[k] = 0.0;
  return ZonalFunction(basis_, std::move(c));
}

double ZonalFunction::integral_sphere() const { return coeffs_[0] * basis_->nu[0]; }

double ZonalFunction::sup_norm() const {
  double m = std::max(std::fabs((*this)(1.0)), std::fabs((*this)(-1.0)));
  for (double s : samples_) m = std::max(m, std::fabs(s));
  return m;
}

double ZonalFunction::min_value() const {
  double m = std::min((*this)(1.0), (*this)(-1.0));
  for (double s : samples_) m = std::min(m, s);
  return m;
}

double ZonalFunction::l1_norm_sphere() const {
  // locate sign changes between nodes, then integrate |f| piecewise
  const auto& nodes = basis_->rule.nodes;
  std::vector<double> cuts{-1.0};
  double prev_t = -1.0;
  double prev_v = (*this)(-1.0);
  auto self = [&](double t) { return (*this)(t); };
  auto scan = [&](double t, double v) {
    if (v == 0.0) {
      // the node itself is a root: cut there, keep the last signed value
      if (t > -1.0 && t < 1.0) cuts.push_back(t);
      prev_t = t;
      return;
    }
    if (prev_v != 0.0 && (prev_v > 0) != (v > 0))
      cuts.push_back(detail::bisect(self, prev_t, t, 1e-13));
    prev_t = t;
    prev_v = v;
  };
  for (int i = 0; i < basis_->M; ++i) scan(nodes[i], samples_[i]);
  scan(1.0, (*this)(1.0));
  cuts.push_back(1.0);
  std::sort(cuts.begin(), cuts.end());

  double acc = 0.0;
  for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
    double v = detail::integrate_weighted(self, cuts[j], cuts[j + 1], basis_->n - 2, 1e-13);
    acc += std::fabs(v);
  }
  return basis_->omega_nm1 * acc;
}

double sphere_integral(const ZonalFunction& f) { return f.integral_sphere(); }

double sphere_integral(const Basis& basis, const std::function<double(double)>& profile,
                       const std::vector<double>& breakpoints) {
  std::vector<double> cuts{-1.0};
  for (double b : breakpoints)
    if (b > -1.0 && b < 1.0) cuts.push_back(b);
  cuts.push_back(1.0);
  std::sort(cuts.begin(), cuts.end());
  double acc = 0.0;
  for (std::size_t j = 0; j + 1 < cuts.size(); ++j)
    acc += detail::integrate_weighted(profile, cuts[j], cuts[j + 1], basis.n - 2, 1e-13);
  return basis.omega_nm1 * acc;
}

double l2_pairing(const ZonalFunction& f, const ZonalFunction& g) {
  if (f.basis().get() != g.basis().get()) throw std::invalid_argument("l2_pairing: basis mismatch");
  const Basis& B = *f.basis();
  double s = 0.0;
  for (int k = 0; k <= B.N; ++k) s += f.coefficients()[k] * g.coefficients()[k] * B.nu[k];
  return s;
}

}  // namespace zonal

#pragma once

#include <functional>
#include <vector>

#include "zonal/sphere.hpp"

namespace zonal {

// Band-limited zonal function on S^{n-1}, stored as coefficients in the
// P_k basis together with samples at the quadrature nodes. Both views are
// kept in sync at construction; instances are immutable.
class ZonalFunction {
 public:
  ZonalFunction(BasisPtr basis, std::vector<double> coeffs);

  static ZonalFunction from_samples(BasisPtr basis, const std::vector<double>& nodal);
  // Projection by quadrature at the rule nodes; exact for band-limited input.
  static ZonalFunction from_profile(BasisPtr basis, const std::function<double(double)>& f);
  static ZonalFunction constant(BasisPtr basis, double c);
  static ZonalFunction basis_element(BasisPtr basis, int k);

  const std::vector<double>& coefficients() const { return coeffs_; }
  const std::vector<double>& samples() const { return samples_; }
  BasisPtr basis() const { return basis_; }
  int dim() const { return basis_->n; }
  int band_limit() const { return basis_->N; }

  double operator()(double t) const;
  double deriv(double t) const;
  double deriv2(double t) const;

  // Same function viewed at a finer band limit of the same dimension.
  ZonalFunction refine(BasisPtr finer) const;

  ZonalFunction operator+(const ZonalFunction& o) const;
  ZonalFunction operator-(const ZonalFunction& o) const;
  ZonalFunction operator*(double s) const;
  ZonalFunction even_part() const;
  ZonalFunction odd_part() const;

  double integral_sphere() const;  // int_{S^{n-1}} f du
  double sup_norm() const;         // max |f| over nodes and endpoints
  double l1_norm_sphere() const;   // int |f| du, zeros located by bisection
  double min_value() const;        // min f over nodes and endpoints

 private:
  BasisPtr basis_;
  std::vector<double> coeffs_;
  std::vector<double> samples_;
};

inline ZonalFunction operator*(double s, const ZonalFunction& f) { return f * s; }

// int f du for band-limited f (exact: omega_n-weighted mean coefficient).
double sphere_integral(const ZonalFunction& f);

// int f du for a general zonal profile; optional interior breakpoints split the
// integration at known kinks so non-smooth integrands still reach ~1e-12.
double sphere_integral(const Basis& basis, const std::function<double(double)>& profile,
                       const std::vector<double>& breakpoints = {});

// L2 pairing int f g du of two band-limited functions (exact).
double l2_pairing(const ZonalFunction& f, const ZonalFunction& g);

}  // namespace zonal

#pragma once

#include <vector>

#include "zonal/sphere.hpp"
#include "zonal/zonal_function.hpp"
#include "zonal/zonal_measure.hpp"

namespace zonal {

// Multiplier sequence of a zonal measure, k = 0..N.
std::vector<double> multiplier_of(const ZonalMeasure& mu);

// Coefficient-wise action c_k -> m_k c_k on a function.
ZonalFunction apply_multipliers(const ZonalFunction& g, const std::vector<double>& m);

// Spherical convolution of a zonal measure with a band-limited zonal function.
ZonalFunction convolve(const ZonalMeasure& mu, const ZonalFunction& g);

// Convolution of two functions, the left factor acting as a density.
ZonalFunction convolve(const ZonalFunction& f, const ZonalFunction& g);

// Convolution of two measures, returned through its band-limited density.
ZonalMeasure convolve_measures(const ZonalMeasure& mu, const ZonalMeasure& nu);

// Multipliers of the cosine transform f -> int |u.v| f(v) dv, k = 0..N.
std::vector<double> cosine_multipliers(const Basis& basis);

ZonalFunction cosine_transform(const ZonalFunction& f);

// Inverse of the cosine transform on even data. Throws std::domain_error when
// the input carries odd content above odd_tol relative to its sup norm.
ZonalFunction inverse_cosine_even(const ZonalFunction& f, double odd_tol = 1e-10);

// Multiplier of the box operator on degree k in dimension n.
double box_multiplier(int n, int k);

// Box operator, computed in coefficient space.
ZonalFunction box_n(const ZonalFunction& f);

// Box operator through its closed-form second-order expression at the nodes.
ZonalFunction box_n_nodal(const ZonalFunction& f);

// Band-limited Berg kernel: convolving it with the box image of a function
// reproduces every degree except one.
ZonalFunction berg_function(BasisPtr basis);

// Convolve with the Berg kernel.
ZonalFunction berg_apply(const ZonalFunction& s);

}  // namespace zonal

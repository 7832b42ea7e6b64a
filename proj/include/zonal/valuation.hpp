#pragma once

#include <string>
#include <vector>

#include "zonal/body.hpp"
#include "zonal/endomorphism.hpp"
#include "zonal/zonal_function.hpp"
#include "zonal/zonal_measure.hpp"

namespace zonal {

// Candidate for a rotation-equivariant Minkowski valuation, homogeneous of
// degree j: the body is sent to the object whose support profile is the j-th
// area measure convolved with the zonal kernel f.  Nothing forces the output
// to be convex; apply_valuation reports the support-function margin instead.
struct HomValuation {
  int j;          // homogeneity degree, 1 <= j <= n-1
  ZonalMeasure f;  // representing zonal kernel
};

// The degree-1 valuation that realizes a Minkowski endomorphism.  The kernel
// is the generating measure convolved with the Berg function of the ambient
// dimension, so that pairing with the first area measure reproduces the plain
// support-function convolution on centered data.
HomValuation valuation_of_endomorphism(const Endomorphism& phi);

struct ValuationOutput {
  ZonalFunction h;  // profile of the image, on the refined area-measure basis
  double margin;    // support-function margin; negative when not convex
};

// h = S_j(K) * f through the multiplier calculus.
ValuationOutput apply_valuation(const HomValuation& V, const BodyRev& K);

// Derivative at t = 0 of t -> apply_valuation(V, K + t B) via central finite
// differences at the given steps, combined by Richardson extrapolation in the
// squared step.  `power` applies the derivation operator that many times: the
// m-fold derivative is taken with the order-m central stencil.  Throws when a
// step is nonpositive, below the underflow guard, or larger than the body's
// curvature margin allows.
ZonalFunction derivation_lambda(const HomValuation& V, const BodyRev& K,
                                const std::vector<double>& steps = {1e-2, 5e-3,
                                                                    2.5e-3},
                                int power = 1);

struct PsiResult {
  ZonalFunction psi;   // candidate 1-homogeneous component
  double margin;       // support-function margin of psi
  bool inconclusive;   // true when the inverted tail could flip the margin
  double tail;         // l1 mass of the top coefficient band after inversion
  std::string detail;  // human-readable account of the conditioning check
};

// psi = C^{-1}(h_K * h_L * g) for origin-symmetric K, L and an even Klain
// kernel g.  The inversion divides by the cosine-transform multipliers; the
// result is flagged inconclusive when the top eighth of the inverted
// expansion carries more than half of the margin's magnitude.
PsiResult psi_zonal(const BodyRev& K, const BodyRev& L, const ZonalFunction& g);

// Even kernel concentrating at the poles: a pair of quartic bumps supported
// on |t| >= 1 - eps, each of spherical mass 1/2, projected onto the basis.
ZonalFunction decomposition_kernel(BasisPtr basis, double eps);

struct DecompositionWitness {
  double eps;
  int k_index;     // position of K in the suite
  int l_index;     // position of L in the suite
  double margin;   // psi margin at the working band limit
  double refined;  // margin recomputed at twice the band limit
};

struct DecompositionEntry {
  double eps;
  bool witness_found;
  double min_margin;        // most negative conclusive margin seen
  int inconclusive_pairs;   // pairs whose margin could not be trusted
  DecompositionWitness best;  // valid when witness_found
};

struct DecompositionReport {
  std::vector<DecompositionEntry> entries;  // one per eps, in input order
  double eps_threshold;     // largest eps that produced a witness (NaN: none)
  bool ball_ever_witness;   // sanity flag: must remain false
};

// For every eps in the grid, builds the polar kernel and scans ordered pairs
// from the suite (plus the unit ball as an extra L) for psi margins below the
// threshold; candidate witnesses are re-verified at twice the band limit.
DecompositionReport decomposition_experiment(BasisPtr basis,
                                             const std::vector<double>& eps_grid,
                                             const std::vector<BodyRev>& suite,
                                             double margin_threshold = -1e-6);

}  // namespace zonal

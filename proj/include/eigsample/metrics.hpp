#pragma once

#include "eigsample/eigensolver.hpp"
#include "eigsample/matrix.hpp"

namespace eigsample {

// max_i |est[i] - truth[i]|. Throws DimensionError on length mismatch.
double linf_spectrum_error(const Spectrum& est, const Spectrum& truth);

// Wasserstein-1 distance between the two spectral densities that put mass 1/n
// on every eigenvalue. For sorted equal-length spectra this is the mean
// absolute difference.
double wasserstein1(const Spectrum& a, const Spectrum& b);

// max_i |lambda_i(A) - lambda_i(B)|. Weyl's inequality bounds it by ||A - B||_2.
double weyl_gap(const SymMatrix& a, const SymMatrix& b, double tol = kDefaultSolverTol);

}  // namespace eigsample

#pragma once

#include "eigsample/eigensolver.hpp"
#include "eigsample/matrix.hpp"
#include "eigsample/rng.hpp"
#include "eigsample/sample_store.hpp"
#include "eigsample/samplers.hpp"

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string_view>

namespace eigsample {

enum class SamplerKind { uniform, nnz, norm, psd, singular, entrywise };

std::string_view to_string(SamplerKind kind) noexcept;

struct EstimateReport {
    Spectrum estimates;  // length n, non-increasing
    SamplerKind sampler = SamplerKind::uniform;
    double s = 0.0;
    std::size_t sample_size = 0;     // |S| (rows kept, for the singular estimator)
    std::size_t zeroed_count = 0;
    std::uint64_t seed = 0;          // seed of the stream the run consumed
    std::size_t positive_count = 0;  // submatrix eigenvalues routed to the top slots
    std::size_t entries_read = 0;
    std::chrono::nanoseconds elapsed{0};
};

// Equality of everything except elapsed time.
bool same_result(const EstimateReport& a, const EstimateReport& b);

// Spreads the m submatrix eigenvalues over n slots: nonnegative values (in
// order) fill the top slots, negative values fill the bottom slots, every
// other slot is 0. All values are multiplied by `scale`. Throws DimensionError
// if m > n.
Spectrum align_estimates(const Spectrum& sub_eigs, std::size_t n, double scale);

// Uniform principal submatrix, estimates scaled by n/s.
EstimateReport estimate_uniform(const SymMatrix& a, double s, Rng& rng, double tol = kDefaultSolverTol);

// Sparsity-proportional sampling; rescaling happens inside the submatrix.
EstimateReport estimate_nnz(const SparseSymStore& store, double s, const ZeroingRule& rule, Rng& rng,
                            double tol = kDefaultSolverTol);

// Squared-row-norm sampling; needs no bound on the entries.
EstimateReport estimate_norm(const SparseSymStore& store, double s, const ZeroingRule& rule, Rng& rng,
                             double tol = kDefaultSolverTol);

// PSD variant: only nonnegative submatrix eigenvalues are kept (scaled by n/s),
// every other estimate is 0. The caller is responsible for A being PSD.
EstimateReport estimate_psd(const SymMatrix& a, double s, Rng& rng, double tol = kDefaultSolverTol);

// Singular values from independently sampled rows and columns, zero-padded to n.
EstimateReport estimate_singular(const SymMatrix& a, double s, Rng& rng, double tol = kDefaultSolverTol);
EstimateReport estimate_singular(const Matrix& a, double s, Rng& rng, double tol = kDefaultSolverTol);

// Uniform submatrix, then entrywise sparsification of the submatrix with keep
// probability p, then alignment with scale n/s. entries_read counts |S| plus
// the off-diagonal pairs actually kept.
EstimateReport estimate_entrywise_pipeline(const SymMatrix& a, double s, double p, Rng& rng,
                                           double tol = kDefaultSolverTol);

// Coordinate-wise median over `trials` (odd) runs, re-sorted non-increasing.
Spectrum median_boost(const std::function<Spectrum(std::size_t trial)>& run, std::size_t trials);

// Sample sizes named by the guarantees. The constants are unspecified, so these
// are reference formulas only; every estimator takes s directly.
namespace sample_size_law {
double uniform(double n, double eps, double delta, double c);
double sparsity(double n, double eps, double delta, double c);
double norm(double n, double eps, double delta, double c);
double psd(double eps, double delta);
double singular(double n, double eps, double delta, double c);
double entrywise_keep_probability(double n, double eps, double delta, double c);
}  // namespace sample_size_law

}  // namespace eigsample

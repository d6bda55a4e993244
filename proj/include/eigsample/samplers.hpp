#pragma once

#include "eigsample/matrix.hpp"
#include "eigsample/rng.hpp"
#include "eigsample/sample_store.hpp"

#include <cstddef>
#include <vector>

namespace eigsample {

enum class SampleMode { uniform, by_nnz, by_sqnorm };

// Sampled index set S. indices are strictly increasing; probs[k] is the
// inclusion probability under which indices[k] was drawn.
struct SampleSet {
    std::vector<std::size_t> indices;
    std::vector<double> probs;
    SampleMode mode = SampleMode::uniform;

    std::size_t size() const noexcept { return indices.size(); }
    friend bool operator==(const SampleSet&, const SampleSet&) = default;
};

enum class ScaleApplied { none, inverse_sqrt_prob };

struct SampledSubmatrix {
    SampleSet sample;
    SymMatrix matrix;              // |S| x |S|
    std::size_t zeroed_count = 0;  // nonzero entries removed by the zeroing rule, each unordered pair once
    ScaleApplied scale = ScaleApplied::none;

    friend bool operator==(const SampledSubmatrix&, const SampledSubmatrix&) = default;
};

// Zeroing applied to a rescaled nonuniform sample.
//
// Sparsity sampler:
//   theorem:   drop [i,j] if i == j or nnz_i * nnz_j < eps^2 nnz / (c2 ln^2 n)
//   practical: drop [i,j] if i == j or nnz_i * nnz_j < nnz / (c2 s)
// Norm sampler:
//   theorem:   drop [i,i] if |A_i|^2 < (eps^2/4) |A|_F^2, and [i,j], i != j, if
//              |A_i|^2 |A_j|^2 < eps^2 |A|_F^2 A_ij^2 / (c2 ln^4 n)
// off keeps everything (the plain rescaled sampler).
struct ZeroingRule {
    enum class Kind { off, theorem, practical };

    Kind kind = Kind::off;
    double eps = 0.0;
    double c2 = 0.0;

    static ZeroingRule off() { return {}; }
    static ZeroingRule theorem(double eps, double c2) { return {Kind::theorem, eps, c2}; }
    static ZeroingRule practical(double c2 = kPracticalC2) { return {Kind::practical, 0.0, c2}; }

    static constexpr double kPracticalC2 = 0.1;
};

// Each index kept independently with probability s/n; the principal submatrix
// is returned unscaled.
SampledSubmatrix uniform_submatrix(const SymMatrix& a, double s, Rng& rng);

// Sparsity-proportional sampling, rescaling by 1/sqrt(p_i p_j), then zeroing.
// Returns an empty sample for a store without nonzeros.
SampledSubmatrix nnz_submatrix(const SparseSymStore& store, double s, const ZeroingRule& rule, Rng& rng);

// Squared-row-norm sampling (with the 1/n^2 floor), rescaling, then zeroing.
// Only off and theorem rules are defined. Returns an empty sample for a zero matrix.
SampledSubmatrix norm_submatrix(const SparseSymStore& store, double s, const ZeroingRule& rule, Rng& rng);

// The full n x n matrix A' obtained by applying a theorem-mode zeroing rule
// to every entry of A (no sampling, no rescaling).
SymMatrix nnz_zeroed_matrix(const SparseSymStore& store, double eps, double c2);
SymMatrix norm_zeroed_matrix(const SparseSymStore& store, double eps, double c2);

struct EntrywiseSample {
    SymMatrix matrix;
    std::size_t kept_pairs = 0;  // off-diagonal unordered pairs whose coin came up heads
};

// Diagonal copied; every off-diagonal pair kept with probability p (one coin
// per unordered pair, row-major order) and scaled by 1/p.
EntrywiseSample entrywise_sample(const SymMatrix& a, double p, Rng& rng);
SymMatrix entrywise_sparsify(const SymMatrix& a, double p, Rng& rng);

struct RowColSample {
    Matrix z;
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;
};

// Rows kept with probability s/n, then columns with independent coins;
// each kept row and column scaled by sqrt(n/s).
RowColSample rowcol_submatrix(const Matrix& a, double s, Rng& rng);
RowColSample rowcol_submatrix(const SymMatrix& a, double s, Rng& rng);

}  // namespace eigsample

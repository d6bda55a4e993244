#include "eigsample/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace eigsample {

std::string_view to_string(SamplerKind kind) noexcept {
    switch (kind) {
        case SamplerKind::uniform: return "uniform";
        case SamplerKind::nnz: return "nnz";
        case SamplerKind::norm: return "norm";
        case SamplerKind::psd: return "psd";
        case SamplerKind::singular: return "singular";
        case SamplerKind::entrywise: return "entrywise";
    }
    return "unknown";
}

bool same_result(const EstimateReport& a, const EstimateReport& b) {
    return a.estimates == b.estimates && a.sampler == b.sampler && a.s == b.s && a.sample_size == b.sample_size &&
           a.zeroed_count == b.zeroed_count && a.seed == b.seed && a.positive_count == b.positive_count &&
           a.entries_read == b.entries_read;
}

Spectrum align_estimates(const Spectrum& sub_eigs, std::size_t n, double scale) {
    const std::size_t m = sub_eigs.size();
    if (m > n)
        throw DimensionError("align_estimates: " + std::to_string(m) + " submatrix eigenvalues exceed n=" +
                             std::to_string(n));
    std::vector<double> out(n, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
        const double v = scale * sub_eigs[k];
        if (sub_eigs[k] >= 0.0)
            out[k] = v;
        else
            out[n - m + k] = v;
    }
    return Spectrum::from_sorted(std::move(out));
}

namespace {

using Clock = std::chrono::steady_clock;

std::size_t count_nonnegative(const Spectrum& s) {
    return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](double v) { return v >= 0.0; }));
}

EstimateReport from_submatrix(const SampledSubmatrix& sub, std::size_t n, double scale, double tol) {
    EstimateReport r;
    const Spectrum eig = sym_eigvals(sub.matrix, tol);
    r.estimates = align_estimates(eig, n, scale);
    r.sample_size = sub.sample.size();
    r.zeroed_count = sub.zeroed_count;
    r.positive_count = count_nonnegative(eig);
    r.entries_read = sub.sample.size() * sub.sample.size();
    return r;
}

}  // namespace

EstimateReport estimate_uniform(const SymMatrix& a, double s, Rng& rng, double tol) {
    const auto start = Clock::now();
    const std::uint64_t seed = rng.seed();
    const auto sub = uniform_submatrix(a, s, rng);
    EstimateReport r = from_submatrix(sub, a.size(), static_cast<double>(a.size()) / s, tol);
    r.sampler = SamplerKind::uniform;
    r.s = s;
    r.seed = seed;
    r.elapsed = Clock::now() - start;
    return r;
}

EstimateReport estimate_nnz(const SparseSymStore& store, double s, const ZeroingRule& rule, Rng& rng, double tol) {
    const auto start = Clock::now();
    const std::uint64_t seed = rng.seed();
    const auto sub = nnz_submatrix(store, s, rule, rng);
    EstimateReport r = from_submatrix(sub, store.size(), 1.0, tol);
    r.sampler = SamplerKind::nnz;
    r.s = s;
    r.seed = seed;
    r.elapsed = Clock::now() - start;
    return r;
}

EstimateReport estimate_norm(const SparseSymStore& store, double s, const ZeroingRule& rule, Rng& rng, double tol) {
    const auto start = Clock::now();
    const std::uint64_t seed = rng.seed();
    const auto sub = norm_submatrix(store, s, rule, rng);
    EstimateReport r = from_submatrix(sub, store.size(), 1.0, tol);
    r.sampler = SamplerKind::norm;
    r.s = s;
    r.seed = seed;
    r.elapsed = Clock::now() - start;
    return r;
}

EstimateReport estimate_psd(const SymMatrix& a, double s, Rng& rng, double tol) {
    const auto start = Clock::now();
    const std::uint64_t seed = rng.seed();
    const std::size_t n = a.size();
    const auto sub = uniform_submatrix(a, s, rng);
    const Spectrum eig = sym_eigvals(sub.matrix, tol);
    const double scale = static_cast<double>(n) / s;
    std::vector<double> out(n, 0.0);
    std::size_t kept = 0;
    for (double v : eig) {
        if (v < 0.0) break;
        out[kept++] = scale * v;
    }
    EstimateReport r;
    r.estimates = Spectrum::from_sorted(std::move(out));
    r.sampler = SamplerKind::psd;
    r.s = s;
    r.sample_size = sub.sample.size();
    r.seed = seed;
    r.positive_count = kept;
    r.entries_read = sub.sample.size() * sub.sample.size();
    r.elapsed = Clock::now() - start;
    return r;
}

EstimateReport estimate_singular(const Matrix& a, double s, Rng& rng, double tol) {
    const auto start = Clock::now();
    const std::uint64_t seed = rng.seed();
    const std::size_t n = a.rows();
    const auto sample = rowcol_submatrix(a, s, rng);
    const Spectrum sv = singular_values(sample.z, tol);
    std::vector<double> out(n, 0.0);
    std::copy(sv.begin(), sv.end(), out.begin());
    EstimateReport r;
    r.estimates = Spectrum::from_sorted(std::move(out));
    r.sampler = SamplerKind::singular;
    r.s = s;
    r.sample_size = sample.rows.size();
    r.seed = seed;
    r.positive_count = sv.size();
    r.entries_read = sample.rows.size() * sample.cols.size();
    r.elapsed = Clock::now() - start;
    return r;
}

EstimateReport estimate_singular(const SymMatrix& a, double s, Rng& rng, double tol) {
    return estimate_singular(a.to_matrix(), s, rng, tol);
}

EstimateReport estimate_entrywise_pipeline(const SymMatrix& a, double s, double p, Rng& rng, double tol) {
    const auto start = Clock::now();
    const std::uint64_t seed = rng.seed();
    const std::size_t n = a.size();
    const auto sub = uniform_submatrix(a, s, rng);
    const auto sparse = entrywise_sample(sub.matrix, p, rng);
    const Spectrum eig = sym_eigvals(sparse.matrix, tol);
    EstimateReport r;
    r.estimates = align_estimates(eig, n, static_cast<double>(n) / s);
    r.sampler = SamplerKind::entrywise;
    r.s = s;
    r.sample_size = sub.sample.size();
    r.seed = seed;
    r.positive_count = count_nonnegative(eig);
    r.entries_read = sub.sample.size() + sparse.kept_pairs;
    r.elapsed = Clock::now() - start;
    return r;
}

Spectrum median_boost(const std::function<Spectrum(std::size_t trial)>& run, std::size_t trials) {
    if (trials == 0 || trials % 2 == 0) throw std::invalid_argument("median_boost: trials must be odd and positive");
    std::vector<Spectrum> runs;
    runs.reserve(trials);
    for (std::size_t t = 0; t < trials; ++t) {
        runs.push_back(run(t));
        if (runs.back().size() != runs.front().size())
            throw DimensionError("median_boost: trial spectra differ in length");
    }
    const std::size_t n = runs.front().size();
    std::vector<double> column(trials);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t t = 0; t < trials; ++t) column[t] = runs[t][i];
        auto mid = column.begin() + static_cast<std::ptrdiff_t>(trials / 2);
        std::nth_element(column.begin(), mid, column.end());
        out[i] = *mid;
    }
    return Spectrum::from_unsorted(std::move(out));
}

namespace sample_size_law {

double uniform(double n, double eps, double delta, double c) {
    const double ln = std::log(n);
    return c * std::log(1.0 / (eps * delta)) * ln * ln * ln / (eps * eps * eps * delta);
}

double sparsity(double n, double eps, double delta, double c) {
    return c * std::pow(std::log(n), 8) / (std::pow(eps, 8) * std::pow(delta, 4));
}

double norm(double n, double eps, double delta, double c) {
    return c * std::pow(std::log(n), 10) / (std::pow(eps, 8) * std::pow(delta, 4));
}

double psd(double eps, double delta) { return 2.0 / (eps * eps * delta); }

double singular(double n, double eps, double delta, double c) { return c * std::log(n / delta) / (eps * eps); }

double entrywise_keep_probability(double n, double eps, double delta, double c) {
    return std::min(1.0, c * std::log(n / delta) / (n * eps * eps));
}

}  // namespace sample_size_law

}  // namespace eigsample

#include "eigsample/estimators.hpp"
#include "eigsample/generators.hpp"
#include "eigsample/metrics.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace eigsample;

namespace {

std::vector<double> vals(const Spectrum& s) { return {s.begin(), s.end()}; }

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

}  // namespace

TEST(Align, EmptySample) { EXPECT_EQ(align_estimates(Spectrum(), 5, 3.0), Spectrum::zeros(5)); }

TEST(Align, MixedSigns) {
    const auto out = align_estimates(Spectrum::from_sorted({2.0, 0.5, -1.0}), 6, 2.0);
    EXPECT_EQ(vals(out), (std::vector<double>{4.0, 1.0, 0.0, 0.0, 0.0, -2.0}));
}

TEST(Align, FullSizeIsIdentityMap) {
    const auto s = Spectrum::from_sorted({3.0, 1.0, -0.5, -4.0});
    EXPECT_EQ(align_estimates(s, 4, 1.0), s);
    EXPECT_THROW(align_estimates(s, 3, 1.0), DimensionError);
}

TEST(EstimateUniform, FullSamplingIsExact) {
    Rng rng(81);
    const auto a = testutil::random_sym(30, rng);
    Rng r(1);
    const auto rep = estimate_uniform(a, 30.0, r);
    EXPECT_LE(testutil::max_diff(rep.estimates, testutil::eigen_eigvals(a)), 2e-8);
    EXPECT_EQ(rep.sample_size, 30u);
    EXPECT_EQ(rep.sampler, SamplerKind::uniform);
}

TEST(EstimateUniform, IdentityFailureMode) {
    Rng r(82);
    const auto rep = estimate_uniform(SymMatrix::identity(1000), 50.0, r);
    ASSERT_GT(rep.sample_size, 0u);
    EXPECT_EQ(rep.estimates[0], 20.0);
    EXPECT_EQ(rep.positive_count, rep.sample_size);
}

TEST(EstimateUniform, BlockMatrixRankOne) {
    const auto a = block_matrix(5000, 2500);
    Rng r(83);
    const auto rep = estimate_uniform(a, 100.0, r);
    EXPECT_NEAR(rep.estimates[0], 2500.0, 0.15 * 5000);
    for (std::size_t i = 1; i < rep.estimates.size(); ++i) EXPECT_NEAR(rep.estimates[i], 0.0, 1e-9);
}

TEST(EstimateNnz, IdentityPracticalZeroing) {
    const auto store = SparseSymStore::from_dense(SymMatrix::identity(1000));
    Rng r(84);
    const auto rep = estimate_nnz(store, 50.0, ZeroingRule::practical(), r);
    EXPECT_EQ(rep.estimates, Spectrum::zeros(1000));
    EXPECT_EQ(rep.zeroed_count, rep.sample_size);
    const double max_err = linf_spectrum_error(rep.estimates, Spectrum::from_sorted(std::vector<double>(1000, 1.0)));
    EXPECT_EQ(max_err, 1.0);
    EXPECT_LE(max_err, 0.2 * std::sqrt(1000.0));
}

TEST(EstimateNnz, UniformSparsityDegeneratesToUniform) {
    std::vector<Entry> e;
    for (std::size_t i = 0; i < 60; ++i) e.push_back({i, (i + 1) % 60, 1.0});
    const auto store = SparseSymStore::build(60, e);
    const auto dense = store.to_dense();
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Rng r1(seed), r2(seed);
        const auto a = estimate_nnz(store, 12.0, ZeroingRule::off(), r1);
        const auto b = estimate_uniform(dense, 12.0, r2);
        EXPECT_EQ(a.sample_size, b.sample_size);
        EXPECT_LE(linf_spectrum_error(a.estimates, b.estimates), 1e-12);
    }
}

TEST(EstimateNorm, DominantDiagonal) {
    SymMatrix a = SymMatrix::identity(100);
    a.set(0, 0, 10.0);
    const auto store = SparseSymStore::from_dense(a);
    const double eps = 0.5;
    std::vector<double> tops;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng r(seed);
        tops.push_back(estimate_norm(store, 50.0, ZeroingRule::off(), r).estimates[0]);
    }
    EXPECT_LE(std::abs(median(tops) - 10.0), eps * a.frobenius_norm());
}

TEST(EstimateNorm, ZeroMatrix) {
    Rng r(85);
    EXPECT_EQ(estimate_norm(SparseSymStore(7), 3.0, ZeroingRule::off(), r).estimates, Spectrum::zeros(7));
}

TEST(EstimateNorm, Homogeneity) {
    Rng gen(86);
    const auto a = testutil::random_sym(40, gen);
    const auto s1 = SparseSymStore::from_dense(a);
    const auto s5 = SparseSymStore::from_dense(a.scaled(5.0));
    Rng r1(7), r2(7);
    const auto e1 = estimate_norm(s1, 10.0, ZeroingRule::off(), r1);
    const auto e5 = estimate_norm(s5, 10.0, ZeroingRule::off(), r2);
    EXPECT_EQ(e1.sample_size, e5.sample_size);
    for (std::size_t i = 0; i < 40; ++i) EXPECT_NEAR(e5.estimates[i], 5.0 * e1.estimates[i], 1e-12 * std::abs(e5.estimates[0]));
}

TEST(EstimatePsd, FullSamplingAndRankOne) {
    Rng gen(87);
    const auto a = random_psd(40, 5, gen);
    Rng r(1);
    const auto rep = estimate_psd(a, 40.0, r);
    const auto ref = testutil::eigen_eigvals(a);
    for (std::size_t i = 0; i < 40; ++i) EXPECT_NEAR(rep.estimates[i], std::max(ref[i], 0.0), 2e-8);

    const auto v = random_psd(60, 1, gen);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Rng rr(seed);
        const auto e = estimate_psd(v, 20.0, rr);
        const auto nonzero = std::count_if(e.estimates.begin(), e.estimates.end(),
                                           [&](double x) { return std::abs(x) > 1e-9 * 60.0; });
        EXPECT_LE(nonzero, 1);
        for (double x : e.estimates) EXPECT_GE(x, 0.0);
    }
}

TEST(EstimateSingular, FullSamplingGivesAbsEigenvalues) {
    Rng gen(88);
    const auto a = testutil::random_sym(25, gen);
    auto ref = testutil::eigen_eigvals(a);
    for (double& x : ref) x = std::abs(x);
    std::sort(ref.begin(), ref.end(), std::greater<>());
    Rng r(2);
    const auto rep = estimate_singular(a, 25.0, r);
    EXPECT_LE(testutil::max_diff(rep.estimates, ref), 2e-8);
}

TEST(EstimateSingular, ZeroPaddedToN) {
    Rng r(89);
    const auto rep = estimate_singular(block_matrix(200, 100), 60.0, r);
    EXPECT_EQ(rep.estimates.size(), 200u);
    EXPECT_LE(rep.positive_count, 200u);
    EXPECT_GE(rep.estimates[199], 0.0);
}

TEST(EntrywisePipeline, KeepAllMatchesUniform) {
    Rng gen(90);
    const auto a = testutil::random_sym(50, gen);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Rng r1(seed), r2(seed);
        const auto p = estimate_entrywise_pipeline(a, 15.0, 1.0, r1);
        const auto u = estimate_uniform(a, 15.0, r2);
        EXPECT_EQ(p.estimates, u.estimates);
        EXPECT_EQ(p.sample_size, u.sample_size);
    }
}

TEST(EntrywisePipeline, TriangleInequalityAcrossStages) {
    const std::size_t n = 300;
    const auto a = block_matrix(n, 150);
    const double s = 60.0, p = 0.5, scale = n / s;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Rng r(seed);
        const auto rep = estimate_entrywise_pipeline(a, s, p, r);
        Rng replay(seed);
        const auto sub = uniform_submatrix(a, s, replay);
        const auto sparse = entrywise_sparsify(sub.matrix, p, replay);
        const double stage1 = std::abs(scale * sym_eigvals(sub.matrix)[0] - 150.0);
        const double stage2 = scale * std::abs(sym_eigvals(sparse)[0] - sym_eigvals(sub.matrix)[0]);
        EXPECT_LE(std::abs(rep.estimates[0] - 150.0), stage1 + stage2 + 1e-9);
    }
}

TEST(EntrywisePipeline, EntriesReadBound) {
    Rng gen(91);
    const auto a = testutil::random_sym(80, gen);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng r(seed);
        const auto rep = estimate_entrywise_pipeline(a, 20.0, 0.4, r);
        EXPECT_LE(rep.entries_read, rep.sample_size + rep.sample_size * rep.sample_size);
    }
}

TEST(MedianBoost, SingleTrialAndConstant) {
    Rng gen(92);
    const auto a = testutil::random_sym(30, gen);
    const auto single = median_boost([&](std::size_t) {
        Rng r(5);
        return estimate_uniform(a, 10.0, r).estimates;
    }, 1);
    Rng r(5);
    EXPECT_EQ(single, estimate_uniform(a, 10.0, r).estimates);
    const auto c = Spectrum::from_sorted({2.0, 1.0, -3.0});
    EXPECT_EQ(median_boost([&](std::size_t) { return c; }, 7), c);
}

TEST(MedianBoost, CoordinatewiseMedian) {
    const std::vector<Spectrum> runs{Spectrum::from_sorted({5.0, 0.0}), Spectrum::from_sorted({1.0, -1.0}),
                                     Spectrum::from_sorted({3.0, -9.0})};
    const auto m = median_boost([&](std::size_t t) { return runs[t]; }, 3);
    EXPECT_EQ(vals(m), (std::vector<double>{3.0, -1.0}));
    EXPECT_THROW(median_boost([&](std::size_t t) { return runs[t]; }, 2), std::invalid_argument);
    EXPECT_THROW(median_boost([&](std::size_t t) { return runs[t]; }, 0), std::invalid_argument);
}

TEST(Estimators, Determinism) {
    Rng gen(93);
    const auto a = testutil::random_sparse_sym(60, 0.2, gen);
    const auto store = SparseSymStore::from_dense(a);
    Rng r1(3), r2(3);
    EXPECT_TRUE(same_result(estimate_uniform(a, 20.0, r1), estimate_uniform(a, 20.0, r2)));
    EXPECT_TRUE(same_result(estimate_nnz(store, 20.0, ZeroingRule::practical(), r1),
                            estimate_nnz(store, 20.0, ZeroingRule::practical(), r2)));
    EXPECT_TRUE(same_result(estimate_norm(store, 20.0, ZeroingRule::off(), r1),
                            estimate_norm(store, 20.0, ZeroingRule::off(), r2)));
    EXPECT_TRUE(same_result(estimate_singular(a, 20.0, r1), estimate_singular(a, 20.0, r2)));
    EXPECT_TRUE(same_result(estimate_entrywise_pipeline(a, 20.0, 0.5, r1),
                            estimate_entrywise_pipeline(a, 20.0, 0.5, r2)));
}

TEST(SampleSizeLaw, PsdFormula) {
    EXPECT_DOUBLE_EQ(sample_size_law::psd(0.2, 0.25), 200.0);
    EXPECT_LE(sample_size_law::entrywise_keep_probability(10.0, 0.01, 0.1, 8.0), 1.0);
    EXPECT_NEAR(sample_size_law::entrywise_keep_probability(400.0, 0.5, 0.2, 8.0), 8.0 * std::log(2000.0) / 100.0,
                1e-15);
}

// Acceptance gate: one PASS/FAIL line per headline criterion. Exits nonzero if
// any criterion fails.

#include "eigsample/eigensolver.hpp"
#include "eigsample/estimators.hpp"
#include "eigsample/generators.hpp"
#include "eigsample/harness.hpp"
#include "eigsample/metrics.hpp"
#include "eigsample/samplers.hpp"

#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace eigsample;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass;
    std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

SymMatrix random_sym(std::size_t n, Rng& rng) {
    SymMatrix a(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) a.set(i, j, rng.uniform(-1.0, 1.0));
    return a;
}

Spectrum abs_sorted(const Spectrum& s) {
    std::vector<double> v(s.begin(), s.end());
    for (double& x : v) x = std::abs(x);
    return Spectrum::from_unsorted(std::move(v));
}

// Every estimator at full sampling against the exact spectrum.
Outcome oracle_equivalence() {
    constexpr int kMatrices = 200;
    constexpr std::size_t kMaxN = 64;
    constexpr double kTol = 2 * 1e-8;
    constexpr double kBudgetSeconds = 30.0;
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (int k = 0; k < kMatrices; ++k) {
        Rng rng(derive_seed(1, {static_cast<std::uint64_t>(k)}));
        const std::size_t n = 1 + rng.below(kMaxN);
        const SymMatrix a = random_sym(n, rng);
        const SparseSymStore store = SparseSymStore::from_dense(a);
        const Spectrum truth = sym_eigvals(a);
        const double s = static_cast<double>(n);
        // Norm sampling reaches p_i = 1 only once s >= ||A||_F^2 / min_i ||A_i||^2.
        double min_row = store.frob_sq();
        for (std::size_t i = 0; i < n; ++i) min_row = std::min(min_row, store.row_sqnorm(i));
        const double s_norm = std::max(s, store.frob_sq() / min_row);
        // The PSD estimator is defined for PSD input, so it gets A^2.
        SymMatrix a2(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                double v = 0.0;
                for (std::size_t l = 0; l < n; ++l) v += a(i, l) * a(l, j);
                a2.set(i, j, v);
            }
        const Spectrum truth2 = sym_eigvals(a2);
        std::vector<double> psd_truth(truth2.begin(), truth2.end());
        for (double& v : psd_truth) v = std::max(v, 0.0);

        Rng r(derive_seed(2, {static_cast<std::uint64_t>(k)}));
        const double errs[] = {
            linf_spectrum_error(estimate_uniform(a, s, r).estimates, truth),
            linf_spectrum_error(estimate_nnz(store, s, ZeroingRule::off(), r).estimates, truth),
            linf_spectrum_error(estimate_norm(store, s_norm, ZeroingRule::off(), r).estimates, truth),
            linf_spectrum_error(estimate_psd(a2, s, r).estimates, Spectrum::from_sorted(psd_truth)),
            linf_spectrum_error(estimate_singular(a, s, r).estimates, abs_sorted(truth)),
            linf_spectrum_error(estimate_entrywise_pipeline(a, s, 1.0, r).estimates, truth),
        };
        for (double e : errs) worst = std::max(worst, e);
    }
    const double secs = seconds_since(t0);
    return {worst <= kTol && secs < kBudgetSeconds,
            fmt("200 matrices x 6 estimators, worst error %.3g (tol %.3g), %.2f s (limit %.0f s)", worst, kTol, secs,
                kBudgetSeconds)};
}

Outcome alignment() {
    constexpr int kCases = 100000;
    int mismatches = 0;
    for (int k = 0; k < kCases; ++k) {
        Rng rng(derive_seed(3, {static_cast<std::uint64_t>(k)}));
        const std::size_t n = 1 + rng.below(64);
        const std::size_t m = rng.below(n + 1);
        const double zero_rate = 0.3 * rng.uniform();
        const double pos_rate = rng.uniform();
        std::vector<double> sub(m);
        for (double& x : sub)
            x = rng.uniform() < zero_rate ? 0.0 : (rng.uniform() < pos_rate ? 1.0 : -1.0) * rng.uniform(1e-6, 50.0);
        std::sort(sub.begin(), sub.end(), std::greater<>());
        const double scale = rng.uniform(0.1, 100.0);
        const Spectrum got = align_estimates(Spectrum::from_sorted(sub), n, scale);
        if (std::vector<double>(got.begin(), got.end()) != oracle::slot_simulator(sub, n, scale)) ++mismatches;
    }
    return {mismatches == 0, fmt("%.0f cases, %.0f mismatches", kCases, mismatches)};
}

Outcome weyl() {
    constexpr int kPairs = 100;
    constexpr double kSlack = 1e-8;
    int violations = 0;
    double worst_margin = -1e300;
    for (int k = 0; k < kPairs; ++k) {
        Rng rng(derive_seed(4, {static_cast<std::uint64_t>(k)}));
        const std::size_t n = 1 + rng.below(64);
        const SymMatrix a = random_sym(n, rng);
        const SymMatrix e = random_sym(n, rng).scaled(std::pow(10.0, rng.uniform(-6.0, 1.0)));
        const double gap = weyl_gap(a, a + e);
        const double bound = spectral_norm(e) + kSlack;
        worst_margin = std::max(worst_margin, gap - bound);
        if (gap > bound) ++violations;
    }
    return {violations == 0, fmt("%.0f pairs, %.0f violations, max(gap - bound) = %.3g", kPairs, violations,
                                 worst_margin)};
}

Outcome zeroing_perturbation() {
    constexpr int kMatrices = 50;
    constexpr std::size_t kMaxN = 200;
    constexpr double kEps = 0.5;
    constexpr double kC2 = 64.0;
    int checked = 0, passed = 0;
    double worst_ratio = 0.0;
    for (std::uint64_t k = 0; checked < kMatrices; ++k) {
        Rng rng(derive_seed(5, {k}));
        const std::size_t n = 2 + rng.below(kMaxN - 1);
        const SparseSymStore store = random_sparse_symmetric(n, std::pow(10.0, rng.uniform(-2.5, -0.3)), rng);
        const double nnz = static_cast<double>(store.total_nnz());
        if (nnz < 2.0 / (kEps * kEps)) continue;
        ++checked;
        const double gap = weyl_gap(store.to_dense(), nnz_zeroed_matrix(store, kEps, kC2));
        const double bound = kEps * std::sqrt(nnz);
        worst_ratio = std::max(worst_ratio, gap / bound);
        if (gap <= bound) ++passed;
    }
    return {passed == checked, fmt("%.0f/%.0f matrices within eps*sqrt(nnz); worst gap/bound %.3f", passed, checked,
                                   worst_ratio)};
}

Outcome entrywise() {
    constexpr std::size_t kN = 400;
    constexpr double kEps = 0.5, kDelta = 0.2, kC = 8.0;
    constexpr int kTrials = 20, kNeeded = 18;
    constexpr double kBudgetSeconds = 60.0;
    const auto t0 = Clock::now();
    const double p = kC * std::log(kN / kDelta) / (kN * kEps * kEps);
    Rng gen(6);
    const SymMatrix a = random_symmetric(kN, gen);
    int passed = 0;
    double worst = 0.0;
    for (int t = 0; t < kTrials; ++t) {
        Rng rng(derive_seed(7, {static_cast<std::uint64_t>(t)}));
        const double err = spectral_norm(a - entrywise_sparsify(a, p, rng));
        worst = std::max(worst, err);
        if (err <= kEps * kN) ++passed;
    }
    const double secs = seconds_since(t0);
    return {passed >= kNeeded && secs < kBudgetSeconds,
            fmt("p = %.4f, %.0f/20 trials with ||A-C||_2 <= 200 (worst %.2f), %.2f s", p, passed, worst, secs)};
}

Outcome block_reproduction() {
    constexpr double kSlopeLo = -0.8, kSlopeHi = -0.3;
    constexpr double kNonTopTol = 1e-6;
    constexpr double kBudgetSeconds = 300.0;
    const auto t0 = Clock::now();
    ExperimentConfig cfg;
    cfg.experiment_id = "block";
    cfg.matrix_spec = "block:n=2000,k=1000";
    cfg.samplers = {SamplerId::uniform};
    cfg.sample_fractions = {0.01, 0.02, 0.05, 0.1, 0.2, 0.3};
    cfg.trials = 50;
    cfg.targets = {"1"};
    cfg.seed = 2024;
    const LoadedMatrix m = build_matrix(parse_matrix_spec(cfg.matrix_spec));
    const auto rows = run_experiment(cfg, m);
    const double slope = slope_fit(rows, "uniform", 1);

    // Every other slot of every trial, replayed with the harness seeds.
    const double root_nnz = std::sqrt(static_cast<double>(m.store.total_nnz()));
    double worst_non_top = 0.0;
    for (std::size_t fi = 0; fi < cfg.sample_fractions.size(); ++fi)
        for (std::size_t t = 0; t < cfg.trials; ++t) {
            Rng rng(trial_seed(cfg.seed, SamplerId::uniform, fi, t));
            const auto rep = estimate_uniform(m.dense, cfg.sample_fractions[fi] * 2000.0, rng);
            for (std::size_t i = 1; i < rep.estimates.size(); ++i)
                worst_non_top = std::max(worst_non_top, std::abs(rep.estimates[i]) / root_nnz);
        }
    const double secs = seconds_since(t0);
    return {slope >= kSlopeLo && slope <= kSlopeHi && worst_non_top <= kNonTopTol && secs < kBudgetSeconds,
            fmt("slope %.4f in [-0.8, -0.3], worst non-top scaled error %.3g (tol 1e-6), %.2f s", slope,
                worst_non_top, secs)};
}

Outcome identity_failure_fix() {
    constexpr std::size_t kN = 1000;
    constexpr double kS = 50.0;
    const SymMatrix id = SymMatrix::identity(kN);
    const SparseSymStore store = SparseSymStore::from_dense(id);
    Rng r1(8);
    const auto uni = estimate_uniform(id, kS, r1);
    Rng r2(9);
    const auto nnz = estimate_nnz(store, kS, ZeroingRule::practical(), r2);
    const double max_err = linf_spectrum_error(nnz.estimates, Spectrum::from_sorted(std::vector<double>(kN, 1.0)));
    const bool all_zero = nnz.estimates == Spectrum::zeros(kN);
    const double bound = 0.2 * std::sqrt(static_cast<double>(kN));
    return {uni.estimates[0] == 20.0 && all_zero && max_err == 1.0 && max_err <= bound,
            fmt("uniform top estimate %.17g (want 20), nnz-practical all zero: %.0f, max error %.3g <= %.3f",
                uni.estimates[0], all_zero ? 1.0 : 0.0, max_err, bound)};
}

std::vector<double> scaled_errors(const std::vector<ResultRow>& rows, const std::string& sampler) {
    std::vector<double> out;
    for (const auto& r : rows)
        if (r.sampler == sampler && r.target_index == 1) out.push_back(r.scaled_err);
    return out;
}

Outcome nonuniform_advantage() {
    ExperimentConfig cfg;
    cfg.experiment_id = "powerlaw";
    cfg.matrix_spec = "powerlaw:n=2000,exponent=2.5,min_degree=2,seed=2024";
    cfg.samplers = {SamplerId::uniform, SamplerId::nnz_practical};
    cfg.sample_fractions = {0.05};
    cfg.trials = 50;
    cfg.targets = {"1"};
    cfg.seed = 2024;
    const auto rows = run_experiment(cfg);
    const double uni = oracle::median(scaled_errors(rows, "uniform"));
    const double nnz = oracle::median(scaled_errors(rows, "nnz_practical"));
    return {nnz <= uni, fmt("median scaled error nnz_practical %.5f vs uniform %.5f", nnz, uni)};
}

Outcome psd_l2() {
    constexpr std::size_t kN = 500;
    constexpr double kEps = 0.2, kDelta = 0.25;
    constexpr int kTrials = 20, kNeeded = 15;
    const double s = std::ceil(2.0 / (kEps * kEps * kDelta));
    Rng gen(10);
    const SymMatrix a = random_psd(kN, 10, gen);
    const Spectrum truth = sym_eigvals(a);
    int passed = 0;
    double worst = 0.0;
    for (int t = 0; t < kTrials; ++t) {
        Rng rng(derive_seed(11, {static_cast<std::uint64_t>(t)}));
        const auto rep = estimate_psd(a, s, rng);
        double sq = 0.0;
        for (std::size_t i = 0; i < kN; ++i) sq += (rep.estimates[i] - truth[i]) * (rep.estimates[i] - truth[i]);
        worst = std::max(worst, std::sqrt(sq));
        if (std::sqrt(sq) <= kEps * kN) ++passed;
    }
    return {passed >= kNeeded && s == 200.0,
            fmt("s = %.0f, %.0f/20 trials with l2 error <= 100 (worst %.2f)", s, passed, worst)};
}

Outcome singular() {
    constexpr std::size_t kN = 200;
    constexpr double kS = 60.0;
    constexpr int kTrials = 50;
    constexpr double kBound = 30.0;
    const SymMatrix a = block_matrix(kN, 100);
    std::vector<double> errs;
    for (int t = 0; t < kTrials; ++t) {
        Rng rng(derive_seed(12, {static_cast<std::uint64_t>(t)}));
        errs.push_back(std::abs(estimate_singular(a, kS, rng).estimates[0] - 100.0));
    }
    const double med = oracle::median(errs);
    return {med <= kBound, fmt("median |sigma_1 - 100| = %.3f (bound 30)", med)};
}

Outcome median_boosting() {
    constexpr std::size_t kN = 2000;
    constexpr double kFraction = 0.02;
    constexpr std::size_t kBoost = 11;
    constexpr int kMeta = 200;
    const double threshold = 0.15 * kN;
    const SymMatrix a = block_matrix(kN, 1000);
    const Spectrum truth = sym_eigvals(a);
    const double s = kFraction * kN;
    auto one_run = [&](std::uint64_t seed) {
        Rng rng(seed);
        return estimate_uniform(a, s, rng).estimates;
    };
    int single_fail = 0, boosted_fail = 0;
    for (int meta = 0; meta < kMeta; ++meta) {
        const auto m = static_cast<std::uint64_t>(meta);
        if (linf_spectrum_error(one_run(derive_seed(13, {m})), truth) > threshold) ++single_fail;
        const Spectrum boosted =
            median_boost([&](std::size_t t) { return one_run(derive_seed(14, {m, t})); }, kBoost);
        if (linf_spectrum_error(boosted, truth) > threshold) ++boosted_fail;
    }
    return {boosted_fail < single_fail, fmt("failure rate single %.3f vs median-of-11 %.3f over 200 meta-trials",
                                            single_fail / double(kMeta), boosted_fail / double(kMeta))};
}

Outcome erdos_renyi_magnitude() {
    constexpr double kBound = 0.15;
    ExperimentConfig cfg;
    cfg.experiment_id = "er";
    cfg.matrix_spec = "er:n=1000,p=0.1,seed=2024";
    cfg.samplers = {SamplerId::uniform, SamplerId::nnz_practical, SamplerId::nnz_simple, SamplerId::norm};
    cfg.sample_fractions = {0.1};
    cfg.trials = 50;
    cfg.targets = {"1"};
    cfg.seed = 2024;
    const auto rows = run_experiment(cfg);
    const double l1 = rows.front().true_eig;
    const double np = 100.0;
    bool ok = std::abs(l1 - np) <= 3.0 * std::sqrt(np);
    std::string detail = fmt("exact lambda_1 = %.3f (want 100 +/- 30); median scaled errors:", l1);
    for (SamplerId id : cfg.samplers) {
        const double med = oracle::median(scaled_errors(rows, std::string(to_string(id))));
        ok = ok && med <= kBound;
        detail += " " + std::string(to_string(id)) + fmt("=%.4f", med);
    }
    return {ok, detail + " (bound 0.15)"};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"oracle-equivalence", oracle_equivalence},
        {"alignment-correctness", alignment},
        {"weyl-suite", weyl},
        {"zeroing-perturbation", zeroing_perturbation},
        {"entrywise-sparsification", entrywise},
        {"block-matrix-reproduction", block_reproduction},
        {"identity-failure-fix", identity_failure_fix},
        {"nonuniform-advantage", nonuniform_advantage},
        {"psd-l2-bound", psd_l2},
        {"singular-values", singular},
        {"median-boosting", median_boosting},
        {"erdos-renyi-magnitude", erdos_renyi_magnitude},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}

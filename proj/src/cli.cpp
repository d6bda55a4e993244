#include "eigsample/harness.hpp"

#include "eigsample/estimators.hpp"
#include "eigsample/generators.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

namespace eigsample {

namespace {

constexpr const char* kConfigKeys[] = {
    "experiment_id", "matrix_spec", "samplers", "sample_fractions", "trials",        "target_indices",
    "seed",          "c2",          "eps",      "theorem_c2",       "entrywise_p",   "tol",
    "zero_baseline", "timing",      "cache_spectrum", "output_path",
};

std::string fmt(double v, int digits = 17) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

int do_run(const std::string& config_path, const std::map<std::string, std::string>& overrides, std::ostream& out) {
    ExperimentConfig cfg = config_path.empty() ? ExperimentConfig{} : load_config(config_path);
    for (const auto& [k, v] : overrides) apply_setting(cfg, k, v);
    const auto rows = run_experiment(cfg);
    if (cfg.output_path.empty()) write_csv(out, rows);
    return 0;
}

int do_spectrum(const std::string& spec_text, double tol, std::ostream& out) {
    const LoadedMatrix m = build_matrix(parse_matrix_spec(spec_text));
    const Spectrum s = exact_spectrum(m, tol, false);
    const double snap = tol * m.dense.frobenius_norm();
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double v = std::abs(s[i]) <= snap ? 0.0 : s[i];
        // 15 digits hides last-place rounding from the solver.
        out << (i ? " " : "") << fmt(v, 15);
    }
    out << '\n';
    return 0;
}

int do_slope(const std::string& csv_path, const std::string& sampler, std::size_t target, std::ostream& out) {
    std::ifstream in(csv_path);
    if (!in) throw std::runtime_error("cannot open " + csv_path);
    const auto rows = read_csv(in);
    if (!sampler.empty() && target > 0) {
        out << fmt(slope_fit(rows, sampler, target)) << '\n';
        return 0;
    }
    std::vector<std::pair<std::string, std::size_t>> keys;
    for (const auto& r : rows) {
        if (r.sampler == "zero") continue;
        if (!sampler.empty() && r.sampler != sampler) continue;
        if (target > 0 && r.target_index != target) continue;
        std::pair<std::string, std::size_t> key{r.sampler, r.target_index};
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
    }
    if (keys.empty()) throw FitError("no rows match the requested sampler/target");
    for (const auto& [name, t] : keys) {
        out << name << ' ' << t << ' ';
        try {
            out << fmt(slope_fit(rows, name, t)) << '\n';
        } catch (const FitError&) {
            out << "nan\n";
        }
    }
    return 0;
}

int do_bench(const std::string& spec_text, double fraction, std::size_t reps, std::uint64_t seed, std::ostream& out) {
    if (!(fraction > 0.0 && fraction <= 1.0)) throw ConfigError("fraction", "must lie in (0, 1]");
    if (reps == 0) throw ConfigError("reps", "must be positive");
    const LoadedMatrix m = build_matrix(parse_matrix_spec(spec_text));
    const double s = fraction * static_cast<double>(m.dense.size());
    out << "sampler median_ms sample_size\n";
    for (auto id : {SamplerId::uniform, SamplerId::nnz_practical, SamplerId::nnz_simple, SamplerId::norm,
                    SamplerId::entrywise, SamplerId::singular, SamplerId::psd}) {
        std::vector<double> ms;
        std::size_t size = 0;
        for (std::size_t r = 0; r < reps; ++r) {
            Rng rng(trial_seed(seed, id, 0, r));
            EstimateReport rep;
            switch (id) {
                case SamplerId::uniform: rep = estimate_uniform(m.dense, s, rng); break;
                case SamplerId::nnz_practical: rep = estimate_nnz(m.store, s, ZeroingRule::practical(), rng); break;
                case SamplerId::nnz_simple: rep = estimate_nnz(m.store, s, ZeroingRule::off(), rng); break;
                case SamplerId::norm: rep = estimate_norm(m.store, s, ZeroingRule::off(), rng); break;
                case SamplerId::entrywise: rep = estimate_entrywise_pipeline(m.dense, s, 0.5, rng); break;
                case SamplerId::singular: rep = estimate_singular(m.dense, s, rng); break;
                default: rep = estimate_psd(m.dense, s, rng); break;
            }
            ms.push_back(std::chrono::duration<double, std::milli>(rep.elapsed).count());
            size = rep.sample_size;
        }
        std::nth_element(ms.begin(), ms.begin() + static_cast<std::ptrdiff_t>(ms.size() / 2), ms.end());
        char line[128];
        std::snprintf(line, sizeof line, "%s %.3f %zu\n", std::string(to_string(id)).c_str(), ms[ms.size() / 2], size);
        out << line;
    }
    return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Eigenvalue estimation from sampled principal submatrices", "eigsample"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Run an experiment config and write CSV");
    std::string config_path;
    run->add_option("config", config_path, "Config file (key = value lines)");
    std::map<std::string, std::string> overrides;
    std::map<std::string, std::string> flag_values;
    for (const char* key : kConfigKeys) run->add_option(std::string("--") + key, flag_values[key], key);

    auto* spectrum = app.add_subcommand("spectrum", "Print the exact spectrum of a matrix spec");
    std::string spec_text;
    double tol = kDefaultSolverTol;
    spectrum->add_option("matrix", spec_text, "Matrix spec, e.g. block:n=4,k=2")->required();
    spectrum->add_option("--tol", tol, "Solver tolerance");

    auto* slope = app.add_subcommand("slope", "Fit log-log error slopes from a CSV");
    std::string csv_path;
    std::string sampler;
    std::size_t target = 0;
    slope->add_option("csv", csv_path, "Harness CSV")->required();
    slope->add_option("--sampler", sampler, "Sampler name");
    slope->add_option("--target", target, "Target index (1 = largest)");

    auto* bench = app.add_subcommand("bench", "Time each sampler on one matrix");
    std::string bench_spec = "block:n=1000,k=500";
    double fraction = 0.1;
    std::size_t reps = 5;
    std::uint64_t seed = 0;
    bench->add_option("--matrix", bench_spec, "Matrix spec");
    bench->add_option("--fraction", fraction, "Sample fraction");
    bench->add_option("--reps", reps, "Repetitions per sampler");
    bench->add_option("--seed", seed, "Master seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << app.help();
        return 2;
    }

    try {
        if (*run) {
            for (const char* key : kConfigKeys)
                if (run->count(std::string("--") + key) > 0) overrides[key] = flag_values[key];
            if (config_path.empty() && overrides.empty()) {
                err << "error: run needs a config file or --key flags\n" << run->help();
                return 2;
            }
            return do_run(config_path, overrides, out);
        }
        if (*spectrum) return do_spectrum(spec_text, tol, out);
        if (*slope) return do_slope(csv_path, sampler, target, out);
        return do_bench(bench_spec, fraction, reps, seed, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace eigsample

#pragma once

#include "eigsample/eigensolver.hpp"
#include "eigsample/matrix.hpp"
#include "eigsample/sample_store.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace eigsample {

class ConfigError : public std::invalid_argument {
public:
    ConfigError(const std::string& field, const std::string& message)
        : std::invalid_argument("config field '" + field + "': " + message), field_(field) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class FitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// `name:key=value,...` or `file:path`.
struct MatrixSpec {
    std::string name;
    std::map<std::string, std::string> params;
    std::string path;  // only for name == "file"
};

MatrixSpec parse_matrix_spec(std::string_view text);

struct LoadedMatrix {
    SymMatrix dense;
    SparseSymStore store;
    std::string label;
    std::optional<std::filesystem::path> source_file;
};

// Generators: block, identity, er, powerlaw, tanh, tps, tridiag, tensor,
// random, psd, sparse; plus file: (.mtx read as Matrix Market, anything else
// as an edge list).
LoadedMatrix build_matrix(const MatrixSpec& spec);

enum class SamplerId {
    uniform,
    nnz_practical,
    nnz_theorem,
    nnz_simple,
    norm,
    norm_theorem,
    entrywise,
    singular,
    psd,
};

std::string_view to_string(SamplerId id) noexcept;
std::optional<SamplerId> parse_sampler(std::string_view name);

struct ExperimentConfig {
    std::string experiment_id = "exp";
    std::string matrix_spec;
    std::vector<SamplerId> samplers{SamplerId::uniform};
    std::vector<double> sample_fractions;
    std::size_t trials = 50;
    // Spectrum positions: 1 = largest; "n" = smallest; "n-k" counts up from the bottom.
    std::vector<std::string> targets{"1"};
    std::uint64_t seed = 0;
    double c2 = 0.1;           // practical zeroing constant
    double eps = 0.5;          // theorem zeroing accuracy
    double theorem_c2 = 64.0;  // theorem zeroing constant
    double entrywise_p = 0.5;
    double tol = kDefaultSolverTol;
    bool zero_baseline = true;
    bool timing = false;  // when false elapsed_ms is written as 0 so output is reproducible
    bool cache_spectrum = true;
    std::string output_path;
};

// Sets one `key = value` field. Throws ConfigError naming the field.
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value);
// Parses `key = value` lines; '#' starts a comment; blank lines ignored.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::filesystem::path& path);
void validate(const ExperimentConfig& cfg);
// Resolves a target token against dimension n to a 1-based index.
std::size_t resolve_target(const std::string& token, std::size_t n);

struct ResultRow {
    std::string experiment_id;
    std::string sampler;
    std::size_t n = 0;
    double s = 0.0;
    double sample_fraction = 0.0;
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    std::size_t target_index = 0;
    double true_eig = 0.0;
    double est_eig = 0.0;
    double abs_err = 0.0;
    double scaled_err = 0.0;
    std::size_t zeroed_count = 0;
    std::size_t sample_size = 0;
    double elapsed_ms = 0.0;
};

std::string_view csv_header() noexcept;
void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);
std::vector<ResultRow> read_csv(std::istream& in);

// Seed of one trial cell; independent of which other samplers are configured.
std::uint64_t trial_seed(std::uint64_t master, SamplerId sampler, std::size_t fraction_index, std::size_t trial);

// Exact spectrum, cached beside file inputs keyed by a content hash.
Spectrum exact_spectrum(const LoadedMatrix& m, double tol, bool use_cache);

// Runs every (sampler, fraction, trial) cell and returns rows ordered by
// (sampler, fraction, trial, target), zero-baseline rows last. Solver failures
// become rows with NaN estimates.
std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg, const LoadedMatrix& matrix);
// Builds the matrix from cfg.matrix_spec, runs, and writes cfg.output_path if set.
std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg);

// Least-squares slope of log(mean scaled_err) against log(sample_fraction)
// over the fractions whose mean error is nonzero. Needs at least three.
double slope_fit(const std::vector<ResultRow>& rows, std::string_view sampler, std::size_t target_index);

// Command-line entry point: run | spectrum | slope | bench.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace eigsample

#include "eigsample/harness.hpp"

#include "eigsample/estimators.hpp"
#include "eigsample/generators.hpp"
#include "eigsample/rng.hpp"
#include "eigsample/samplers.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <system_error>

namespace eigsample {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

bool parse_double(const std::string& text, double& out) {
    if (text.empty()) return false;
    char* end = nullptr;
    out = std::strtod(text.c_str(), &end);
    return end == text.c_str() + text.size();
}

template <class T>
bool parse_unsigned(const std::string& text, T& out) {
    if (text.empty()) return false;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc() && ptr == text.data() + text.size();
}

double double_field(const std::string& field, const std::string& value) {
    double v = 0.0;
    if (!parse_double(value, v) || !std::isfinite(v)) throw ConfigError(field, "expected a number, got '" + value + "'");
    return v;
}

std::uint64_t uint_field(const std::string& field, const std::string& value) {
    std::uint64_t v = 0;
    if (!parse_unsigned(value, v)) throw ConfigError(field, "expected a nonnegative integer, got '" + value + "'");
    return v;
}

bool bool_field(const std::string& field, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError(field, "expected true or false, got '" + value + "'");
}

// Parameter lookup for the matrix mini-language. Every access is recorded so
// leftover (misspelled) keys can be reported.
class Params {
public:
    explicit Params(const MatrixSpec& spec) : spec_(spec) {}

    std::size_t size(const std::string& key, std::optional<std::size_t> fallback = std::nullopt) {
        const auto* v = find(key);
        if (!v) return required(key, fallback);
        std::size_t out = 0;
        if (!parse_unsigned(*v, out)) throw ConfigError("matrix_spec", key + " must be a nonnegative integer");
        return out;
    }

    double real(const std::string& key, std::optional<double> fallback = std::nullopt) {
        const auto* v = find(key);
        if (!v) return required(key, fallback);
        double out = 0.0;
        if (!parse_double(*v, out) || !std::isfinite(out)) throw ConfigError("matrix_spec", key + " must be a number");
        return out;
    }

    void finish() const {
        for (const auto& [k, v] : spec_.params)
            if (!used_.count(k)) throw ConfigError("matrix_spec", "unknown parameter '" + k + "' for " + spec_.name);
    }

private:
    const std::string* find(const std::string& key) {
        used_.insert({key, 0});
        const auto it = spec_.params.find(key);
        return it == spec_.params.end() ? nullptr : &it->second;
    }

    template <class T>
    T required(const std::string& key, std::optional<T> fallback) const {
        if (!fallback) throw ConfigError("matrix_spec", spec_.name + " needs parameter " + key);
        return *fallback;
    }

    const MatrixSpec& spec_;
    std::map<std::string, int> used_;
};

void check_dense_size(std::size_t n) {
    if (n == 0) throw ConfigError("matrix_spec", "n must be positive");
    if (n > kDenseSizeCap)
        throw ConfigError("matrix_spec", "n=" + std::to_string(n) + " exceeds the dense cap " +
                                             std::to_string(kDenseSizeCap));
}

LoadedMatrix from_dense(SymMatrix a, std::string label) {
    LoadedMatrix m;
    m.store = SparseSymStore::from_dense(a);
    m.dense = std::move(a);
    m.label = std::move(label);
    return m;
}

LoadedMatrix from_store(SparseSymStore s, std::string label) {
    check_dense_size(s.size());
    LoadedMatrix m;
    m.dense = s.to_dense();
    m.store = std::move(s);
    m.label = std::move(label);
    return m;
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

MatrixSpec parse_matrix_spec(std::string_view text) {
    const std::string t = trim(text);
    MatrixSpec spec;
    const auto colon = t.find(':');
    spec.name = trim(std::string_view(t).substr(0, colon));
    if (spec.name.empty()) throw ConfigError("matrix_spec", "missing generator name");
    if (colon == std::string::npos) return spec;
    const std::string rest = t.substr(colon + 1);
    if (spec.name == "file") {
        spec.path = trim(rest);
        if (spec.path.empty()) throw ConfigError("matrix_spec", "file: needs a path");
        return spec;
    }
    if (trim(rest).empty()) return spec;
    for (const auto& item : split(rest, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ConfigError("matrix_spec", "expected param=value, got '" + item + "'");
        const std::string key = trim(std::string_view(item).substr(0, eq));
        const std::string value = trim(std::string_view(item).substr(eq + 1));
        if (key.empty() || value.empty()) throw ConfigError("matrix_spec", "expected param=value, got '" + item + "'");
        if (!spec.params.emplace(key, value).second) throw ConfigError("matrix_spec", "repeated parameter " + key);
    }
    return spec;
}

LoadedMatrix build_matrix(const MatrixSpec& spec) {
    const std::string& name = spec.name;
    if (name == "file") {
        const std::filesystem::path path(spec.path);
        SparseSymStore store = path.extension() == ".mtx" ? load_matrix_market(path) : load_edge_list(path);
        LoadedMatrix m = from_store(std::move(store), "file:" + spec.path);
        m.source_file = path;
        return m;
    }

    Params p(spec);
    LoadedMatrix m;
    if (name == "block") {
        const std::size_t n = p.size("n");
        const std::size_t k = p.size("k", n / 2);
        check_dense_size(n);
        if (k > n) throw ConfigError("matrix_spec", "block size k exceeds n");
        m = from_dense(block_matrix(n, k), "block");
    } else if (name == "identity") {
        const std::size_t n = p.size("n");
        check_dense_size(n);
        m = from_dense(SymMatrix::identity(n), "identity");
    } else if (name == "er") {
        const std::size_t n = p.size("n");
        const double prob = p.real("p");
        Rng rng(p.size("seed", 0));
        if (prob < 0.0 || prob > 1.0) throw ConfigError("matrix_spec", "p must lie in [0, 1]");
        check_dense_size(n);
        m = from_store(erdos_renyi(n, prob, rng), "er");
    } else if (name == "powerlaw") {
        const std::size_t n = p.size("n");
        const double exponent = p.real("exponent", 2.5);
        const std::size_t min_degree = p.size("min_degree", 2);
        Rng rng(p.size("seed", 0));
        if (exponent <= 1.0) throw ConfigError("matrix_spec", "exponent must exceed 1");
        check_dense_size(n);
        m = from_store(power_law_graph(n, exponent, min_degree, rng), "powerlaw");
    } else if (name == "tanh" || name == "tps") {
        const std::size_t n = p.size("n");
        Rng rng(p.size("seed", 0));
        check_dense_size(n);
        const PointCloud pc = synthetic_point_cloud(n, rng);
        m = from_dense(name == "tanh" ? tanh_similarity(pc) : thin_plate_spline(pc), name);
    } else if (name == "tridiag") {
        const std::size_t n = p.size("n");
        if (n < 2) throw ConfigError("matrix_spec", "tridiag needs n >= 2");
        m = from_store(tridiagonal_ones(n), "tridiag");
    } else if (name == "tensor") {
        const std::size_t q = p.size("inv_eps_sq");
        const std::size_t block = p.size("block");
        Rng rng(p.size("seed", 0));
        if (q == 0 || block == 0) throw ConfigError("matrix_spec", "tensor sizes must be positive");
        check_dense_size(q * block);
        m = from_dense(tensor_hard_instance(q, block, rng), "tensor");
    } else if (name == "random") {
        const std::size_t n = p.size("n");
        Rng rng(p.size("seed", 0));
        check_dense_size(n);
        m = from_dense(random_symmetric(n, rng), "random");
    } else if (name == "psd") {
        const std::size_t n = p.size("n");
        const std::size_t rank = p.size("rank", 10);
        Rng rng(p.size("seed", 0));
        check_dense_size(n);
        if (rank == 0) throw ConfigError("matrix_spec", "rank must be positive");
        m = from_dense(random_psd(n, rank, rng), "psd");
    } else if (name == "sparse") {
        const std::size_t n = p.size("n");
        const double density = p.real("density", 0.05);
        Rng rng(p.size("seed", 0));
        if (density < 0.0 || density > 1.0) throw ConfigError("matrix_spec", "density must lie in [0, 1]");
        check_dense_size(n);
        m = from_store(random_sparse_symmetric(n, density, rng), "sparse");
    } else {
        throw ConfigError("matrix_spec", "unknown generator '" + name + "'");
    }
    p.finish();
    return m;
}

std::string_view to_string(SamplerId id) noexcept {
    switch (id) {
        case SamplerId::uniform: return "uniform";
        case SamplerId::nnz_practical: return "nnz_practical";
        case SamplerId::nnz_theorem: return "nnz_theorem";
        case SamplerId::nnz_simple: return "nnz_simple";
        case SamplerId::norm: return "norm";
        case SamplerId::norm_theorem: return "norm_theorem";
        case SamplerId::entrywise: return "entrywise";
        case SamplerId::singular: return "singular";
        case SamplerId::psd: return "psd";
    }
    return "unknown";
}

std::optional<SamplerId> parse_sampler(std::string_view name) {
    for (auto id : {SamplerId::uniform, SamplerId::nnz_practical, SamplerId::nnz_theorem, SamplerId::nnz_simple,
                    SamplerId::norm, SamplerId::norm_theorem, SamplerId::entrywise, SamplerId::singular,
                    SamplerId::psd})
        if (to_string(id) == name) return id;
    return std::nullopt;
}

void apply_setting(ExperimentConfig& cfg, const std::string& raw_key, const std::string& raw_value) {
    const std::string key = trim(raw_key);
    const std::string value = trim(raw_value);
    if (key == "experiment_id") {
        if (value.empty() || value.find_first_of(",\n\"") != std::string::npos)
            throw ConfigError(key, "must be nonempty and free of commas and quotes");
        cfg.experiment_id = value;
    } else if (key == "matrix_spec") {
        parse_matrix_spec(value);
        cfg.matrix_spec = value;
    } else if (key == "samplers") {
        cfg.samplers.clear();
        for (const auto& item : split(value, ',')) {
            const auto id = parse_sampler(item);
            if (!id) throw ConfigError(key, "unknown sampler '" + item + "'");
            if (std::find(cfg.samplers.begin(), cfg.samplers.end(), *id) != cfg.samplers.end())
                throw ConfigError(key, "sampler '" + item + "' listed twice");
            cfg.samplers.push_back(*id);
        }
    } else if (key == "sample_fractions") {
        cfg.sample_fractions.clear();
        for (const auto& item : split(value, ',')) cfg.sample_fractions.push_back(double_field(key, item));
    } else if (key == "trials") {
        cfg.trials = static_cast<std::size_t>(uint_field(key, value));
    } else if (key == "target_indices") {
        cfg.targets.clear();
        for (const auto& item : split(value, ',')) {
            resolve_target(item, std::numeric_limits<std::size_t>::max() / 2);
            cfg.targets.push_back(item);
        }
    } else if (key == "seed") {
        cfg.seed = uint_field(key, value);
    } else if (key == "c2") {
        cfg.c2 = double_field(key, value);
    } else if (key == "eps") {
        cfg.eps = double_field(key, value);
    } else if (key == "theorem_c2") {
        cfg.theorem_c2 = double_field(key, value);
    } else if (key == "entrywise_p") {
        cfg.entrywise_p = double_field(key, value);
    } else if (key == "tol") {
        cfg.tol = double_field(key, value);
    } else if (key == "zero_baseline") {
        cfg.zero_baseline = bool_field(key, value);
    } else if (key == "timing") {
        cfg.timing = bool_field(key, value);
    } else if (key == "cache_spectrum") {
        cfg.cache_spectrum = bool_field(key, value);
    } else if (key == "output_path") {
        cfg.output_path = value;
    } else {
        throw ConfigError(key, "unknown key");
    }
}

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        const std::string body = trim(std::string_view(line).substr(0, hash));
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno), "expected 'key = value'");
        apply_setting(cfg, body.substr(0, eq), body.substr(eq + 1));
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path.string());
    return parse_config(in);
}

void validate(const ExperimentConfig& cfg) {
    if (cfg.matrix_spec.empty()) throw ConfigError("matrix_spec", "required");
    if (cfg.samplers.empty()) throw ConfigError("samplers", "at least one sampler required");
    if (cfg.sample_fractions.empty()) throw ConfigError("sample_fractions", "at least one fraction required");
    for (double f : cfg.sample_fractions)
        if (!(f > 0.0 && f <= 1.0)) throw ConfigError("sample_fractions", "fractions must lie in (0, 1]");
    if (cfg.trials < 1) throw ConfigError("trials", "must be at least 1");
    if (cfg.targets.empty()) throw ConfigError("target_indices", "at least one target required");
    if (!(cfg.c2 > 0.0)) throw ConfigError("c2", "must be positive");
    if (!(cfg.eps > 0.0)) throw ConfigError("eps", "must be positive");
    if (!(cfg.theorem_c2 > 0.0)) throw ConfigError("theorem_c2", "must be positive");
    if (!(cfg.entrywise_p > 0.0 && cfg.entrywise_p <= 1.0)) throw ConfigError("entrywise_p", "must lie in (0, 1]");
    if (!(cfg.tol > 0.0)) throw ConfigError("tol", "must be positive");
}

std::size_t resolve_target(const std::string& token, std::size_t n) {
    const std::string t = trim(token);
    std::size_t idx = 0;
    if (t == "n") {
        idx = n;
    } else if (t.rfind("n-", 0) == 0) {
        std::size_t k = 0;
        if (!parse_unsigned(t.substr(2), k)) throw ConfigError("target_indices", "bad target '" + t + "'");
        if (k >= n) throw ConfigError("target_indices", "target '" + t + "' out of range for n=" + std::to_string(n));
        idx = n - k;
    } else {
        if (!parse_unsigned(t, idx) || idx == 0) throw ConfigError("target_indices", "bad target '" + t + "'");
    }
    if (idx > n) throw ConfigError("target_indices", "target " + t + " out of range for n=" + std::to_string(n));
    return idx;
}

std::string_view csv_header() noexcept {
    return "experiment_id,sampler,n,s,sample_fraction,trial,seed,target_index,true_eig,est_eig,abs_err,scaled_err,"
           "zeroed_count,sample_size,elapsed_ms";
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
    out << csv_header() << '\n';
    for (const auto& r : rows) {
        out << r.experiment_id << ',' << r.sampler << ',' << r.n << ',' << fmt17(r.s) << ',' << fmt17(r.sample_fraction)
            << ',' << r.trial << ',' << r.seed << ',' << r.target_index << ',' << fmt17(r.true_eig) << ','
            << fmt17(r.est_eig) << ',' << fmt17(r.abs_err) << ',' << fmt17(r.scaled_err) << ',' << r.zeroed_count
            << ',' << r.sample_size << ',' << fmt17(r.elapsed_ms) << '\n';
    }
}

std::vector<ResultRow> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty CSV", 1);
    if (trim(line) != csv_header()) throw ParseError("unexpected CSV header", 1);
    std::vector<ResultRow> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 15) throw ParseError("expected 15 fields, got " + std::to_string(f.size()), lineno);
        ResultRow r;
        bool ok = true;
        auto real = [&](const std::string& s, double& out) {
            if (s == "nan" || s == "-nan") {
                out = std::numeric_limits<double>::quiet_NaN();
                return;
            }
            ok = parse_double(s, out) && ok;
        };
        r.experiment_id = f[0];
        r.sampler = f[1];
        ok = parse_unsigned(f[2], r.n) && ok;
        real(f[3], r.s);
        real(f[4], r.sample_fraction);
        ok = parse_unsigned(f[5], r.trial) && ok;
        ok = parse_unsigned(f[6], r.seed) && ok;
        ok = parse_unsigned(f[7], r.target_index) && ok;
        real(f[8], r.true_eig);
        real(f[9], r.est_eig);
        real(f[10], r.abs_err);
        real(f[11], r.scaled_err);
        ok = parse_unsigned(f[12], r.zeroed_count) && ok;
        ok = parse_unsigned(f[13], r.sample_size) && ok;
        real(f[14], r.elapsed_ms);
        if (!ok) throw ParseError("malformed CSV field", lineno);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::uint64_t trial_seed(std::uint64_t master, SamplerId sampler, std::size_t fraction_index, std::size_t trial) {
    return derive_seed(master, {hash_tag(to_string(sampler)), fraction_index, trial});
}

Spectrum exact_spectrum(const LoadedMatrix& m, double tol, bool use_cache) {
    if (!use_cache || !m.source_file) return sym_eigvals(m.dense, tol);

    std::ifstream src(*m.source_file, std::ios::binary);
    std::ostringstream bytes;
    bytes << src.rdbuf();
    char key[40];
    std::snprintf(key, sizeof key, "%016llx", static_cast<unsigned long long>(derive_seed(
                                                  hash_tag(bytes.str()), {hash_tag(fmt17(tol))})));
    std::filesystem::path cache = *m.source_file;
    cache += std::string(".spectrum-") + key;

    const std::size_t n = m.dense.size();
    if (std::ifstream in(cache); in) {
        std::vector<double> vals;
        std::string line;
        while (std::getline(in, line)) {
            double v = 0.0;
            if (!parse_double(trim(line), v)) break;
            vals.push_back(v);
        }
        if (vals.size() == n && is_non_increasing(vals)) return Spectrum::from_sorted(std::move(vals));
    }
    Spectrum s = sym_eigvals(m.dense, tol);
    std::ofstream out(cache);
    if (out) {
        for (double v : s) out << fmt17(v) << '\n';
    }
    return s;
}

namespace {

struct CellResult {
    Spectrum estimates;
    std::size_t zeroed_count = 0;
    std::size_t sample_size = 0;
    double elapsed_ms = 0.0;
    bool failed = false;
};

CellResult run_cell(const ExperimentConfig& cfg, const LoadedMatrix& m, SamplerId id, double s, Rng& rng) {
    EstimateReport r;
    switch (id) {
        case SamplerId::uniform: r = estimate_uniform(m.dense, s, rng, cfg.tol); break;
        case SamplerId::nnz_practical:
            r = estimate_nnz(m.store, s, ZeroingRule::practical(cfg.c2), rng, cfg.tol);
            break;
        case SamplerId::nnz_theorem:
            r = estimate_nnz(m.store, s, ZeroingRule::theorem(cfg.eps, cfg.theorem_c2), rng, cfg.tol);
            break;
        case SamplerId::nnz_simple: r = estimate_nnz(m.store, s, ZeroingRule::off(), rng, cfg.tol); break;
        case SamplerId::norm: r = estimate_norm(m.store, s, ZeroingRule::off(), rng, cfg.tol); break;
        case SamplerId::norm_theorem:
            r = estimate_norm(m.store, s, ZeroingRule::theorem(cfg.eps, cfg.theorem_c2), rng, cfg.tol);
            break;
        case SamplerId::entrywise: r = estimate_entrywise_pipeline(m.dense, s, cfg.entrywise_p, rng, cfg.tol); break;
        case SamplerId::singular: r = estimate_singular(m.dense, s, rng, cfg.tol); break;
        case SamplerId::psd: r = estimate_psd(m.dense, s, rng, cfg.tol); break;
    }
    CellResult c;
    c.estimates = std::move(r.estimates);
    c.zeroed_count = r.zeroed_count;
    c.sample_size = r.sample_size;
    if (cfg.timing) c.elapsed_ms = std::chrono::duration<double, std::milli>(r.elapsed).count();
    return c;
}

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg, const LoadedMatrix& matrix) {
    validate(cfg);
    const std::size_t n = matrix.dense.size();
    const std::size_t nnz = matrix.store.total_nnz();
    if (nnz == 0) throw ConfigError("matrix_spec", "matrix has no nonzero entries");
    const double root_nnz = std::sqrt(static_cast<double>(nnz));

    std::vector<std::size_t> targets;
    for (const auto& t : cfg.targets) targets.push_back(resolve_target(t, n));

    const Spectrum truth = exact_spectrum(matrix, cfg.tol, cfg.cache_spectrum);
    std::vector<double> sv(truth.begin(), truth.end());
    for (double& v : sv) v = std::abs(v);
    const Spectrum singular_truth = Spectrum::from_unsorted(std::move(sv));

    std::vector<ResultRow> rows;
    for (SamplerId id : cfg.samplers) {
        const Spectrum& ref = id == SamplerId::singular ? singular_truth : truth;
        for (std::size_t fi = 0; fi < cfg.sample_fractions.size(); ++fi) {
            const double fraction = cfg.sample_fractions[fi];
            const double s = fraction * static_cast<double>(n);
            for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
                const std::uint64_t seed = trial_seed(cfg.seed, id, fi, trial);
                Rng rng(seed);
                CellResult cell;
                try {
                    cell = run_cell(cfg, matrix, id, s, rng);
                } catch (const SolverError&) {
                    cell.failed = true;
                }
                for (std::size_t target : targets) {
                    ResultRow r;
                    r.experiment_id = cfg.experiment_id;
                    r.sampler = std::string(to_string(id));
                    r.n = n;
                    r.s = s;
                    r.sample_fraction = fraction;
                    r.trial = trial;
                    r.seed = seed;
                    r.target_index = target;
                    r.true_eig = ref[target - 1];
                    r.est_eig = cell.failed ? std::numeric_limits<double>::quiet_NaN() : cell.estimates[target - 1];
                    r.abs_err = std::abs(r.true_eig - r.est_eig);
                    r.scaled_err = r.abs_err / root_nnz;
                    r.zeroed_count = cell.zeroed_count;
                    r.sample_size = cell.sample_size;
                    r.elapsed_ms = cell.elapsed_ms;
                    rows.push_back(std::move(r));
                }
            }
        }
    }
    if (cfg.zero_baseline) {
        for (std::size_t target : targets) {
            ResultRow r;
            r.experiment_id = cfg.experiment_id;
            r.sampler = "zero";
            r.n = n;
            r.target_index = target;
            r.true_eig = truth[target - 1];
            r.est_eig = 0.0;
            r.abs_err = std::abs(r.true_eig);
            r.scaled_err = r.abs_err / root_nnz;
            rows.push_back(std::move(r));
        }
    }
    return rows;
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg) {
    validate(cfg);
    const LoadedMatrix m = build_matrix(parse_matrix_spec(cfg.matrix_spec));
    auto rows = run_experiment(cfg, m);
    if (!cfg.output_path.empty()) {
        std::ofstream out(cfg.output_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + cfg.output_path);
        write_csv(out, rows);
        if (!out) throw std::runtime_error("write failed for " + cfg.output_path);
    }
    return rows;
}

double slope_fit(const std::vector<ResultRow>& rows, std::string_view sampler, std::size_t target_index) {
    std::map<double, std::pair<double, std::size_t>> by_fraction;
    for (const auto& r : rows) {
        if (r.sampler != sampler || r.target_index != target_index) continue;
        if (!std::isfinite(r.scaled_err)) continue;
        auto& [sum, count] = by_fraction[r.sample_fraction];
        sum += r.scaled_err;
        ++count;
    }
    std::vector<double> xs, ys;
    for (const auto& [fraction, acc] : by_fraction) {
        const double mean = acc.first / static_cast<double>(acc.second);
        if (!(fraction > 0.0) || !(mean > 0.0)) continue;
        xs.push_back(std::log(fraction));
        ys.push_back(std::log(mean));
    }
    if (xs.size() < 3)
        throw FitError("slope fit for " + std::string(sampler) + " target " + std::to_string(target_index) +
                       " needs 3 fractions with nonzero mean error, found " + std::to_string(xs.size()));
    const double k = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= k;
    my /= k;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    return sxy / sxx;
}

}  // namespace eigsample

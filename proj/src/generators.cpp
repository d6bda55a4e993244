#include "eigsample/generators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>

namespace eigsample {

namespace {

void check_dense_size(std::size_t n, const char* who) {
    if (n > kDenseSizeCap)
        throw std::invalid_argument(std::string(who) + ": dimension " + std::to_string(n) + " exceeds cap " +
                                    std::to_string(kDenseSizeCap));
}

}  // namespace

SymMatrix block_matrix(std::size_t n, std::size_t k) {
    if (k < 1 || k > n) throw std::invalid_argument("block_matrix: need 1 <= k <= n");
    check_dense_size(n, "block_matrix");
    SymMatrix a(n);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i; j < k; ++j) a.set(i, j, 1.0);
    return a;
}

SparseSymStore erdos_renyi(std::size_t n, double p, Rng& rng) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("erdos_renyi: p must lie in [0,1]");
    std::vector<Entry> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (rng.bernoulli(p)) edges.push_back({i, j, 1.0});
    return SparseSymStore::build(n, edges);
}

SparseSymStore power_law_graph(std::size_t n, double exponent, std::size_t min_degree, Rng& rng) {
    if (!(exponent > 1.0)) throw std::invalid_argument("power_law_graph: exponent must exceed 1");
    if (min_degree < 1) throw std::invalid_argument("power_law_graph: min_degree must be positive");
    if (n < 2) return SparseSymStore(n);
    std::vector<std::size_t> stubs;
    const double tail = 1.0 / (exponent - 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        double u;
        do {
            u = rng.uniform();
        } while (u == 0.0);
        const double d = static_cast<double>(min_degree) * std::pow(u, -tail);
        const auto degree = static_cast<std::size_t>(std::min(std::floor(d), static_cast<double>(n - 1)));
        stubs.insert(stubs.end(), degree, i);
    }
    if (stubs.size() % 2 == 1) stubs.pop_back();
    for (std::size_t k = stubs.size(); k > 1; --k) std::swap(stubs[k - 1], stubs[rng.below(k)]);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    std::vector<Entry> edges;
    for (std::size_t k = 0; k + 1 < stubs.size(); k += 2) {
        const std::size_t a = std::min(stubs[k], stubs[k + 1]);
        const std::size_t b = std::max(stubs[k], stubs[k + 1]);
        if (a == b || !seen.insert({a, b}).second) continue;
        edges.push_back({a, b, 1.0});
    }
    return SparseSymStore::build(n, edges);
}

SymMatrix tanh_similarity(const PointCloud& pc) {
    const std::size_t n = pc.points.size();
    if (n == 0) throw std::invalid_argument("tanh_similarity: empty point cloud");
    check_dense_size(n, "tanh_similarity");
    SymMatrix a(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& x = pc.points[i];
        for (std::size_t j = i; j < n; ++j) {
            const auto& y = pc.points[j];
            a.set(i, j, std::tanh((x[0] * y[0] + x[1] * y[1]) / 2.0));
        }
    }
    return a;
}

SymMatrix thin_plate_spline(const PointCloud& pc) {
    const std::size_t n = pc.points.size();
    if (n == 0) throw std::invalid_argument("thin_plate_spline: empty point cloud");
    check_dense_size(n, "thin_plate_spline");
    SymMatrix a(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& x = pc.points[i];
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto& y = pc.points[j];
            const double dx = x[0] - y[0];
            const double dy = x[1] - y[1];
            const double r2 = dx * dx + dy * dy;
            if (r2 > 0.0) a.set(i, j, r2 * std::log(r2));
        }
    }
    return a;
}

PointCloud synthetic_point_cloud(std::size_t n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("synthetic_point_cloud: n must be positive");
    PointCloud pc;
    pc.points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double theta = 2.0 * std::numbers::pi * rng.uniform();
        const double radius = 0.3 + 0.08 * std::sin(3.0 * theta) + 0.05 * std::cos(5.0 * theta);
        const double x = 0.5 + radius * std::cos(theta) + 0.01 * rng.normal();
        const double y = 0.5 + radius * std::sin(theta) + 0.01 * rng.normal();
        pc.points.push_back({std::clamp(x, 0.0, 1.0), std::clamp(y, 0.0, 1.0)});
    }
    return pc;
}

SparseSymStore tridiagonal_ones(std::size_t n) {
    if (n < 2) throw std::invalid_argument("tridiagonal_ones: n must be at least 2");
    std::vector<Entry> entries;
    for (std::size_t i = 0; i + 1 < n; ++i) entries.push_back({i, i + 1, 1.0});
    return SparseSymStore::build(n, entries);
}

SymMatrix tensor_hard_instance(std::size_t inv_eps_sq, std::size_t block, Rng& rng) {
    if (inv_eps_sq < 1 || block < 1) throw std::invalid_argument("tensor_hard_instance: sizes must be positive");
    const std::size_t n = inv_eps_sq * block;
    check_dense_size(n, "tensor_hard_instance");
    std::vector<double> signs(inv_eps_sq * inv_eps_sq);
    for (std::size_t i = 0; i < inv_eps_sq; ++i)
        for (std::size_t j = i; j < inv_eps_sq; ++j) {
            const double s = rng.sign();
            signs[i * inv_eps_sq + j] = s;
            signs[j * inv_eps_sq + i] = s;
        }
    SymMatrix a(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) a.set(i, j, signs[(i / block) * inv_eps_sq + j / block]);
    return a;
}

SymMatrix random_symmetric(std::size_t n, Rng& rng) {
    check_dense_size(n, "random_symmetric");
    SymMatrix a(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) a.set(i, j, rng.uniform(-1.0, 1.0));
    return a;
}

SymMatrix random_psd(std::size_t n, std::size_t rank, Rng& rng) {
    if (rank < 1) throw std::invalid_argument("random_psd: rank must be positive");
    check_dense_size(n, "random_psd");
    std::vector<double> b(n * rank);
    for (std::size_t i = 0; i < n; ++i) {
        double norm2 = 0.0;
        for (std::size_t k = 0; k < rank; ++k) {
            const double v = rng.normal();
            b[i * rank + k] = v;
            norm2 += v * v;
        }
        const double inv = 1.0 / std::sqrt(norm2);
        for (std::size_t k = 0; k < rank; ++k) b[i * rank + k] *= inv;
    }
    SymMatrix a(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            double dot = 0.0;
            for (std::size_t k = 0; k < rank; ++k) dot += b[i * rank + k] * b[j * rank + k];
            a.set(i, j, std::clamp(dot, -1.0, 1.0));
        }
    return a;
}

SparseSymStore random_sparse_symmetric(std::size_t n, double density, Rng& rng) {
    if (!(density >= 0.0 && density <= 1.0)) throw std::invalid_argument("random_sparse_symmetric: bad density");
    std::vector<Entry> entries;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            if (rng.bernoulli(density)) {
                double v;
                do {
                    v = rng.uniform(-1.0, 1.0);
                } while (v == 0.0);
                entries.push_back({i, j, v});
            }
    return SparseSymStore::build(n, entries);
}

SparseSymStore load_edge_list(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_edge_list: cannot open " + path.string());
    std::unordered_map<std::string, std::size_t> ids;
    auto id_of = [&](const std::string& token) {
        auto [it, inserted] = ids.try_emplace(token, ids.size());
        return it->second;
    };
    std::vector<Entry> edges;
    std::set<std::pair<std::size_t, std::size_t>> seen;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream fields(line);
        std::string u, v, extra;
        if (!(fields >> u >> v) || (fields >> extra))
            throw ParseError("load_edge_list: expected two node ids", lineno);
        const std::size_t a = id_of(u);
        const std::size_t b = id_of(v);
        if (a == b) continue;
        if (seen.insert({std::min(a, b), std::max(a, b)}).second) edges.push_back({a, b, 1.0});
    }
    return SparseSymStore::build(ids.size(), edges);
}

SparseSymStore load_matrix_market(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_matrix_market: cannot open " + path.string());
    std::string line;
    std::size_t lineno = 1;
    if (!std::getline(in, line)) throw FormatError("load_matrix_market: empty file");
    std::istringstream header(line);
    std::string banner, object, format, field, symmetry;
    header >> banner >> object >> format >> field >> symmetry;
    auto lower = [](std::string s) {
        std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        return s;
    };
    object = lower(object);
    format = lower(format);
    field = lower(field);
    symmetry = lower(symmetry);
    if (banner != "%%MatrixMarket" || object != "matrix") throw FormatError("load_matrix_market: missing banner");
    if (format != "coordinate") throw FormatError("load_matrix_market: only coordinate format is supported");
    if (field != "real" && field != "integer" && field != "pattern")
        throw FormatError("load_matrix_market: unsupported field '" + field + "'");
    if (symmetry != "symmetric" && symmetry != "general")
        throw FormatError("load_matrix_market: unsupported symmetry '" + symmetry + "'");
    const bool pattern = field == "pattern";

    std::size_t rows = 0, cols = 0, count = 0;
    bool have_size = false;
    std::vector<Entry> entries;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '%') continue;
        std::istringstream fields(line);
        if (!have_size) {
            if (!(fields >> rows >> cols >> count)) throw ParseError("load_matrix_market: bad size line", lineno);
            if (rows != cols) throw FormatError("load_matrix_market: matrix is not square");
            have_size = true;
            entries.reserve(count);
            continue;
        }
        std::size_t i = 0, j = 0;
        double v = 1.0;
        if (!(fields >> i >> j) || (!pattern && !(fields >> v)))
            throw ParseError("load_matrix_market: bad entry", lineno);
        if (i < 1 || j < 1 || i > rows || j > cols) throw ParseError("load_matrix_market: index out of range", lineno);
        entries.push_back({i - 1, j - 1, v});
    }
    if (!have_size) throw FormatError("load_matrix_market: missing size line");
    if (entries.size() != count)
        throw FormatError("load_matrix_market: expected " + std::to_string(count) + " entries, found " +
                          std::to_string(entries.size()));
    return SparseSymStore::build(rows, entries);
}

void write_matrix_market(const SparseSymStore& store, const std::filesystem::path& path) {
    std::FILE* f = std::fopen(path.string().c_str(), "w");
    if (!f) throw std::runtime_error("write_matrix_market: cannot open " + path.string());
    const auto entries = store.upper_entries();
    std::fprintf(f, "%%%%MatrixMarket matrix coordinate real symmetric\n");
    std::fprintf(f, "%zu %zu %zu\n", store.size(), store.size(), entries.size());
    // Lower triangle, as the symmetric convention expects.
    for (const Entry& e : entries) std::fprintf(f, "%zu %zu %.17g\n", e.col + 1, e.row + 1, e.value);
    std::fclose(f);
}

}  // namespace eigsample

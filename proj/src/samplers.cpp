#include "eigsample/samplers.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace eigsample {

namespace {

void check_positive_s(double s, const char* who) {
    if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument(std::string(who) + ": s must be positive");
}

void check_s(double s, std::size_t n, const char* who) {
    check_positive_s(s, who);
    if (s > static_cast<double>(n)) throw std::invalid_argument(std::string(who) + ": s must not exceed n");
}

void check_eps(const ZeroingRule& rule, const char* who) {
    if (rule.kind == ZeroingRule::Kind::theorem && !(rule.eps > 0.0 && rule.eps < 1.0))
        throw std::invalid_argument(std::string(who) + ": theorem zeroing needs eps in (0,1)");
    if (rule.kind != ZeroingRule::Kind::off && !(rule.c2 > 0.0))
        throw std::invalid_argument(std::string(who) + ": zeroing constant c2 must be positive");
}

SampleSet draw(std::span<const double> probs, SampleMode mode, Rng& rng) {
    SampleSet set;
    set.mode = mode;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (rng.bernoulli(probs[i])) {
            set.indices.push_back(i);
            set.probs.push_back(probs[i]);
        }
    }
    return set;
}

// Builds the rescaled |S| x |S| matrix from the store, asking `drop(i, j, a_ij)`
// whether each stored entry is zeroed.
template <typename Drop>
SampledSubmatrix rescaled_submatrix(const SparseSymStore& store, SampleSet set, Drop&& drop) {
    SampledSubmatrix out;
    const std::size_t m = set.size();
    std::vector<std::ptrdiff_t> position(store.size(), -1);
    for (std::size_t a = 0; a < m; ++a) position[set.indices[a]] = static_cast<std::ptrdiff_t>(a);

    SymMatrix mat(m);
    for (std::size_t a = 0; a < m; ++a) {
        const std::size_t i = set.indices[a];
        for (const auto& cell : store.row(i)) {
            if (cell.col < i || position[cell.col] < 0) continue;
            if (drop(i, cell.col, cell.value)) {
                ++out.zeroed_count;
                continue;
            }
            const auto b = static_cast<std::size_t>(position[cell.col]);
            mat.set(a, b, cell.value / std::sqrt(set.probs[a] * set.probs[b]));
        }
    }
    out.sample = std::move(set);
    out.matrix = std::move(mat);
    out.scale = ScaleApplied::inverse_sqrt_prob;
    return out;
}

struct NnzRule {
    const SparseSymStore& store;
    ZeroingRule rule;
    double threshold = 0.0;

    NnzRule(const SparseSymStore& st, const ZeroingRule& r, double s) : store(st), rule(r) {
        const auto nnz = static_cast<double>(st.total_nnz());
        if (r.kind == ZeroingRule::Kind::theorem) {
            const double ln = std::log(static_cast<double>(st.size()));
            threshold = r.eps * r.eps * nnz / (r.c2 * ln * ln);
        } else if (r.kind == ZeroingRule::Kind::practical) {
            threshold = nnz / (r.c2 * s);
        }
    }

    bool operator()(std::size_t i, std::size_t j, double) const {
        if (rule.kind == ZeroingRule::Kind::off) return false;
        if (i == j) return true;
        const double prod = static_cast<double>(store.row_nnz(i)) * static_cast<double>(store.row_nnz(j));
        return prod < threshold;
    }
};

struct NormRule {
    const SparseSymStore& store;
    ZeroingRule rule;
    double diag_threshold = 0.0;
    double offdiag_factor = 0.0;

    NormRule(const SparseSymStore& st, const ZeroingRule& r) : store(st), rule(r) {
        if (r.kind == ZeroingRule::Kind::theorem) {
            const double frob = st.frob_sq();
            const double ln = std::log(static_cast<double>(st.size()));
            diag_threshold = r.eps * r.eps / 4.0 * frob;
            offdiag_factor = r.eps * r.eps * frob / (r.c2 * ln * ln * ln * ln);
        }
    }

    bool operator()(std::size_t i, std::size_t j, double a_ij) const {
        if (rule.kind == ZeroingRule::Kind::off) return false;
        if (i == j) return store.row_sqnorm(i) < diag_threshold;
        return store.row_sqnorm(i) * store.row_sqnorm(j) < offdiag_factor * a_ij * a_ij;
    }
};

template <typename Drop>
SymMatrix zeroed_full(const SparseSymStore& store, Drop&& drop) {
    SymMatrix out(store.size());
    for (std::size_t i = 0; i < store.size(); ++i)
        for (const auto& cell : store.row(i))
            if (cell.col >= i && !drop(i, cell.col, cell.value)) out.set(i, cell.col, cell.value);
    return out;
}

}  // namespace

SampledSubmatrix uniform_submatrix(const SymMatrix& a, double s, Rng& rng) {
    const std::size_t n = a.size();
    SampledSubmatrix out;
    out.sample.mode = SampleMode::uniform;
    if (n == 0) return out;
    check_s(s, n, "uniform_submatrix");
    const double p = s / static_cast<double>(n);
    const std::vector<double> probs(n, p);
    out.sample = draw(probs, SampleMode::uniform, rng);
    out.matrix = a.principal(out.sample.indices);
    out.scale = ScaleApplied::none;
    return out;
}

SampledSubmatrix nnz_submatrix(const SparseSymStore& store, double s, const ZeroingRule& rule, Rng& rng) {
    check_positive_s(s, "nnz_submatrix");
    check_eps(rule, "nnz_submatrix");
    if (store.total_nnz() == 0) {
        SampledSubmatrix empty;
        empty.sample.mode = SampleMode::by_nnz;
        empty.scale = ScaleApplied::inverse_sqrt_prob;
        return empty;
    }
    const auto probs = store.inclusion_probs(s, RowWeight::by_nnz);
    SampleSet set = draw(probs, SampleMode::by_nnz, rng);
    return rescaled_submatrix(store, std::move(set), NnzRule(store, rule, s));
}

SampledSubmatrix norm_submatrix(const SparseSymStore& store, double s, const ZeroingRule& rule, Rng& rng) {
    check_positive_s(s, "norm_submatrix");
    if (rule.kind == ZeroingRule::Kind::practical)
        throw std::invalid_argument("norm_submatrix: only off and theorem zeroing are defined");
    check_eps(rule, "norm_submatrix");
    if (!(store.frob_sq() > 0.0)) {
        SampledSubmatrix empty;
        empty.sample.mode = SampleMode::by_sqnorm;
        empty.scale = ScaleApplied::inverse_sqrt_prob;
        return empty;
    }
    const auto probs = store.inclusion_probs(s, RowWeight::by_sqnorm);
    SampleSet set = draw(probs, SampleMode::by_sqnorm, rng);
    return rescaled_submatrix(store, std::move(set), NormRule(store, rule));
}

SymMatrix nnz_zeroed_matrix(const SparseSymStore& store, double eps, double c2) {
    const auto rule = ZeroingRule::theorem(eps, c2);
    check_eps(rule, "nnz_zeroed_matrix");
    return zeroed_full(store, NnzRule(store, rule, 1.0));
}

SymMatrix norm_zeroed_matrix(const SparseSymStore& store, double eps, double c2) {
    const auto rule = ZeroingRule::theorem(eps, c2);
    check_eps(rule, "norm_zeroed_matrix");
    return zeroed_full(store, NormRule(store, rule));
}

EntrywiseSample entrywise_sample(const SymMatrix& a, double p, Rng& rng) {
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("entrywise_sparsify: p must lie in (0,1]");
    const std::size_t n = a.size();
    EntrywiseSample out;
    out.matrix = SymMatrix(n);
    const double inv = 1.0 / p;
    for (std::size_t i = 0; i < n; ++i) {
        if (a(i, i) != 0.0) out.matrix.set(i, i, a(i, i));
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!rng.bernoulli(p)) continue;
            ++out.kept_pairs;
            if (a(i, j) != 0.0) out.matrix.set(i, j, a(i, j) * inv);
        }
    }
    return out;
}

SymMatrix entrywise_sparsify(const SymMatrix& a, double p, Rng& rng) { return entrywise_sample(a, p, rng).matrix; }

RowColSample rowcol_submatrix(const Matrix& a, double s, Rng& rng) {
    if (a.rows() != a.cols()) throw DimensionError("rowcol_submatrix: matrix must be square");
    const std::size_t n = a.rows();
    RowColSample out;
    if (n == 0) return out;
    check_s(s, n, "rowcol_submatrix");
    const double p = s / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i)
        if (rng.bernoulli(p)) out.rows.push_back(i);
    for (std::size_t j = 0; j < n; ++j)
        if (rng.bernoulli(p)) out.cols.push_back(j);
    const double scale = static_cast<double>(n) / s;  // sqrt(n/s) from each side
    out.z = Matrix(out.rows.size(), out.cols.size());
    for (std::size_t r = 0; r < out.rows.size(); ++r)
        for (std::size_t c = 0; c < out.cols.size(); ++c) out.z(r, c) = a(out.rows[r], out.cols[c]) * scale;
    return out;
}

RowColSample rowcol_submatrix(const SymMatrix& a, double s, Rng& rng) { return rowcol_submatrix(a.to_matrix(), s, rng); }

}  // namespace eigsample

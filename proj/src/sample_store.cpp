#include "eigsample/sample_store.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

namespace eigsample {

template <typename T>
SumTree<T>::SumTree(std::span<const T> leaves) : n_(leaves.size()) {
    while (cap_ < n_) cap_ <<= 1;
    nodes_.assign(2 * cap_, T{});
    std::copy(leaves.begin(), leaves.end(), nodes_.begin() + static_cast<std::ptrdiff_t>(cap_));
    for (std::size_t k = cap_ - 1; k >= 1; --k) nodes_[k] = nodes_[2 * k] + nodes_[2 * k + 1];
}

template <typename T>
void SumTree<T>::set(std::size_t i, T value) {
    std::size_t k = cap_ + i;
    nodes_[k] = value;
    for (k >>= 1; k >= 1; k >>= 1) nodes_[k] = nodes_[2 * k] + nodes_[2 * k + 1];
}

template <typename T>
std::size_t SumTree<T>::find(T target) const {
    std::size_t k = 1;
    while (k < cap_) {
        const T left = nodes_[2 * k];
        const T right = nodes_[2 * k + 1];
        if (target < left || right == T{}) {
            k = 2 * k;
        } else {
            target -= left;
            k = 2 * k + 1;
        }
    }
    return std::min(k - cap_, n_ - 1);
}

template class SumTree<std::uint64_t>;
template class SumTree<double>;

SparseSymStore::SparseSymStore(std::size_t n) : n_(n), rows_(n) {
    const std::vector<std::uint64_t> z(n, 0);
    const std::vector<double> zd(n, 0.0);
    nnz_tree_ = SumTree<std::uint64_t>(z);
    sqnorm_tree_ = SumTree<double>(zd);
}

SparseSymStore SparseSymStore::build(std::size_t n, std::span<const Entry> entries) {
    struct Key {
        std::size_t lo, hi;
        double value;
    };
    std::vector<Key> keys;
    keys.reserve(entries.size());
    for (const Entry& e : entries) {
        if (e.row >= n || e.col >= n)
            throw DimensionError("SparseSymStore::build: index (" + std::to_string(e.row) + "," +
                                 std::to_string(e.col) + ") out of range for n=" + std::to_string(n));
        if (!std::isfinite(e.value)) throw ConstructionError("SparseSymStore::build: non-finite value");
        keys.push_back({std::min(e.row, e.col), std::max(e.row, e.col), e.value});
    }
    std::stable_sort(keys.begin(), keys.end(),
                     [](const Key& a, const Key& b) { return std::tie(a.lo, a.hi) < std::tie(b.lo, b.hi); });

    SparseSymStore store;
    store.n_ = n;
    store.rows_.assign(n, {});
    for (std::size_t k = 0; k < keys.size(); ++k) {
        const Key& key = keys[k];
        if (k > 0 && keys[k - 1].lo == key.lo && keys[k - 1].hi == key.hi) {
            if (keys[k - 1].value != key.value)
                throw ConstructionError("SparseSymStore::build: conflicting values for entry (" +
                                        std::to_string(key.lo) + "," + std::to_string(key.hi) + ")");
            continue;
        }
        if (key.value == 0.0) continue;
        store.rows_[key.lo].push_back({key.hi, key.value});
        if (key.lo != key.hi) store.rows_[key.hi].push_back({key.lo, key.value});
    }
    std::vector<std::uint64_t> nnz(n);
    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto& r = store.rows_[i];
        std::sort(r.begin(), r.end(), [](const Cell& a, const Cell& b) { return a.col < b.col; });
        nnz[i] = r.size();
        double acc = 0.0;
        for (const Cell& c : r) acc += c.value * c.value;
        sq[i] = acc;
    }
    store.nnz_tree_ = SumTree<std::uint64_t>(nnz);
    store.sqnorm_tree_ = SumTree<double>(sq);
    return store;
}

SparseSymStore SparseSymStore::from_dense(const SymMatrix& a) {
    std::vector<Entry> entries;
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            if (a(i, j) != 0.0) entries.push_back({i, j, a(i, j)});
    return build(n, entries);
}

double SparseSymStore::value(std::size_t i, std::size_t j) const {
    if (i >= n_ || j >= n_) throw DimensionError("SparseSymStore::value: index out of range");
    const auto& r = rows_[i];
    auto it = std::lower_bound(r.begin(), r.end(), j, [](const Cell& c, std::size_t col) { return c.col < col; });
    return (it != r.end() && it->col == j) ? it->value : 0.0;
}

void SparseSymStore::set_cell(std::size_t i, std::size_t j, double value) {
    auto& r = rows_[i];
    auto it = std::lower_bound(r.begin(), r.end(), j, [](const Cell& c, std::size_t col) { return c.col < col; });
    const bool present = it != r.end() && it->col == j;
    if (value == 0.0) {
        if (present) r.erase(it);
    } else if (present) {
        it->value = value;
    } else {
        r.insert(it, Cell{j, value});
    }
}

void SparseSymStore::refresh_row(std::size_t i) {
    double acc = 0.0;
    for (const Cell& c : rows_[i]) acc += c.value * c.value;
    nnz_tree_.set(i, rows_[i].size());
    sqnorm_tree_.set(i, acc);
}

void SparseSymStore::update_entry(std::size_t i, std::size_t j, double value) {
    if (i >= n_ || j >= n_) throw DimensionError("SparseSymStore::update_entry: index out of range");
    if (!std::isfinite(value)) throw ConstructionError("SparseSymStore::update_entry: non-finite value");
    set_cell(i, j, value);
    refresh_row(i);
    if (i != j) {
        set_cell(j, i, value);
        refresh_row(j);
    }
}

std::size_t SparseSymStore::sample_row(RowWeight mode, Rng& rng) const {
    if (mode == RowWeight::by_nnz) {
        const std::uint64_t total = total_nnz();
        if (total == 0) throw NoMassError("sample_row: store has no nonzero entries");
        return nnz_tree_.find(rng.below(total));
    }
    const double total = frob_sq();
    if (!(total > 0.0)) throw NoMassError("sample_row: store has zero Frobenius norm");
    return sqnorm_tree_.find(rng.uniform() * total);
}

std::vector<double> SparseSymStore::inclusion_probs(double s, RowWeight mode) const {
    if (!(s > 0.0)) throw std::invalid_argument("inclusion_probs: s must be positive");
    std::vector<double> p(n_, 0.0);
    if (mode == RowWeight::by_nnz) {
        const auto total = static_cast<double>(total_nnz());
        if (total == 0.0) return p;
        for (std::size_t i = 0; i < n_; ++i)
            p[i] = std::min(1.0, s * static_cast<double>(rows_[i].size()) / total);
    } else {
        const double total = frob_sq();
        if (!(total > 0.0)) return p;
        const double floor = 1.0 / (static_cast<double>(n_) * static_cast<double>(n_));
        for (std::size_t i = 0; i < n_; ++i) p[i] = std::min(1.0, s * row_sqnorm(i) / total + floor);
    }
    return p;
}

std::vector<Entry> SparseSymStore::upper_entries() const {
    std::vector<Entry> out;
    for (std::size_t i = 0; i < n_; ++i)
        for (const Cell& c : rows_[i])
            if (c.col >= i) out.push_back({i, c.col, c.value});
    return out;
}

SymMatrix SparseSymStore::to_dense() const {
    SymMatrix a(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (const Cell& c : rows_[i])
            if (c.col >= i) a.set(i, c.col, c.value);
    return a;
}

}  // namespace eigsample

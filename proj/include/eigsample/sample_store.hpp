#pragma once

#include "eigsample/matrix.hpp"
#include "eigsample/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace eigsample {

class NoMassError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class RowWeight { by_nnz, by_sqnorm };

struct Entry {
    std::size_t row;
    std::size_t col;
    double value;
};

// Complete binary sum tree over n leaves. Every internal node is recomputed
// from its two children on update, so aggregates after any update sequence are
// bit-identical to a fresh build over the same leaves.
template <typename T>
class SumTree {
public:
    SumTree() = default;
    explicit SumTree(std::span<const T> leaves);

    std::size_t size() const noexcept { return n_; }
    T total() const noexcept { return nodes_.empty() ? T{} : nodes_[1]; }
    T leaf(std::size_t i) const { return nodes_[cap_ + i]; }
    void set(std::size_t i, T value);
    // Smallest leaf index i with (sum of leaves before i) <= target < (that sum + leaf i),
    // skipping zero-weight leaves. Requires 0 <= target < total().
    std::size_t find(T target) const;

private:
    std::size_t n_ = 0;
    std::size_t cap_ = 1;
    std::vector<T> nodes_;
};

// Sparse symmetric matrix in per-row sorted adjacency form, augmented with
// per-row nonzero counts and squared norms and sum trees over both, so rows
// can be drawn proportional to either in O(log n) and entries updated in
// O(log n + row length).
class SparseSymStore {
public:
    struct Cell {
        std::size_t col;
        double value;
        friend bool operator==(const Cell&, const Cell&) = default;
    };

    SparseSymStore() = default;
    explicit SparseSymStore(std::size_t n);

    // Entries may list one or both triangle halves. Zero values are dropped.
    // Throws DimensionError for out-of-range indices and ConstructionError
    // for conflicting duplicates or non-finite values.
    static SparseSymStore build(std::size_t n, std::span<const Entry> entries);
    static SparseSymStore from_dense(const SymMatrix& a);

    std::size_t size() const noexcept { return n_; }
    std::span<const Cell> row(std::size_t i) const { return rows_.at(i); }
    std::size_t row_nnz(std::size_t i) const { return rows_.at(i).size(); }
    double row_sqnorm(std::size_t i) const { return sqnorm_tree_.leaf(i); }
    std::uint64_t total_nnz() const noexcept { return nnz_tree_.total(); }
    double frob_sq() const noexcept { return sqnorm_tree_.total(); }
    double value(std::size_t i, std::size_t j) const;

    // Sets (i,j) and (j,i); a zero value removes the entry.
    void update_entry(std::size_t i, std::size_t j, double value);

    // Row i with probability row_nnz(i)/total_nnz (or row_sqnorm(i)/frob_sq).
    // Throws NoMassError when the selected weight is identically zero.
    std::size_t sample_row(RowWeight mode, Rng& rng) const;

    // by_nnz:    p_i = min(1, s * nnz_i / nnz)
    // by_sqnorm: p_i = min(1, s * ||A_i||^2 / ||A||_F^2 + 1/n^2)
    // A store with zero total mass yields all-zero probabilities.
    std::vector<double> inclusion_probs(double s, RowWeight mode) const;

    // Upper triangle (row <= col), row-major order.
    std::vector<Entry> upper_entries() const;
    SymMatrix to_dense() const;

    friend bool operator==(const SparseSymStore& a, const SparseSymStore& b) { return a.rows_ == b.rows_; }

private:
    void refresh_row(std::size_t i);
    void set_cell(std::size_t i, std::size_t j, double value);

    std::size_t n_ = 0;
    std::vector<std::vector<Cell>> rows_;
    SumTree<std::uint64_t> nnz_tree_;
    SumTree<double> sqnorm_tree_;
};

}  // namespace eigsample

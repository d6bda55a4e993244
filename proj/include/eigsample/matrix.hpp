#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace eigsample {

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ConstructionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Dense row-major rectangular matrix. Used for the row/column sampled
// submatrices, which are not symmetric in general.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> data() const noexcept { return data_; }

    Matrix transposed() const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// Dense real symmetric matrix. The lower triangle always mirrors the upper
// triangle bit for bit and every entry is finite.
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(std::size_t n);

    // Builds from a row-major n*n buffer. The upper triangle is authoritative
    // and is copied onto the lower triangle.
    static SymMatrix from_row_major(std::size_t n, std::span<const double> values);
    static SymMatrix identity(std::size_t n);

    std::size_t size() const noexcept { return n_; }
    bool empty() const noexcept { return n_ == 0; }

    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    // Sets (i,j) and (j,i) together.
    void set(std::size_t i, std::size_t j, double value);

    std::span<const double> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }
    std::span<const double> data() const noexcept { return data_; }

    double trace() const;
    double frobenius_norm() const;
    double max_abs() const;
    std::size_t count_nonzeros() const;

    // Principal submatrix on the given (not necessarily sorted) index list.
    SymMatrix principal(std::span<const std::size_t> indices) const;

    SymMatrix scaled(double factor) const;
    Matrix to_matrix() const;

    friend SymMatrix operator+(const SymMatrix& a, const SymMatrix& b);
    friend SymMatrix operator-(const SymMatrix& a, const SymMatrix& b);
    friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

// A finite list of eigenvalues (or singular values) kept in non-increasing
// order.
class Spectrum {
public:
    Spectrum() = default;

    // Stable descending sort, so equal values keep their input order.
    static Spectrum from_unsorted(std::vector<double> values);
    // Throws DimensionError if the input is not non-increasing.
    static Spectrum from_sorted(std::vector<double> values);
    static Spectrum zeros(std::size_t n);

    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }
    double operator[](std::size_t i) const { return values_[i]; }
    std::span<const double> values() const noexcept { return values_; }
    auto begin() const noexcept { return values_.begin(); }
    auto end() const noexcept { return values_.end(); }

    double sum() const;
    Spectrum scaled(double factor) const;

    friend bool operator==(const Spectrum&, const Spectrum&) = default;

private:
    explicit Spectrum(std::vector<double> values) : values_(std::move(values)) {}
    std::vector<double> values_;
};

bool is_non_increasing(std::span<const double> values);

}  // namespace eigsample

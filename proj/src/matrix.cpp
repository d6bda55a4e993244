#include "eigsample/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace eigsample {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

SymMatrix::SymMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

SymMatrix SymMatrix::from_row_major(std::size_t n, std::span<const double> values) {
    if (values.size() != n * n)
        throw DimensionError("SymMatrix: expected " + std::to_string(n * n) + " values, got " +
                             std::to_string(values.size()));
    SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const double v = values[i * n + j];
            if (!std::isfinite(v))
                throw ConstructionError("SymMatrix: non-finite entry at (" + std::to_string(i) +
                                        "," + std::to_string(j) + ")");
            m.data_[i * n + j] = v;
            m.data_[j * n + i] = v;
        }
    }
    return m;
}

SymMatrix SymMatrix::identity(std::size_t n) {
    SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1.0;
    return m;
}

void SymMatrix::set(std::size_t i, std::size_t j, double value) {
    if (i >= n_ || j >= n_) throw DimensionError("SymMatrix::set: index out of range");
    if (!std::isfinite(value)) throw ConstructionError("SymMatrix::set: non-finite value");
    data_[i * n_ + j] = value;
    data_[j * n_ + i] = value;
}

double SymMatrix::trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < n_; ++i) t += data_[i * n_ + i];
    return t;
}

double SymMatrix::frobenius_norm() const {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return std::sqrt(s);
}

double SymMatrix::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

std::size_t SymMatrix::count_nonzeros() const {
    return static_cast<std::size_t>(std::count_if(data_.begin(), data_.end(), [](double v) { return v != 0.0; }));
}

SymMatrix SymMatrix::principal(std::span<const std::size_t> indices) const {
    const std::size_t m = indices.size();
    SymMatrix sub(m);
    for (std::size_t a = 0; a < m; ++a) {
        if (indices[a] >= n_) throw DimensionError("SymMatrix::principal: index out of range");
        const std::size_t base = indices[a] * n_;
        for (std::size_t b = 0; b < m; ++b) sub.data_[a * m + b] = data_[base + indices[b]];
    }
    return sub;
}

SymMatrix SymMatrix::scaled(double factor) const {
    SymMatrix out = *this;
    for (double& v : out.data_) v *= factor;
    return out;
}

Matrix SymMatrix::to_matrix() const {
    Matrix out(n_, n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) out(i, j) = data_[i * n_ + j];
    return out;
}

namespace {

SymMatrix combine(const SymMatrix& a, const SymMatrix& b, double sign) {
    if (a.size() != b.size()) throw DimensionError("SymMatrix: dimension mismatch");
    const std::size_t n = a.size();
    std::vector<double> buf(n * n);
    for (std::size_t k = 0; k < n * n; ++k) buf[k] = a.data()[k] + sign * b.data()[k];
    return SymMatrix::from_row_major(n, buf);
}

}  // namespace

SymMatrix operator+(const SymMatrix& a, const SymMatrix& b) { return combine(a, b, 1.0); }
SymMatrix operator-(const SymMatrix& a, const SymMatrix& b) { return combine(a, b, -1.0); }

bool is_non_increasing(std::span<const double> values) {
    for (std::size_t i = 1; i < values.size(); ++i)
        if (!(values[i - 1] >= values[i])) return false;
    return true;
}

Spectrum Spectrum::from_unsorted(std::vector<double> values) {
    std::stable_sort(values.begin(), values.end(), std::greater<>());
    return Spectrum(std::move(values));
}

Spectrum Spectrum::from_sorted(std::vector<double> values) {
    if (!is_non_increasing(values)) throw DimensionError("Spectrum: values are not non-increasing");
    return Spectrum(std::move(values));
}

Spectrum Spectrum::zeros(std::size_t n) { return Spectrum(std::vector<double>(n, 0.0)); }

double Spectrum::sum() const { return std::accumulate(values_.begin(), values_.end(), 0.0); }

Spectrum Spectrum::scaled(double factor) const {
    std::vector<double> out = values_;
    for (double& v : out) v *= factor;
    if (factor < 0) std::reverse(out.begin(), out.end());
    return Spectrum(std::move(out));
}

}  // namespace eigsample

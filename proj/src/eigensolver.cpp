#include "eigsample/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>

namespace eigsample {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kSweepsPerEigenvalue = 60;

void check_tol(double tol) {
    if (!(tol > 0.0) || !std::isfinite(tol)) throw std::invalid_argument("eigensolver: tol must be positive");
}

// Reduces the row-major symmetric buffer `w` (n*n) in place. On return the
// Householder vectors live in the strict upper part of row k (w[k][k+1..]),
// with betas[k] the matching scale, and diag/off hold the tridiagonal.
Tridiagonal householder_reduce(std::vector<double>& w, std::size_t n, std::vector<double>& betas) {
    Tridiagonal t;
    t.diag.assign(n, 0.0);
    t.off.assign(n > 0 ? n - 1 : 0, 0.0);
    betas.assign(n, 0.0);
    if (n == 0) return t;

    std::vector<double> p(n), q(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double* x = &w[k * n + k + 1];  // row k right of the diagonal == column k below it
        const std::size_t m = n - k - 1;
        double sigma = 0.0;
        for (std::size_t i = 1; i < m; ++i) sigma += x[i] * x[i];
        t.diag[k] = w[k * n + k];
        if (sigma == 0.0) {
            t.off[k] = x[0];
            betas[k] = 0.0;
            continue;
        }
        const double x0 = x[0];
        const double mu = std::sqrt(x0 * x0 + sigma);
        const double v0 = (x0 <= 0.0) ? x0 - mu : -sigma / (x0 + mu);
        const double beta = 2.0 * v0 * v0 / (sigma + v0 * v0);
        x[0] = 1.0;
        for (std::size_t i = 1; i < m; ++i) x[i] /= v0;
        t.off[k] = mu;
        betas[k] = beta;

        // Trailing block B (m x m) at offset k+1: B <- B - v q^T - q v^T with
        // p = beta B v, q = p - (beta/2)(p^T v) v.
        const std::size_t off = k + 1;
        for (std::size_t i = 0; i < m; ++i) {
            const double* brow = &w[(off + i) * n + off];
            double acc = 0.0;
            for (std::size_t j = 0; j < m; ++j) acc += brow[j] * x[j];
            p[i] = beta * acc;
        }
        double pv = 0.0;
        for (std::size_t i = 0; i < m; ++i) pv += p[i] * x[i];
        const double half = 0.5 * beta * pv;
        for (std::size_t i = 0; i < m; ++i) q[i] = p[i] - half * x[i];
        for (std::size_t i = 0; i < m; ++i) {
            double* brow = &w[(off + i) * n + off];
            const double vi = x[i];
            const double qi = q[i];
            for (std::size_t j = 0; j < m; ++j) brow[j] -= vi * q[j] + qi * x[j];
        }
    }
    if (n >= 2) {
        t.diag[n - 2] = w[(n - 2) * n + n - 2];
        t.off[n - 2] = w[(n - 2) * n + n - 1];
    }
    t.diag[n - 1] = w[(n - 1) * n + n - 1];
    return t;
}

// Accumulates Q = H_0 H_1 ... H_{n-3} from the reflectors stored in `w`.
Matrix accumulate_reflectors(const std::vector<double>& w, std::size_t n, const std::vector<double>& betas) {
    Matrix qm(n, n);
    for (std::size_t i = 0; i < n; ++i) qm(i, i) = 1.0;
    std::vector<double> tmp(n);
    for (std::size_t kk = n >= 2 ? n - 2 : 0; kk-- > 0;) {
        const double beta = betas[kk];
        if (beta == 0.0) continue;
        const double* v = &w[kk * n + kk + 1];
        const std::size_t off = kk + 1;
        const std::size_t m = n - off;
        std::fill(tmp.begin(), tmp.end(), 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            const double vi = v[i];
            for (std::size_t j = 0; j < n; ++j) tmp[j] += vi * qm(off + i, j);
        }
        for (std::size_t i = 0; i < m; ++i) {
            const double s = beta * v[i];
            for (std::size_t j = 0; j < n; ++j) qm(off + i, j) -= s * tmp[j];
        }
    }
    return qm;
}

// Implicit-shift QL on a symmetric tridiagonal. d/e are modified in place;
// on return d holds the eigenvalues in solver order. When z is given, the
// rotations are applied to its columns.
void tridiagonal_ql(std::vector<double>& d, std::vector<double> e_in, double tol, Matrix* z) {
    const std::size_t n = d.size();
    if (n <= 1) return;
    std::vector<double> e(n, 0.0);
    std::copy(e_in.begin(), e_in.end(), e.begin());

    double tnorm = 0.0;
    for (std::size_t i = 0; i < n; ++i) tnorm = std::max(tnorm, std::abs(d[i]) + std::abs(e[i]) + (i ? std::abs(e[i - 1]) : 0.0));
    const double rel = std::max(tol / 4.0, kEps);

    const auto ni = static_cast<std::ptrdiff_t>(n);
    for (std::ptrdiff_t l = 0; l < ni; ++l) {
        int iter = 0;
        std::ptrdiff_t m;
        do {
            for (m = l; m < ni - 1; ++m) {
                const double em = std::abs(e[m]);
                if (em <= rel * (std::abs(d[m]) + std::abs(d[m + 1])) || em <= kEps * tnorm) break;
            }
            if (m != l) {
                if (iter++ == kSweepsPerEigenvalue)
                    throw SolverError("sym_eigvals: QL iteration did not converge for eigenvalue " +
                                      std::to_string(l));
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                std::ptrdiff_t i;
                bool underflow = false;
                for (i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    if (z) {
                        Matrix& zz = *z;
                        for (std::size_t k = 0; k < n; ++k) {
                            f = zz(k, i + 1);
                            zz(k, i + 1) = s * zz(k, i) + c * f;
                            zz(k, i) = c * zz(k, i) - s * f;
                        }
                    }
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

}  // namespace

Tridiagonal tridiagonalize(const SymMatrix& a) {
    const std::size_t n = a.size();
    std::vector<double> w(a.data().begin(), a.data().end());
    std::vector<double> betas;
    return householder_reduce(w, n, betas);
}

Spectrum sym_eigvals(const SymMatrix& a, double tol) {
    check_tol(tol);
    Tridiagonal t = tridiagonalize(a);
    tridiagonal_ql(t.diag, t.off, tol, nullptr);
    return Spectrum::from_unsorted(std::move(t.diag));
}

SymEigen sym_eig(const SymMatrix& a, double tol) {
    check_tol(tol);
    const std::size_t n = a.size();
    std::vector<double> w(a.data().begin(), a.data().end());
    std::vector<double> betas;
    Tridiagonal t = householder_reduce(w, n, betas);
    Matrix z = accumulate_reflectors(w, n, betas);
    tridiagonal_ql(t.diag, t.off, tol, &z);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return t.diag[x] > t.diag[y]; });
    std::vector<double> vals(n);
    Matrix vecs(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        vals[k] = t.diag[order[k]];
        for (std::size_t i = 0; i < n; ++i) vecs(i, k) = z(i, order[k]);
    }
    return {Spectrum::from_sorted(std::move(vals)), std::move(vecs)};
}

std::size_t sturm_count(const Tridiagonal& t, double x) {
    const std::size_t n = t.diag.size();
    std::size_t count = 0;
    double q = 1.0;
    constexpr double tiny = std::numeric_limits<double>::min();
    for (std::size_t i = 0; i < n; ++i) {
        const double e2 = i ? t.off[i - 1] * t.off[i - 1] : 0.0;
        q = t.diag[i] - x - (i ? e2 / q : 0.0);
        if (q == 0.0) q = -tiny;
        if (q < 0.0) ++count;
    }
    return count;
}

namespace {

// Bisection for the k-th smallest eigenvalue (0-based) of t.
double bisect_eigenvalue(const Tridiagonal& t, std::size_t k, double lo, double hi, double tol) {
    const double floor = kEps * std::max(std::abs(lo), std::abs(hi));
    for (int it = 0; it < 400; ++it) {
        const double width = hi - lo;
        if (width <= tol * std::max(std::abs(lo), std::abs(hi)) || width <= floor) return 0.5 * (lo + hi);
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) return mid;
        if (sturm_count(t, mid) > k)
            hi = mid;
        else
            lo = mid;
    }
    throw SolverError("spectral_norm: bisection did not converge");
}

}  // namespace

double spectral_norm(const SymMatrix& a, double tol) {
    check_tol(tol);
    const std::size_t n = a.size();
    if (n == 0) return 0.0;
    const Tridiagonal t = tridiagonalize(a);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < n; ++i) {
        const double radius = (i ? std::abs(t.off[i - 1]) : 0.0) + (i + 1 < n ? std::abs(t.off[i]) : 0.0);
        lo = std::min(lo, t.diag[i] - radius);
        hi = std::max(hi, t.diag[i] + radius);
    }
    if (lo == 0.0 && hi == 0.0) return 0.0;
    // Widen so the Gershgorin endpoints strictly bracket.
    const double pad = kEps * std::max(std::abs(lo), std::abs(hi)) * static_cast<double>(n) + std::numeric_limits<double>::min();
    lo -= pad;
    hi += pad;
    const double bisect_tol = tol / 2.0;
    const double largest = bisect_eigenvalue(t, n - 1, lo, hi, bisect_tol);
    const double smallest = bisect_eigenvalue(t, 0, lo, hi, bisect_tol);
    return std::max(std::abs(largest), std::abs(smallest));
}

Spectrum singular_values(const Matrix& z, double tol) {
    const std::size_t r = z.rows();
    const std::size_t c = z.cols();
    const std::size_t k = std::min(r, c);
    if (k == 0) return Spectrum::zeros(0);
    SymMatrix embed(r + c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (z(i, j) != 0.0) embed.set(i, r + j, z(i, j));
    const Spectrum eig = sym_eigvals(embed, tol);
    std::vector<double> out(k);
    for (std::size_t i = 0; i < k; ++i) out[i] = std::max(0.0, eig[i]);
    return Spectrum::from_sorted(std::move(out));
}

}  // namespace eigsample

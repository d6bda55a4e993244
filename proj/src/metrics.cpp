#include "eigsample/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace eigsample {

namespace {

void require_same_length(const Spectrum& a, const Spectrum& b, const char* what) {
    if (a.size() != b.size())
        throw DimensionError(std::string(what) + ": spectrum lengths differ (" + std::to_string(a.size()) +
                             " vs " + std::to_string(b.size()) + ")");
}

}  // namespace

double linf_spectrum_error(const Spectrum& est, const Spectrum& truth) {
    require_same_length(est, truth, "linf_spectrum_error");
    double worst = 0.0;
    for (std::size_t i = 0; i < est.size(); ++i) worst = std::max(worst, std::abs(est[i] - truth[i]));
    return worst;
}

double wasserstein1(const Spectrum& a, const Spectrum& b) {
    require_same_length(a, b, "wasserstein1");
    if (a.empty()) throw DimensionError("wasserstein1: empty spectra");
    double total = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) total += std::abs(a[i] - b[i]);
    return total / static_cast<double>(a.size());
}

double weyl_gap(const SymMatrix& a, const SymMatrix& b, double tol) {
    if (a.size() != b.size()) throw DimensionError("weyl_gap: dimension mismatch");
    return linf_spectrum_error(sym_eigvals(a, tol), sym_eigvals(b, tol));
}

}  // namespace eigsample

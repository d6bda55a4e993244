#pragma once

#include "eigsample/matrix.hpp"
#include "eigsample/rng.hpp"
#include "eigsample/sample_store.hpp"

#include <array>
#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <vector>

namespace eigsample {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Largest dimension the dense generators will build.
inline constexpr std::size_t kDenseSizeCap = 5000;

struct PointCloud {
    std::vector<std::array<double, 2>> points;  // all coordinates in [0,1]
};

// k x k block of ones in the top-left corner of an n x n zero matrix.
SymMatrix block_matrix(std::size_t n, std::size_t k);

// G(n, p) adjacency: zero diagonal, each unordered pair an edge with probability p.
SparseSymStore erdos_renyi(std::size_t n, double p, Rng& rng);

// Configuration-model graph with Pareto degrees P(D >= d) ~ (d/min_degree)^-(exponent-1),
// capped at n-1. Self-loops and multi-edges from the stub pairing are discarded.
SparseSymStore power_law_graph(std::size_t n, double exponent, std::size_t min_degree, Rng& rng);

// tanh(<x_i, x_j> / 2).
SymMatrix tanh_similarity(const PointCloud& pc);

// r^2 log r^2 with r = |x_i - x_j|, taking the limit 0 at r = 0.
SymMatrix thin_plate_spline(const PointCloud& pc);

// n points on a noisy closed curve inside the unit square.
PointCloud synthetic_point_cloud(std::size_t n, Rng& rng);

// Zero diagonal, ones on the first super- and sub-diagonal. Eigenvalues
// 2 cos(k pi / (n+1)), k = 1..n.
SparseSymStore tridiagonal_ones(std::size_t n);

// Kronecker product of a random symmetric +/-1 matrix of size inv_eps_sq and
// a block x block all-ones matrix.
SymMatrix tensor_hard_instance(std::size_t inv_eps_sq, std::size_t block, Rng& rng);

// Entries uniform on [-1, 1].
SymMatrix random_symmetric(std::size_t n, Rng& rng);

// B B^T where B is n x rank with unit-norm Gaussian rows, so |A_ij| <= 1 and A is PSD.
SymMatrix random_psd(std::size_t n, std::size_t rank, Rng& rng);

// Each upper-triangle entry (diagonal included) nonzero with probability
// `density`, value uniform on [-1, 1].
SparseSymStore random_sparse_symmetric(std::size_t n, double density, Rng& rng);

// Whitespace-separated node pairs, '#' comments. Node ids are compacted to
// 0..n-1 in order of first appearance; reverse and repeated edges collapse;
// self-loops are dropped. Weight 1.
SparseSymStore load_edge_list(const std::filesystem::path& path);

// Coordinate format, real/integer/pattern values, symmetric or general.
SparseSymStore load_matrix_market(const std::filesystem::path& path);
void write_matrix_market(const SparseSymStore& store, const std::filesystem::path& path);

}  // namespace eigsample

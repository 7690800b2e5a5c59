#ifndef P1BOUNDS_MESH_HPP
#define P1BOUNDS_MESH_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace p1bounds {

/// Ordered partition 0 = x_0 < x_1 < ... < x_{N+1} = 1 of the unit interval.
///
/// Nodes are stored as absolute positions; cell widths h_i = x_{i+1} - x_i are
/// derived on demand so that the widths always telescope back to the stored
/// endpoints. Immutable after construction.
class Mesh1D {
public:
    explicit Mesh1D(std::vector<double> nodes) : nodes_(std::move(nodes)) {
        if (nodes_.size() < 2)
            throw std::invalid_argument("Mesh1D: need at least two nodes");
        if (nodes_.front() != 0.0 || nodes_.back() != 1.0)
            throw std::invalid_argument("Mesh1D: endpoints must be exactly 0 and 1");
        double sum = 0.0;
        for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
            const double h = nodes_[i + 1] - nodes_[i];
            if (!(h > 0.0))
                throw std::invalid_argument("Mesh1D: nodes must be strictly increasing");
            sum += h;
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw std::invalid_argument("Mesh1D: cell widths do not sum to 1");
    }

    std::size_t num_nodes() const { return nodes_.size(); }
    std::size_t num_cells() const { return nodes_.size() - 1; }

    double node(std::size_t i) const { return nodes_.at(i); }
    const std::vector<double>& nodes() const { return nodes_; }

    double cell_width(std::size_t cell) const {
        check_cell(cell);
        return nodes_[cell + 1] - nodes_[cell];
    }

    /// Mesh size h = max_i h_i.
    double mesh_size() const {
        double h = 0.0;
        for (std::size_t i = 0; i + 1 < nodes_.size(); ++i)
            h = std::max(h, nodes_[i + 1] - nodes_[i]);
        return h;
    }

    void check_cell(std::size_t cell) const {
        if (cell >= num_cells())
            throw std::out_of_range("Mesh1D: cell index out of range");
    }

private:
    std::vector<double> nodes_;
};

namespace detail {

/// splitmix64 output for stream position `index` under a given seed.
/// Fixed integer arithmetic, so sequences are identical across platforms.
inline std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Uniform double in [0, 1) from the top 53 bits.
inline double unit_double(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

} // namespace detail

/// Equal partition into `num_cells` cells of width 1/num_cells.
inline Mesh1D uniform_mesh(std::size_t num_cells) {
    if (num_cells == 0)
        throw std::invalid_argument("uniform_mesh: num_cells must be positive");
    std::vector<double> nodes(num_cells + 1);
    for (std::size_t i = 0; i <= num_cells; ++i)
        nodes[i] = static_cast<double>(i) / static_cast<double>(num_cells);
    return Mesh1D(std::move(nodes));
}

/// Uniform mesh with each interior node displaced by a deterministic offset in
/// +-amplitude/num_cells. The offset for node i is derived from
/// splitmix64_at(seed, i), so equal seeds reproduce the exact same mesh on any
/// platform. Endpoints stay at 0 and 1; amplitude < 0.5 keeps nodes ordered.
inline Mesh1D perturbed_mesh(std::size_t num_cells, double amplitude, std::uint64_t seed) {
    if (num_cells == 0)
        throw std::invalid_argument("perturbed_mesh: num_cells must be positive");
    if (!(amplitude >= 0.0 && amplitude < 0.5))
        throw std::invalid_argument("perturbed_mesh: amplitude must lie in [0, 0.5)");
    std::vector<double> nodes(num_cells + 1);
    nodes[0] = 0.0;
    nodes[num_cells] = 1.0;
    const double scale = amplitude / static_cast<double>(num_cells);
    for (std::size_t i = 1; i < num_cells; ++i) {
        const double u = detail::unit_double(detail::splitmix64_at(seed, i));
        const double offset = (2.0 * u - 1.0) * scale;
        nodes[i] = static_cast<double>(i) / static_cast<double>(num_cells) + offset;
    }
    return Mesh1D(std::move(nodes));
}

/// k-th subdivision point x'_k = x_i + k h_i / n of the cell [x_i, x_i + h_i].
/// Endpoints are reproduced exactly.
inline double subdivision_point(double x_i, double h_i, int n, int k) {
    if (k == 0) return x_i;
    if (k == n) return x_i + h_i;
    return x_i + (static_cast<double>(k) / static_cast<double>(n)) * h_i;
}

/// The n+1 equally spaced points x'_0 ... x'_n of one cell.
inline std::vector<double> subdivision_points(const Mesh1D& mesh, std::size_t cell, int n) {
    mesh.check_cell(cell);
    if (n < 1)
        throw std::invalid_argument("subdivision_points: n must be positive");
    const double x_i = mesh.node(cell);
    const double h_i = mesh.cell_width(cell);
    std::vector<double> points(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k)
        points[static_cast<std::size_t>(k)] = subdivision_point(x_i, h_i, n, k);
    return points;
}

/// One node per line, header `node`, fixed %.12e formatting.
inline void write_csv(std::ostream& out, const Mesh1D& mesh) {
    out << "node\n";
    char buf[32];
    for (double x : mesh.nodes()) {
        std::snprintf(buf, sizeof buf, "%.12e", x);
        out << buf << '\n';
    }
}

} // namespace p1bounds

#endif

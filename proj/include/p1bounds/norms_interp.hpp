#ifndef P1BOUNDS_NORMS_INTERP_HPP
#define P1BOUNDS_NORMS_INTERP_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "p1bounds/bounds.hpp"
#include "p1bounds/expansion.hpp"
#include "p1bounds/function_model.hpp"
#include "p1bounds/mesh.hpp"

namespace p1bounds {

/// Composite Gauss-Legendre configuration for all error integrals: each cell
/// is split into panels_per_cell equal panels carrying points_per_panel Gauss
/// points. The defaults integrate |g|^p integrands to well below the 1e-10
/// containment slack for every preset.
struct QuadratureSpec {
    int points_per_panel = 8;
    int panels_per_cell = 16;

    void validate() const {
        if (points_per_panel < 2)
            throw std::invalid_argument("QuadratureSpec: points_per_panel must be >= 2");
        if (panels_per_cell < 1)
            throw std::invalid_argument("QuadratureSpec: panels_per_cell must be >= 1");
    }
};

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
    std::vector<double> points;
    std::vector<double> weights;
};

/// Newton iteration on the Legendre recurrence; exact for polynomials of
/// degree <= 2 npoints - 1.
inline GaussRule gauss_legendre(int npoints) {
    if (npoints < 1)
        throw std::invalid_argument("gauss_legendre: need at least one point");
    const double pi = 3.14159265358979323846;
    GaussRule rule;
    rule.points.resize(static_cast<std::size_t>(npoints));
    rule.weights.resize(static_cast<std::size_t>(npoints));
    const int half = (npoints + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double z = std::cos(pi * (i + 0.75) / (npoints + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= npoints; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = npoints * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15)
                break;
        }
        rule.points[static_cast<std::size_t>(i)] = -z;
        rule.points[static_cast<std::size_t>(npoints - 1 - i)] = z;
        const double w = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.weights[static_cast<std::size_t>(npoints - 1 - i)] = w;
    }
    return rule;
}

/// Integral of f over [a, b] with the composite rule of `quad`.
template <typename F>
double integrate_cell(F&& f, double a, double b, const QuadratureSpec& quad) {
    quad.validate();
    const GaussRule rule = gauss_legendre(quad.points_per_panel);
    const double panel_width = (b - a) / quad.panels_per_cell;
    detail::KahanSum sum;
    for (int panel = 0; panel < quad.panels_per_cell; ++panel) {
        const double lo = a + panel * panel_width;
        const double mid = lo + 0.5 * panel_width;
        const double halfw = 0.5 * panel_width;
        for (std::size_t q = 0; q < rule.points.size(); ++q)
            sum.add(rule.weights[q] * halfw * f(mid + halfw * rule.points[q]));
    }
    return sum.value();
}

namespace detail {

/// |t|^p for integer p >= 1 by repeated multiplication.
inline double abs_pow(double t, int p) {
    double a = std::abs(t);
    double result = 1.0;
    for (int i = 0; i < p; ++i)
        result *= a;
    return result;
}

} // namespace detail

/// The P1 interpolant: nodal values on a Mesh1D, affine on every cell.
/// Evaluation at a node reproduces the stored value exactly; the derivative is
/// constant per cell and takes the left cell's slope at interior nodes.
class PiecewiseLinear {
public:
    PiecewiseLinear(Mesh1D mesh, std::vector<double> values)
        : mesh_(std::move(mesh)), values_(std::move(values)) {
        if (values_.size() != mesh_.num_nodes())
            throw std::invalid_argument("PiecewiseLinear: one value per node required");
    }

    const Mesh1D& mesh() const { return mesh_; }
    const std::vector<double>& values() const { return values_; }

    double eval(double x) const {
        const std::size_t cell = cell_right_of(x);
        return eval_on_cell(cell, x);
    }

    double eval_d1(double x) const {
        const std::size_t cell = cell_left_of(x);
        return slope(cell);
    }

    /// Affine value on a known cell; endpoints map to t = 0 and t = 1 exactly.
    double eval_on_cell(std::size_t cell, double x) const {
        const double a = mesh_.node(cell);
        const double t = (x - a) / mesh_.cell_width(cell);
        return (1.0 - t) * values_[cell] + t * values_[cell + 1];
    }

    double slope(std::size_t cell) const {
        return (values_[cell + 1] - values_[cell]) / mesh_.cell_width(cell);
    }

private:
    void check_domain(double x) const {
        if (!(x >= 0.0 && x <= 1.0))
            throw std::domain_error("PiecewiseLinear: x must lie in [0,1]");
    }

    // cell whose half-open interval [x_i, x_{i+1}) contains x; node values hit
    // the right cell so eval returns the stored value via t = 0
    std::size_t cell_right_of(double x) const {
        check_domain(x);
        const auto& nodes = mesh_.nodes();
        auto it = std::upper_bound(nodes.begin(), nodes.end(), x);
        const std::size_t idx = static_cast<std::size_t>(it - nodes.begin());
        return std::min(idx - 1, mesh_.num_cells() - 1);
    }

    // interior nodes resolve to the cell ending at x (left-slope convention)
    std::size_t cell_left_of(double x) const {
        check_domain(x);
        const auto& nodes = mesh_.nodes();
        auto it = std::lower_bound(nodes.begin() + 1, nodes.end(), x);
        const std::size_t idx = static_cast<std::size_t>(it - nodes.begin());
        return std::min(idx - 1, mesh_.num_cells() - 1);
    }

    Mesh1D mesh_;
    std::vector<double> values_;
};

/// P1 interpolant of f: u_I(x_i) = u(x_i) at every node.
inline PiecewiseLinear interpolate(const SmoothFunction& f, const Mesh1D& mesh) {
    std::vector<double> values(mesh.num_nodes());
    for (std::size_t i = 0; i < mesh.num_nodes(); ++i)
        values[i] = f.value(mesh.node(i));
    return PiecewiseLinear(mesh, std::move(values));
}

namespace detail {

/// sum over cells of int_cell |g|^p, with g supplied per cell.
template <typename CellIntegrand>
double accumulate_cells_p(const Mesh1D& mesh, int p, const QuadratureSpec& quad,
                          CellIntegrand&& integrand) {
    KahanSum total;
    for (std::size_t cell = 0; cell < mesh.num_cells(); ++cell) {
        const double a = mesh.node(cell);
        const double b = mesh.node(cell + 1);
        total.add(integrate_cell(
            [&](double x) { return abs_pow(integrand(cell, x), p); }, a, b, quad));
    }
    return total.value();
}

} // namespace detail

/// ||u - u_I||_{0,p} over [0,1] by composite Gauss quadrature per cell.
inline double error_norm_0p(const SmoothFunction& f, const PiecewiseLinear& pl, int p,
                            const QuadratureSpec& quad) {
    NormOrder order(p);
    const double sum = detail::accumulate_cells_p(
        pl.mesh(), p, quad,
        [&](std::size_t cell, double x) { return f.value(x) - pl.eval_on_cell(cell, x); });
    return std::pow(sum, 1.0 / static_cast<double>(p));
}

/// ||u' - u_I'||_{0,p}; u_I' is the constant cell slope.
inline double error_norm_d1_0p(const SmoothFunction& f, const PiecewiseLinear& pl, int p,
                               const QuadratureSpec& quad) {
    NormOrder order(p);
    const double sum = detail::accumulate_cells_p(
        pl.mesh(), p, quad,
        [&](std::size_t cell, double x) { return f.d1(x) - pl.slope(cell); });
    return std::pow(sum, 1.0 / static_cast<double>(p));
}

/// ||u - u_I||_{1,p} = (||u - u_I||_{0,p}^p + ||u' - u_I'||_{0,p}^p)^{1/p}.
inline double error_norm_1p(const SmoothFunction& f, const PiecewiseLinear& pl, int p,
                            const QuadratureSpec& quad) {
    const double v = error_norm_0p(f, pl, p, quad);
    const double d = error_norm_d1_0p(f, pl, p, quad);
    return std::pow(detail::abs_pow(v, p) + detail::abs_pow(d, p),
                    1.0 / static_cast<double>(p));
}

/// Measures the true W^{1,p} interpolation error of f on the mesh and compares
/// it against the method's guaranteed bound at h = mesh_size. Demands exact
/// m2/M2/sup bounds; sampled estimates would make the containment claim
/// meaningless.
inline BoundReport verify_bound(const SmoothFunction& f, const Mesh1D& mesh, int p,
                                const BoundMethod& method, const QuadratureSpec& quad) {
    if (!f.bounds_exact)
        throw std::invalid_argument(
            "verify_bound: function carries estimated derivative bounds; "
            "verification requires exact m2/M2/sup_d2");
    BoundReport report =
        interpolation_bound(method, p, mesh.mesh_size(), f.sup_d2, f.M2 - f.m2);
    const PiecewiseLinear pl = interpolate(f, mesh);
    const double measured = error_norm_1p(f, pl, p, quad);
    report.measured_error = measured;
    report.ok = within_bound(measured, report.bound_W1p);
    return report;
}

} // namespace p1bounds

#endif

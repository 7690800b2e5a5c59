#ifndef P1BOUNDS_FEM_HPP
#define P1BOUNDS_FEM_HPP

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "p1bounds/bounds.hpp"
#include "p1bounds/function_model.hpp"
#include "p1bounds/mesh.hpp"
#include "p1bounds/norms_interp.hpp"

namespace p1bounds {

/// Model problem -u'' + u = f on ]0,1[ with u(0) = u(1) = 0. When the exact
/// solution is known (manufactured), error measurement and the Cea chain
/// become available.
struct BvpProblem {
    std::string name;
    std::function<double(double)> load;
    std::optional<SmoothFunction> exact;
};

/// Builds the problem whose exact solution is `exact` by setting
/// f = -exact'' + exact, so the strong-form identity holds by construction.
inline BvpProblem bvp_from_exact(SmoothFunction exact) {
    BvpProblem problem;
    problem.name = exact.name;
    problem.load = [u = exact](double x) { return -u.d2(x) + u.value(x); };
    problem.exact = std::move(exact);
    return problem;
}

inline const std::array<std::string_view, 2>& manufactured_problem_names() {
    static const std::array<std::string_view, 2> names = {"sin_pi", "poly"};
    return names;
}

/// Manufactured problems with homogeneous Dirichlet data:
///   sin_pi  u = sin(pi x),  f = (1 + pi^2) sin(pi x)
///   poly    u = x (1 - x),  f = 2 + x - x^2
inline BvpProblem manufactured_problem(std::string_view name) {
    if (name == "sin_pi")
        return bvp_from_exact(preset("sin_pi"));
    if (name == "poly") {
        return bvp_from_exact(make_function(
            "poly",
            [](double x) { return x * (1.0 - x); },
            [](double x) { return 1.0 - 2.0 * x; },
            [](double) { return -2.0; },
            -2.0, -2.0));
    }
    std::string msg = "unknown problem '";
    msg += name;
    msg += "'; valid problems:";
    for (std::string_view p : manufactured_problem_names()) {
        msg += ' ';
        msg += p;
    }
    throw std::invalid_argument(msg);
}

/// Symmetric tridiagonal system over the interior nodes: diag[j] couples
/// unknown j with itself, off[j] couples unknowns j and j+1.
struct TridiagonalSystem {
    std::vector<double> diag;
    std::vector<double> off;

    std::size_t size() const { return diag.size(); }
};

/// Galerkin matrix of int (u'v' + uv) in the P1 hat basis, from the exact
/// element integrals: stiffness 1/h_i, mass h_i/3 (diagonal) and h_i/6
/// (coupling). A single-cell mesh has no interior nodes and yields an empty
/// system.
inline TridiagonalSystem assemble(const Mesh1D& mesh) {
    const std::size_t unknowns = mesh.num_cells() - 1;
    TridiagonalSystem system;
    system.diag.resize(unknowns, 0.0);
    system.off.resize(unknowns > 0 ? unknowns - 1 : 0, 0.0);
    for (std::size_t j = 0; j < unknowns; ++j) {
        const double h_left = mesh.cell_width(j);
        const double h_right = mesh.cell_width(j + 1);
        system.diag[j] = 1.0 / h_left + 1.0 / h_right + (h_left + h_right) / 3.0;
        if (j + 1 < unknowns)
            system.off[j] = -1.0 / h_right + h_right / 6.0;
    }
    return system;
}

/// Thomas elimination; the assembled system is SPD, so no pivoting.
inline std::vector<double> solve_tridiagonal(const TridiagonalSystem& system,
                                             std::vector<double> rhs) {
    const std::size_t n = system.size();
    if (rhs.size() != n)
        throw std::invalid_argument("solve_tridiagonal: rhs size mismatch");
    if (n == 0)
        return {};
    std::vector<double> diag = system.diag;
    for (std::size_t j = 1; j < n; ++j) {
        if (!(diag[j - 1] > 0.0))
            throw std::domain_error("solve_tridiagonal: matrix is not positive definite");
        const double m = system.off[j - 1] / diag[j - 1];
        diag[j] -= m * system.off[j - 1];
        rhs[j] -= m * rhs[j - 1];
    }
    if (!(diag[n - 1] > 0.0))
        throw std::domain_error("solve_tridiagonal: matrix is not positive definite");
    std::vector<double> x(n);
    x[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t j = n - 1; j-- > 0;)
        x[j] = (rhs[j] - system.off[j] * x[j + 1]) / diag[j];
    return x;
}

/// P1 Galerkin approximation; coefficients are nodal values with the boundary
/// entries exactly zero.
struct FemSolution {
    Mesh1D mesh;
    std::vector<double> coefficients;

    PiecewiseLinear to_piecewise_linear() const {
        return PiecewiseLinear(mesh, coefficients);
    }
};

inline FemSolution solve(const BvpProblem& problem, const Mesh1D& mesh,
                         const QuadratureSpec& quad) {
    quad.validate();
    const std::size_t cells = mesh.num_cells();
    const std::size_t unknowns = cells - 1;

    auto checked_load = [&](double x) {
        const double v = problem.load(x);
        if (!std::isfinite(v))
            throw std::domain_error("solve: load function returned a non-finite value");
        return v;
    };

    // load vector: b_j = int f phi_j over the two cells around node j+1
    std::vector<double> rhs(unknowns, 0.0);
    for (std::size_t cell = 0; cell < cells; ++cell) {
        const double a = mesh.node(cell);
        const double b = mesh.node(cell + 1);
        const double h = mesh.cell_width(cell);
        if (cell > 0) { // hat of node `cell` falls on this cell
            rhs[cell - 1] += integrate_cell(
                [&](double x) { return checked_load(x) * (b - x) / h; }, a, b, quad);
        }
        if (cell + 1 < cells) { // hat of node `cell + 1` rises on this cell
            rhs[cell] += integrate_cell(
                [&](double x) { return checked_load(x) * (x - a) / h; }, a, b, quad);
        }
    }

    const std::vector<double> interior = solve_tridiagonal(assemble(mesh), std::move(rhs));

    FemSolution solution{mesh, std::vector<double>(mesh.num_nodes(), 0.0)};
    for (std::size_t j = 0; j < unknowns; ++j)
        solution.coefficients[j + 1] = interior[j];
    return solution;
}

/// ||u - u_h||_{1,p} against the manufactured exact solution.
inline double fem_error(const BvpProblem& problem, const FemSolution& solution, int p,
                        const QuadratureSpec& quad) {
    if (!problem.exact)
        throw std::invalid_argument("fem_error: problem carries no exact solution");
    return error_norm_1p(*problem.exact, solution.to_piecewise_linear(), p, quad);
}

/// Multiplicative constant of the Cea chain. 1 is exact for p = 2 because the
/// bilinear form is the H^1 inner product; for p != 2 the generalized-Cea
/// constant is user input.
struct CeaConstant {
    double value = 1.0;

    explicit CeaConstant(double v = 1.0) : value(v) {
        if (!(value >= 1.0))
            throw std::invalid_argument("CeaConstant: value must be >= 1");
    }
};

/// The full chain fem_error <= C * interp_error <= C * bound for one mesh.
struct CeaChainReport {
    std::string problem;
    int num_cells = 0;
    double h = 0.0;
    int p = 2;
    BoundMethod method;
    double cea = 1.0;
    double fem_err = 0.0;
    double interp_err = 0.0;
    double interp_bound = 0.0; // bound on ||u - u_I||_{1,p}
    double chain_bound = 0.0;  // cea * interp_bound
    bool galerkin_checked = false;
    bool ok = true;
};

inline CeaChainReport cea_chain(const BvpProblem& problem, const Mesh1D& mesh, int p,
                                const CeaConstant& cea, const BoundMethod& method,
                                const QuadratureSpec& quad) {
    if (!problem.exact)
        throw std::invalid_argument("cea_chain: problem carries no exact solution");
    const SmoothFunction& u = *problem.exact;
    if (!u.bounds_exact)
        throw std::invalid_argument("cea_chain: exact solution carries estimated bounds");

    const FemSolution uh = solve(problem, mesh, quad);
    const PiecewiseLinear ui = interpolate(u, mesh);

    CeaChainReport report;
    report.problem = problem.name;
    report.num_cells = static_cast<int>(mesh.num_cells());
    report.h = mesh.mesh_size();
    report.p = p;
    report.method = method;
    report.cea = cea.value;
    report.fem_err = fem_error(problem, uh, p, quad);
    report.interp_err = error_norm_1p(u, ui, p, quad);
    report.interp_bound =
        interpolation_bound(method, p, mesh.mesh_size(), u.sup_d2, u.M2 - u.m2).bound_W1p;
    report.chain_bound = cea.value * report.interp_bound;

    report.ok = within_bound(report.interp_err, report.interp_bound);
    // Galerkin optimality: for p = 2 with C = 1 the discrete solution is the
    // H^1 projection, so the FEM error cannot exceed the interpolation error.
    if (p == 2 && cea.value == 1.0) {
        report.galerkin_checked = true;
        report.ok = report.ok && report.fem_err <= report.interp_err + 1e-9;
    }
    return report;
}

/// Bound-driven mesh-cost experiment between the Taylor and the asymptotic
/// Taylor-like estimates.
struct SavingsReport {
    int p = 2;
    int dim = 3;
    double target = 0.0;
    double cea = 1.0;
    bool saturated = false;     // target unreachable within the cell budget
    int taylor_cells = 0;       // coarsest admissible mesh under the Taylor bound
    int taylor_like_cells = 0;  // same under the asymptotic Taylor-like bound
    double taylor_h = 0.0;
    double taylor_like_h = 0.0;
    double h_ratio = 0.0;       // taylor_like_h / taylor_h
    double node_factor = 0.0;   // h_ratio^dim
    MeshSavings theory{0.0, 0.0};
    double taylor_bound = 0.0;
    double taylor_like_bound = 0.0;
    double taylor_measured = 0.0;      // true interpolation error on each mesh,
    double taylor_like_measured = 0.0; // showing how conservative the bounds are
    bool ok = true;
};

namespace detail {

inline int coarsest_admissible_cells(const BoundMethod& method, int p, double sup_d2,
                                     double osc_d2, double cea, double target,
                                     int max_cells) {
    int lo = 1, hi = max_cells; // bound is decreasing in the cell count
    auto bound_at = [&](int cells) {
        const double h = 1.0 / static_cast<double>(cells);
        return cea * interpolation_bound(method, p, h, sup_d2, osc_d2).bound_W1p;
    };
    if (bound_at(lo) <= target)
        return lo;
    if (bound_at(hi) > target)
        return 0; // unreachable
    while (hi - lo > 1) {
        const int mid = lo + (hi - lo) / 2;
        (bound_at(mid) <= target ? hi : lo) = mid;
    }
    return hi;
}

} // namespace detail

/// Finds, by bisection over uniform cell counts, the coarsest meshes whose
/// Taylor-based and Taylor-like-based interpolation bounds (times the Cea
/// constant) fall below `target`, then compares the resulting mesh sizes with
/// the theoretical prediction. An unreachable target yields a saturation
/// report rather than an exception. The cell budget is 2^14.
inline SavingsReport savings_experiment(const BvpProblem& problem, int p, double target,
                                        int dim, const QuadratureSpec& quad,
                                        const CeaConstant& cea = CeaConstant(1.0)) {
    NormOrder order(p);
    if (!(target > 0.0))
        throw std::invalid_argument("savings_experiment: target must be positive");
    if (dim < 1 || dim > 3)
        throw std::invalid_argument("savings_experiment: dim must be 1, 2 or 3");
    if (!problem.exact)
        throw std::invalid_argument("savings_experiment: problem carries no exact solution");
    const SmoothFunction& u = *problem.exact;

    constexpr int max_cells = 1 << 14;
    const BoundMethod taylor = BoundMethod::taylor();
    const BoundMethod taylor_like = BoundMethod::taylor_like_asymptotic();

    SavingsReport report;
    report.p = p;
    report.dim = dim;
    report.target = target;
    report.cea = cea.value;
    report.theory = mesh_savings(p, taylor_like, taylor, dim);

    const int n_taylor = detail::coarsest_admissible_cells(taylor, p, u.sup_d2,
                                                           u.M2 - u.m2, cea.value,
                                                           target, max_cells);
    const int n_taylor_like = detail::coarsest_admissible_cells(taylor_like, p, u.sup_d2,
                                                                u.M2 - u.m2, cea.value,
                                                                target, max_cells);
    if (n_taylor == 0 || n_taylor_like == 0) {
        report.saturated = true;
        report.taylor_cells = n_taylor == 0 ? max_cells : n_taylor;
        report.taylor_like_cells = n_taylor_like == 0 ? max_cells : n_taylor_like;
        report.ok = false;
        return report;
    }

    report.taylor_cells = n_taylor;
    report.taylor_like_cells = n_taylor_like;
    report.taylor_h = 1.0 / static_cast<double>(n_taylor);
    report.taylor_like_h = 1.0 / static_cast<double>(n_taylor_like);
    report.h_ratio = report.taylor_like_h / report.taylor_h;
    report.node_factor = std::pow(report.h_ratio, dim);

    const Mesh1D mesh_taylor = uniform_mesh(static_cast<std::size_t>(n_taylor));
    const Mesh1D mesh_taylor_like = uniform_mesh(static_cast<std::size_t>(n_taylor_like));
    report.taylor_bound =
        cea.value *
        interpolation_bound(taylor, p, mesh_taylor.mesh_size(), u.sup_d2).bound_W1p;
    report.taylor_like_bound =
        cea.value *
        interpolation_bound(taylor_like, p, mesh_taylor_like.mesh_size(), u.sup_d2).bound_W1p;
    report.taylor_measured = error_norm_1p(u, interpolate(u, mesh_taylor), p, quad);
    report.taylor_like_measured =
        error_norm_1p(u, interpolate(u, mesh_taylor_like), p, quad);

    report.ok = within_bound(report.taylor_measured, report.taylor_bound) &&
                within_bound(report.taylor_like_measured, report.taylor_like_bound);
    return report;
}

} // namespace p1bounds

#endif
